#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qradar/criteria.hpp"
#include "qradar/langevin.hpp"

namespace qradar {

// consistent: drift derived from the interaction Hamiltonian, with the photodetector
// damped on both quadratures. as_printed: p-only photodetector damping and the
// uncorrected drift entries, kept for audits.
enum class OeDriftVariant { consistent, as_printed };

// Mode order: photodetector (q_x, p_x), optical cavity (X_c, Y_c), microwave cavity (X_w, Y_w).
inline constexpr int kOePd = 0;
inline constexpr int kOeOptical = 1;
inline constexpr int kOeMicrowave = 2;

struct OeParams {
    double delta_c = 0.0;     // rad/s
    double delta_w = 0.0;     // rad/s
    double delta_eg = 0.0;    // rad/s, omega_eg - omega_c
    double kappa_c = 0.0;     // rad/s
    double kappa_w = 0.0;     // rad/s
    double gamma_p = 0.0;     // rad/s
    double g_op = 0.0;        // rad/s
    double g_wp_per_mu_c = 0.0;  // rad/s; g_wp = mu_c * g_wp_per_mu_c
    double mu_c = 2e-4;
    double E_c = 0.0;         // rad/s
    double E_w = 0.0;         // rad/s
    double T_c = 0.0;         // K
    double omega_c = 2.0 * M_PI * 299792458.0 / 808e-9;  // rad/s
    double omega_w = 2.0 * M_PI * 10e9;                   // rad/s
    OeDriftVariant variant = OeDriftVariant::consistent;

    double g_wp() const { return mu_c * g_wp_per_mu_c; }
    double omega_eg() const { return omega_c + delta_eg; }
    void validate() const;
    static OeParams reference();
};

struct PdMaterialSpec {
    double dipole_moment = 0.0;     // C m
    double density_of_states = 0.0; // 1/(J m^3), at hbar omega_eg
    double lorentzian_width = 0.0;  // rad/s, FWHM
    double mode_volume = 0.0;       // m^3

    void validate() const;
};

// g_op = (pi omega_c / eps0 V_m) mu^2 g_J L(omega_eg), per unit volume, with L a
// normalized Lorentzian centred on omega_c.
double coupling_gop(const PdMaterialSpec& spec, double omega_c, double omega_eg);

struct OeOperatingPoint {
    std::complex<double> A_s;
    std::complex<double> C_s;  // real and positive by drive-phase convention
    double P_s = 0.0;
    double X_s = 0.0;          // q_s
    double residual = 0.0;
    int iterations = 0;
};

OeOperatingPoint operating_point(const OeParams& p);
MatrixXd drift_matrix(const OeParams& p, const OeOperatingPoint& op);
MatrixXd oe_diffusion(const OeParams& p);
LinearLangevinModel oe_model(const OeParams& p);

struct OeReport {
    bool stable = false;
    double max_real_part = 0.0;
    MatrixXd cov;
    CriteriaReport oc_mc;
};

OeReport entanglement_report(const OeParams& p);

struct DetuningRow {
    double delta_eg = 0.0;
    double two_eta = 0.0;
    bool stable = false;  // false: unstable drift or no convergent operating point; two_eta is NaN
};

struct DetuningCurve {
    std::vector<DetuningRow> rows;
    int argmin = -1;  // index of the smallest stable two_eta, -1 if none
};

DetuningCurve entanglement_vs_detuning(const OeParams& p, const std::vector<double>& delta_eg_grid, int workers = 1);

struct EndToEndSpec {
    double kappa_atm = 2e-6;   // 1/m
    double range_m = 20.0;     // transmitter-target distance
    double kappa_t = 18.2;     // 1/m
    double dz_t = 0.01;        // m
    // Negative: tie the bath occupation to N(omega_w, T_c).
    double n_env = -1.0;
    double n_target = -1.0;
};

struct EndToEndReport {
    CriteriaReport direct;       // OC-MC
    CriteriaReport backscatter;  // OC-returned mode
    double round_trip_transmissivity = 1.0;
};

EndToEndReport end_to_end_report(const OeParams& p, const EndToEndSpec& spec);

struct TemperatureRow {
    double T_c = 0.0;
    double two_eta_direct = 0.0;
    double two_eta_backscatter = 0.0;
    bool stable = false;
};

std::vector<TemperatureRow> temperature_sweep(const OeParams& p, const EndToEndSpec& spec,
                                              const std::vector<double>& grid, int workers = 1);

// T_c where two_eta reaches 1, by bisection to `resolution` kelvin.
double threshold_temperature(const OeParams& p, double t_max = 10.0, double resolution = 1e-3);
double threshold_temperature_end_to_end(const OeParams& p, const EndToEndSpec& spec, double t_max = 10.0,
                                        double resolution = 1e-3);

}  // namespace qradar
