#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qradar/criteria.hpp"
#include "qradar/langevin.hpp"

namespace qradar {

// corrected: mechanical momentum couples to the microwave quadratures X_w, Y_w.
// as_printed: G_m placed in the Y_c column of the drift matrix
// (kept for audits; its steady states violate the uncertainty relation).
enum class EomCouplingLayout { corrected, as_printed };

// Mode order: mechanical resonator (q_x, p_x), optical cavity (X_c, Y_c), microwave cavity (X_w, Y_w).
inline constexpr int kEomMech = 0;
inline constexpr int kEomOptical = 1;
inline constexpr int kEomMicrowave = 2;

struct EomParams {
    double omega_m = 0.0;     // rad/s
    double omega_w = 0.0;     // rad/s
    double kappa_c = 0.0;     // rad/s
    double gamma_m = 0.0;     // rad/s
    double kappa_w = 0.0;     // rad/s
    double delta_c = 0.0;     // rad/s
    double delta_w = 0.0;     // rad/s
    double G1 = 0.0;          // rad/s, at lambda_ref
    double G2 = 0.0;          // dimensionless
    double E_c = 0.0;         // rad/s, at lambda_ref
    double E_w = 0.0;         // rad/s
    double T = 0.0;           // K
    double lambda_L = 1064e-9;    // m
    double lambda_ref = 1064e-9;  // m
    EomCouplingLayout layout = EomCouplingLayout::corrected;

    // Drive-wavelength scaling: G1, E_c ~ sqrt(lambda_L / lambda_ref).
    double wavelength_scale() const;
    double G1_eff() const { return G1 * wavelength_scale(); }
    double E_c_eff() const { return E_c * wavelength_scale(); }
    double omega_c() const;

    void validate() const;
    // Reconstructed reference set: entangled at millikelvin, separable well below 1 K.
    static EomParams reference();
};

struct EomOperatingPoint {
    std::complex<double> A_s;
    std::complex<double> C_s;  // real and positive by drive-phase convention
    double P_s = 0.0;
    double X_s = 0.0;
    double residual = 0.0;  // max relative residual of the fixed-point equations
    int iterations = 0;
};

EomOperatingPoint operating_point(const EomParams& p);
MatrixXd drift_matrix(const EomParams& p, const EomOperatingPoint& op);
MatrixXd eom_diffusion(const EomParams& p);
LinearLangevinModel eom_model(const EomParams& p);

struct EomReport {
    bool stable = false;
    double max_real_part = 0.0;
    MatrixXd cov;
    CriteriaReport oc_mc, oc_mr, mr_mc;
};

// Throws InstabilityError when the linearized dynamics are unstable.
EomReport entanglement_report(const EomParams& p);

enum class EomAxis { temperature, wavelength, gamma_m };
EomAxis parse_eom_axis(const std::string& name);
EomParams with_axis(EomParams p, EomAxis axis, double value);

struct EomSweepRow {
    double x = 0.0;
    double lambda_oc_mc = 0.0;
    double lambda_oc_mr = 0.0;
    double lambda_mr_mc = 0.0;
    bool stable = false;
};

// Unstable points and points without a convergent operating point are flagged, not
// fatal. Rows follow grid order for any worker count.
std::vector<EomSweepRow> sweep(const EomParams& p, EomAxis axis, const std::vector<double>& grid, int workers = 1);

// Temperature where lambda_SPH(OC-MC) crosses 0, by bisection to `resolution` kelvin.
// Throws NumericalError if separable at T = 0 or still entangled at t_max.
double threshold_temperature(const EomParams& p, double t_max = 5.0, double resolution = 1e-3);

}  // namespace qradar
