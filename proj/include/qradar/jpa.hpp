#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qradar/criteria.hpp"
#include "qradar/gaussian_core.hpp"

namespace qradar {

using cplx = std::complex<double>;

struct JpaCircuit {
    double E_c = 0.0;     // charging energy
    double omega0 = 0.0;  // bare resonator frequency
    double Lambda = 0.0;  // Kerr coefficient
};

// SI inputs: E_J in joules, C in farads. E_c in joules, omega0 and Lambda in rad/s.
JpaCircuit derived_params(double E_J, double C);
// Energies already expressed as angular frequencies (hbar = 1).
JpaCircuit derived_params_natural(double E_J, double E_c);

struct JpaParams {
    double omega0 = 0.0;   // rad/s
    double Lambda = 0.0;   // rad/s
    double kappa = 1.0;    // total damping, rad/s
    double omega_p = 0.0;  // pump, rad/s
    cplx epsilon = 0.0;    // pump amplitude, rad/s
    // false: alpha from the linear cavity response, Kerr shift ignored in the solve.
    bool self_consistent = true;
};

struct ClassicalField {
    cplx alpha;
    double n = 0.0;        // |alpha|^2
    int branch_count = 0;  // non-negative real roots of the steady-state cubic
    bool bistable = false;
    double Delta0 = 0.0;   // omega0 + 4 |alpha|^2 Lambda - omega_p
    cplx lambda1;          // 2 alpha^2 Lambda
};

ClassicalField classical_field(const JpaParams& params);

// S = kappa M^{-1} - I, omega measured from the pump frame. Throws NumericalError at/above threshold.
Eigen::Matrix2cd scattering_matrix(double kappa, double Delta0, cplx lambda1, double omega);

struct OutputMoments {
    double n1 = 0.0, n2 = 0.0, d12 = 0.0;  // intracavity
    double kappa1 = 0.0, kappa2 = 0.0;
    double n_in1 = 0.0, n_in2 = 0.0;       // input thermal occupations
};

BipartiteBlocks output_two_mode_cm(const OutputMoments& m);

// Single-mode output of a degenerate amplifier at omega = 0: a_out = mu a_in + nu a_in^dagger.
GaussianState single_mode_output(double kappa, double Delta0, cplx lambda1, double n_in = 0.0);

struct WignerSample {
    double g = 0.0;
    GaussianState state = GaussianState::vacuum(1);
    WignerField field;
    double minor_variance = 0.5;
    double major_variance = 0.5;
    double axis_angle = 0.0;  // angle of the squeezed axis, rad
};

struct WignerSweepOptions {
    double kappa = 1.0;
    double pump_phase = 0.0;  // arg lambda1
    double n_sigma = 6.0;
    int points_per_axis = 241;
};

// g = |lambda1| / kappa at Delta0 = 0; g must lie in [0, 0.5).
std::vector<WignerSample> wigner_sweep(const std::vector<double>& g_values, const WignerSweepOptions& opts = {});

}  // namespace qradar
