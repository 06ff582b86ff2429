#pragma once

#include <Eigen/Dense>

#include "qradar/gaussian_core.hpp"

namespace qradar {

using Eigen::Matrix2d;

struct BipartiteBlocks {
    Matrix2d A = Matrix2d::Identity() * 0.5;
    Matrix2d B = Matrix2d::Identity() * 0.5;
    Matrix2d C = Matrix2d::Zero();

    static BipartiteBlocks from_cov(const MatrixXd& cov4);
    // Blocks for the pair (mode_a, mode_b) of an N-mode state.
    static BipartiteBlocks from_state(const GaussianState& state, int mode_a = 0, int mode_b = 1);

    MatrixXd cov() const;
    GaussianState state() const { return GaussianState(cov()); }
};

// eta_param = a - b d^2 / (b^2 - 1); renamed so it is not confused with two_eta.
struct StandardFormParams {
    double a = 0.5;
    double b = 0.5;
    double d = 0.0;
    double tau = 0.0;
    double eta_param = 0.5;
};

struct CriteriaReport {
    double lambda_sph = 0.0;
    double two_eta = 1.0;
    double discord = 0.0;
    double classical_corr = 0.0;
    double mutual_info = 0.0;
    bool entangled_by_sph = false;
    bool entangled_by_ppt = false;
};

// Throws ValidationError unless the assembled 4x4 matrix is a physical covariance.
void require_physical(const BipartiteBlocks& blocks);

double lambda_sph(const BipartiteBlocks& blocks);
double two_eta(const BipartiteBlocks& blocks);

// Local symplectic reduction to a I, b I, d diag(1,-1).
StandardFormParams standard_form(const BipartiteBlocks& blocks);

// Discord with a heterodyne measurement on the second mode. Fills discord,
// classical_corr and mutual_info; the other fields keep their defaults.
CriteriaReport gaussian_discord(const BipartiteBlocks& blocks);

// Verdicts treat 2 eta within kVerdictTol of 1 as separable, so that product
// states whose vacuum blocks round to 0.5 - 1 ulp are not flagged. The SPH band
// is the same band mapped through lambda = (nu-^2 - 1/4)(nu+^2 - 1/4), which
// keeps the two verdicts in agreement.
inline constexpr double kVerdictTol = 1e-10;

// Everything at once.
CriteriaReport evaluate(const BipartiteBlocks& blocks);

}  // namespace qradar
