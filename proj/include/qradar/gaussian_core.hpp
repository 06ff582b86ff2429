#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qradar {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Quadrature ordering (x1, p1, x2, p2, ...); vacuum variance 1/2.
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kPhysicalityTol = 1e-9;

MatrixXd symplectic_form(int n_modes);

class GaussianState {
public:
    // Throws ValidationError if cov is not square 2N x 2N, not finite or not symmetric.
    // Physicality is not enforced here: partially transposed entangled states are
    // legitimate intermediate objects.
    GaussianState(VectorXd mean, MatrixXd cov);
    explicit GaussianState(MatrixXd cov);

    static GaussianState vacuum(int n_modes);
    static GaussianState thermal(int n_modes, double nbar);

    int n_modes() const { return static_cast<int>(mean_.size() / 2); }
    const VectorXd& mean() const { return mean_; }
    const MatrixXd& cov() const { return cov_; }

    bool is_physical(double tol = kPhysicalityTol) const;
    // Throws ValidationError naming the smallest symplectic eigenvalue.
    void require_physical(const char* context) const;

    GaussianState reduced(const std::vector<int>& modes) const;

private:
    VectorXd mean_;
    MatrixXd cov_;
};

std::vector<double> symplectic_eigenvalues(const GaussianState& state);
std::vector<double> symplectic_eigenvalues(const MatrixXd& cov);

GaussianState partial_transpose(const GaussianState& state, int mode_index);

// h(x) = (x+1/2)log2(x+1/2) - (x-1/2)log2(x-1/2), argument clamped at 1/2.
double entropy_h(double nu);
double von_neumann_entropy(const GaussianState& state);

// Lattice q = center + u*axis_u + v*axis_v with u, v on uniform grids.
// angle = 0 gives the usual rectangular (q, p) grid.
struct PhaseSpaceGrid {
    double center_q = 0.0;
    double center_p = 0.0;
    double angle = 0.0;
    double u_min = -6.0, u_max = 6.0;
    double v_min = -6.0, v_max = 6.0;
    int n_u = 241, n_v = 241;

    static PhaseSpaceGrid rectangular(double q_min, double q_max, double p_min, double p_max,
                                      double step);
    // Axes aligned with the covariance principal directions, +-n_sigma each way.
    static PhaseSpaceGrid adapted(const GaussianState& state, double n_sigma, int points_per_axis);

    double du() const { return (u_max - u_min) / (n_u - 1); }
    double dv() const { return (v_max - v_min) / (n_v - 1); }
    double cell_area() const { return du() * dv(); }
    void point(int iu, int iv, double& q, double& p) const;
};

struct WignerField {
    PhaseSpaceGrid grid;
    std::vector<double> q, p, w;  // row-major over (iu, iv)
    double riemann_sum() const;
};

double wigner_at(const GaussianState& state, double q, double p);
WignerField wigner(const GaussianState& state, const PhaseSpaceGrid& grid);

struct SampleOptions {
    // Adds (1/2)I to every draw, as a heterodyne record would.
    bool heterodyne_noise = false;
};

// n_samples x 2N matrix of i.i.d. draws.
MatrixXd sample(const GaussianState& state, int n_samples, std::uint64_t seed,
                const SampleOptions& opts = {});

// Lower Cholesky factor with diagonal jitter escalated up to 1e-12 for
// numerically semidefinite inputs.
MatrixXd cholesky_with_jitter(const MatrixXd& cov);

struct GaussianChannel {
    MatrixXd X;
    MatrixXd Y;
    std::string description;

    int n_modes() const { return static_cast<int>(X.rows() / 2); }
    static GaussianChannel identity(int n_modes);
};

// Complete positivity: Y + (i/2)(Omega - X Omega X^T) >= -tol.
bool is_completely_positive(const GaussianChannel& ch, double tol = kPhysicalityTol);
double complete_positivity_margin(const GaussianChannel& ch);

// Second applied after first: (X2 X1, X2 Y1 X2^T + Y2).
GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second);

// Channel spanning all modes of the state.
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch);
// Channel acting on the listed modes only; identity elsewhere.
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch,
                            const std::vector<int>& modes);

// Random symplectic built from passive rotations and single-mode squeezers
// (Bloch-Messiah form). Used by tests and the acceptance harness.
template <class Rng>
MatrixXd random_symplectic(int n_modes, Rng& rng, double max_squeeze);

}  // namespace qradar

#include "qradar/detail/random_symplectic.ipp"
