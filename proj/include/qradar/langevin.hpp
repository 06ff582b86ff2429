#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qradar {

using Eigen::MatrixXd;

inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K

// du/dt = drift u + noise, with <noise noise^T> = diffusion delta(t - t').
struct LinearLangevinModel {
    MatrixXd drift;
    MatrixXd diffusion;
    std::vector<std::string> mode_labels;

    int n_modes() const { return static_cast<int>(drift.rows() / 2); }
    void validate() const;
};

enum class BathKind { cavity, mechanical };

struct Bath {
    double omega = 1.0;        // rad/s
    double rate = 0.0;         // kappa or gamma, rad/s
    double temperature = 0.0;  // K
    BathKind kind = BathKind::cavity;
};

double thermal_occupation(double omega, double temperature);

// Cavity: rate (2N+1) I2. Mechanical (Brownian): rate (2N+1) on momentum only.
MatrixXd diffusion_from_baths(const std::vector<Bath>& baths);

struct StabilityReport {
    bool stable = false;
    double max_real_part = 0.0;
};

StabilityReport is_stable(const LinearLangevinModel& model);

// Solves drift V + V drift^T + diffusion = 0. Throws InstabilityError.
MatrixXd steady_state_cov(const LinearLangevinModel& model);

// Solves a X + X a^T = -q for any a with no eigenvalue pair summing to zero.
MatrixXd solve_lyapunov(const MatrixXd& a, const MatrixXd& q);

// dV/dt = A V + V A^T + D from V0, adaptive Dormand-Prince.
MatrixXd propagate_cov(const LinearLangevinModel& model, const MatrixXd& v0, double t, double rtol = 1e-9);
// Same, returning V at each (ascending) checkpoint.
std::vector<MatrixXd> propagate_cov(const LinearLangevinModel& model, const MatrixXd& v0,
                                    const std::vector<double>& times, double rtol = 1e-9);

}  // namespace qradar
