#include "qradar/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "qradar/error.hpp"

namespace qradar {

void LinearLangevinModel::validate() const {
    if (drift.rows() != drift.cols() || drift.rows() == 0 || drift.rows() % 2 != 0)
        throw ValidationError("LinearLangevinModel: drift must be 2N x 2N");
    if (diffusion.rows() != drift.rows() || diffusion.cols() != drift.cols())
        throw ValidationError("LinearLangevinModel: diffusion dimension differs from drift");
    if (!drift.allFinite() || !diffusion.allFinite())
        throw ValidationError("LinearLangevinModel: non-finite entries");
    const double scale = std::max(1.0, diffusion.cwiseAbs().maxCoeff());
    if ((diffusion - diffusion.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ValidationError("LinearLangevinModel: diffusion not symmetric");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (diffusion + diffusion.transpose()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        throw ValidationError("LinearLangevinModel: diffusion not positive semidefinite");
    if (!mode_labels.empty() && static_cast<int>(mode_labels.size()) != n_modes())
        throw ValidationError("LinearLangevinModel: one label per mode expected");
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw ValidationError("thermal_occupation: omega must be > 0");
    if (!(temperature >= 0.0)) throw ValidationError("thermal_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = kHbar * omega / (kBoltzmann * temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

MatrixXd diffusion_from_baths(const std::vector<Bath>& baths) {
    const int n = static_cast<int>(baths.size());
    MatrixXd d = MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const Bath& b = baths[k];
        if (!(b.rate >= 0.0)) throw ValidationError("diffusion_from_baths: damping rate must be >= 0");
        const double inflow = b.rate * (2.0 * thermal_occupation(b.omega, b.temperature) + 1.0);
        if (b.kind == BathKind::cavity) d(2 * k, 2 * k) = inflow;
        d(2 * k + 1, 2 * k + 1) = inflow;
    }
    return d;
}

StabilityReport is_stable(const LinearLangevinModel& model) {
    Eigen::EigenSolver<MatrixXd> es(model.drift, false);
    StabilityReport r;
    r.max_real_part = es.eigenvalues().real().maxCoeff();
    r.stable = r.max_real_part < -1e-12;
    return r;
}

MatrixXd solve_lyapunov(const MatrixXd& a, const MatrixXd& q) {
    using Eigen::MatrixXcd;
    const int n = static_cast<int>(a.rows());
    Eigen::ComplexSchur<MatrixXcd> schur(a.cast<std::complex<double>>());
    const MatrixXcd& u = schur.matrixU();
    const MatrixXcd& t = schur.matrixT();
    // T Y + Y T^H = F with F = -U^H Q U, back-substituted from the bottom-right corner.
    const MatrixXcd f = -(u.adjoint() * q.cast<std::complex<double>>() * u);
    MatrixXcd y = MatrixXcd::Zero(n, n);
    for (int i = n - 1; i >= 0; --i) {
        for (int j = n - 1; j >= 0; --j) {
            std::complex<double> rhs = f(i, j);
            for (int k = i + 1; k < n; ++k) rhs -= t(i, k) * y(k, j);
            for (int k = j + 1; k < n; ++k) rhs -= y(i, k) * std::conj(t(j, k));
            const std::complex<double> den = t(i, i) + std::conj(t(j, j));
            if (std::abs(den) < 1e-300) throw NumericalError("solve_lyapunov: singular Sylvester operator");
            y(i, j) = rhs / den;
        }
    }
    return (u * y * u.adjoint()).real();
}

namespace {

// Groups of modes linked by non-zero drift or diffusion blocks. Solving each group on its
// own keeps the cross blocks of uncoupled subsystems exactly zero.
std::vector<std::vector<int>> coupled_groups(const MatrixXd& a, const MatrixXd& d) {
    const int m = static_cast<int>(a.rows() / 2);
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && (!a.block(2 * i, 2 * j, 2, 2).isZero(0.0) || !d.block(2 * i, 2 * j, 2, 2).isZero(0.0)))
                parent[find(i)] = find(j);
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(m, -1);
    for (int i = 0; i < m; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[slot[r]].push_back(i);
    }
    return groups;
}

}  // namespace

MatrixXd steady_state_cov(const LinearLangevinModel& model) {
    model.validate();
    const StabilityReport st = is_stable(model);
    if (!st.stable) {
        std::ostringstream os;
        os << "steady_state_cov: drift is not stable (max Re eigenvalue " << st.max_real_part << ")";
        throw InstabilityError(os.str(), st.max_real_part);
    }
    const int n = static_cast<int>(model.drift.rows());
    MatrixXd v = MatrixXd::Zero(n, n);
    for (const auto& g : coupled_groups(model.drift, model.diffusion)) {
        std::vector<int> idx;
        for (int mode : g) {
            idx.push_back(2 * mode);
            idx.push_back(2 * mode + 1);
        }
        const MatrixXd x = solve_lyapunov(model.drift(idx, idx), model.diffusion(idx, idx));
        v(idx, idx) = 0.5 * (x + x.transpose());
    }
    return v;
}

std::vector<MatrixXd> propagate_cov(const LinearLangevinModel& model, const MatrixXd& v0,
                                    const std::vector<double>& times, double rtol) {
    namespace odeint = boost::numeric::odeint;
    model.validate();
    const int n = static_cast<int>(model.drift.rows());
    if (v0.rows() != n || v0.cols() != n) throw ValidationError("propagate_cov: V0 dimension differs from drift");
    using State = std::vector<double>;

    const MatrixXd& a = model.drift;
    const MatrixXd& d = model.diffusion;
    auto rhs = [&](const State& x, State& dxdt, double) {
        Eigen::Map<const MatrixXd> v(x.data(), n, n);
        Eigen::Map<MatrixXd> dv(dxdt.data(), n, n);
        const MatrixXd av = a * v;
        dv = av + av.transpose() + d;
    };

    const double scale = std::max({v0.cwiseAbs().maxCoeff(), d.cwiseAbs().maxCoeff() / std::max(a.norm(), 1e-300),
                                   1e-300});
    auto stepper = odeint::make_controlled(rtol * scale * 1e-3, rtol, odeint::runge_kutta_dopri5<State>());

    State x(v0.data(), v0.data() + n * n);
    double t = 0.0;
    double dt = 1e-3 / std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<MatrixXd> out;
    out.reserve(times.size());
    double prev = 0.0;
    for (double target : times) {
        if (!(target >= prev)) throw ValidationError("propagate_cov: checkpoint times must be ascending and >= 0");
        prev = target;
        while (t < target) {
            dt = std::min(dt, target - t);
            const double dt_min = 1e-14 * std::max(std::abs(t), target);
            if (stepper.try_step(rhs, x, t, dt) == odeint::success) {
                if (target - t <= 1e-13 * target) t = target;
                continue;
            }
            if (dt < dt_min) {
                std::ostringstream os;
                os << "propagate_cov: step size underflow at t = " << t
                   << "; the system is stiff, use steady_state_cov for long times";
                throw NumericalError(os.str());
            }
        }
        MatrixXd v = Eigen::Map<const MatrixXd>(x.data(), n, n);
        out.push_back(target == 0.0 ? v0 : MatrixXd(0.5 * (v + v.transpose())));
    }
    return out;
}

MatrixXd propagate_cov(const LinearLangevinModel& model, const MatrixXd& v0, double t, double rtol) {
    if (!(t >= 0.0)) throw ValidationError("propagate_cov: t must be >= 0");
    return propagate_cov(model, v0, std::vector<double>{t}, rtol).front();
}

}  // namespace qradar
