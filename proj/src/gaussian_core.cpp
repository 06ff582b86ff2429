#include "qradar/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qradar/error.hpp"

namespace qradar {

namespace {

void check_square_even(const MatrixXd& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty 2N x 2N matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
}

}  // namespace

MatrixXd symplectic_form(int n_modes) {
    if (n_modes <= 0) throw ValidationError("symplectic_form: n_modes must be positive");
    MatrixXd om = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        om(2 * k, 2 * k + 1) = 1.0;
        om(2 * k + 1, 2 * k) = -1.0;
    }
    return om;
}

GaussianState::GaussianState(VectorXd mean, MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    check_square_even(cov_, "GaussianState covariance");
    if (mean_.size() != cov_.rows())
        throw ValidationError("GaussianState: mean length does not match covariance dimension");
    if (!cov_.allFinite() || !mean_.allFinite())
        throw ValidationError("GaussianState: covariance or mean is not finite");
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        std::ostringstream os;
        os << "GaussianState: covariance not symmetric (max |V - V^T| = " << asym << ")";
        throw ValidationError(os.str());
    }
    cov_ = 0.5 * (cov_ + cov_.transpose());
}

GaussianState::GaussianState(MatrixXd cov) : GaussianState(VectorXd::Zero(cov.rows()), cov) {}

GaussianState GaussianState::vacuum(int n_modes) {
    return thermal(n_modes, 0.0);
}

GaussianState GaussianState::thermal(int n_modes, double nbar) {
    if (n_modes <= 0) throw ValidationError("thermal: n_modes must be positive");
    if (!(nbar >= 0.0)) throw ValidationError("thermal: occupation must be >= 0");
    return GaussianState(MatrixXd::Identity(2 * n_modes, 2 * n_modes) * (nbar + 0.5));
}

bool GaussianState::is_physical(double tol) const {
    const auto nu = symplectic_eigenvalues(cov_);
    return nu.front() >= 0.5 - tol;
}

void GaussianState::require_physical(const char* context) const {
    const auto nu = symplectic_eigenvalues(cov_);
    if (nu.front() < 0.5 - kPhysicalityTol) {
        std::ostringstream os;
        os.precision(12);
        os << context << ": state violates the uncertainty relation (smallest symplectic eigenvalue "
           << nu.front() << " < 1/2)";
        throw ValidationError(os.str());
    }
}

GaussianState GaussianState::reduced(const std::vector<int>& modes) const {
    const int n = static_cast<int>(modes.size());
    if (n == 0) throw ValidationError("reduced: empty mode list");
    VectorXd m(2 * n);
    MatrixXd v(2 * n, 2 * n);
    for (int a = 0; a < n; ++a) {
        if (modes[a] < 0 || modes[a] >= n_modes()) throw ValidationError("reduced: mode index out of range");
        m.segment<2>(2 * a) = mean_.segment<2>(2 * modes[a]);
        for (int b = 0; b < n; ++b) v.block<2, 2>(2 * a, 2 * b) = cov_.block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
    return GaussianState(m, v);
}

std::vector<double> symplectic_eigenvalues(const MatrixXd& cov) {
    check_square_even(cov, "symplectic_eigenvalues");
    if (!cov.allFinite()) throw ValidationError("symplectic_eigenvalues: covariance is not finite");
    const int n = static_cast<int>(cov.rows() / 2);
    // Eigenvalues of Omega V come in +-i nu pairs.
    Eigen::EigenSolver<MatrixXd> es(symplectic_form(n) * cov, false);
    std::vector<double> mags(2 * n);
    for (int i = 0; i < 2 * n; ++i) mags[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mags.begin(), mags.end());
    std::vector<double> nu(n);
    for (int k = 0; k < n; ++k) nu[k] = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
    return nu;
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
    return symplectic_eigenvalues(state.cov());
}

GaussianState partial_transpose(const GaussianState& state, int mode_index) {
    if (mode_index < 0 || mode_index >= state.n_modes())
        throw ValidationError("partial_transpose: mode index out of range");
    const int k = 2 * mode_index + 1;
    VectorXd m = state.mean();
    MatrixXd v = state.cov();
    m(k) = -m(k);
    v.row(k) *= -1.0;
    v.col(k) *= -1.0;
    return GaussianState(m, v);
}

double entropy_h(double nu) {
    if (!std::isfinite(nu)) throw ValidationError("entropy_h: non-finite argument");
    nu = std::max(nu, 0.5);
    if (nu - 0.5 < 1e-12) return 0.0;
    const double p = nu + 0.5, m = nu - 0.5;
    return p * std::log2(p) - m * std::log2(m);
}

double von_neumann_entropy(const GaussianState& state) {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(state)) s += entropy_h(nu);
    return s;
}

PhaseSpaceGrid PhaseSpaceGrid::rectangular(double q_min, double q_max, double p_min, double p_max,
                                           double step) {
    if (!(step > 0.0) || !(q_max > q_min) || !(p_max > p_min))
        throw ValidationError("PhaseSpaceGrid: need q_max > q_min, p_max > p_min and step > 0");
    PhaseSpaceGrid g;
    g.u_min = q_min;
    g.u_max = q_max;
    g.v_min = p_min;
    g.v_max = p_max;
    g.n_u = static_cast<int>(std::lround((q_max - q_min) / step)) + 1;
    g.n_v = static_cast<int>(std::lround((p_max - p_min) / step)) + 1;
    return g;
}

PhaseSpaceGrid PhaseSpaceGrid::adapted(const GaussianState& state, double n_sigma, int points_per_axis) {
    if (state.n_modes() != 1) throw ValidationError("PhaseSpaceGrid::adapted: single-mode state required");
    if (points_per_axis < 3) throw ValidationError("PhaseSpaceGrid::adapted: need at least 3 points per axis");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.cov().topLeftCorner<2, 2>());
    const Eigen::Vector2d ev = es.eigenvalues();
    const Eigen::Matrix2d vec = es.eigenvectors();
    PhaseSpaceGrid g;
    g.center_q = state.mean()(0);
    g.center_p = state.mean()(1);
    g.angle = std::atan2(vec(1, 0), vec(0, 0));
    const double su = n_sigma * std::sqrt(std::max(ev(0), 0.0));
    const double sv = n_sigma * std::sqrt(std::max(ev(1), 0.0));
    g.u_min = -su;
    g.u_max = su;
    g.v_min = -sv;
    g.v_max = sv;
    g.n_u = g.n_v = points_per_axis;
    return g;
}

void PhaseSpaceGrid::point(int iu, int iv, double& q, double& p) const {
    const double u = u_min + iu * du();
    const double v = v_min + iv * dv();
    const double c = std::cos(angle), s = std::sin(angle);
    q = center_q + c * u - s * v;
    p = center_p + s * u + c * v;
}

double WignerField::riemann_sum() const {
    double acc = 0.0;
    for (double x : w) acc += x;
    return acc * grid.cell_area();
}

namespace {

struct WignerKernel {
    Eigen::Matrix2d inv;
    double norm;
    Eigen::Vector2d mu;

    explicit WignerKernel(const GaussianState& state) {
        if (state.n_modes() != 1) throw ValidationError("wigner: single-mode state required");
        const Eigen::Matrix2d v = state.cov();
        const double det = v.determinant();
        if (!(det > 1e-300)) throw NumericalError("wigner: degenerate covariance (det <= 1e-300)");
        inv = v.inverse();
        norm = 1.0 / (2.0 * M_PI * std::sqrt(det));
        mu = state.mean();
    }
    double operator()(double q, double p) const {
        const Eigen::Vector2d d(q - mu(0), p - mu(1));
        return norm * std::exp(-0.5 * d.dot(inv * d));
    }
};

}  // namespace

double wigner_at(const GaussianState& state, double q, double p) {
    return WignerKernel(state)(q, p);
}

WignerField wigner(const GaussianState& state, const PhaseSpaceGrid& grid) {
    if (grid.n_u < 2 || grid.n_v < 2) throw ValidationError("wigner: grid needs at least 2 points per axis");
    const WignerKernel k(state);
    WignerField f;
    f.grid = grid;
    const std::size_t n = static_cast<std::size_t>(grid.n_u) * grid.n_v;
    f.q.resize(n);
    f.p.resize(n);
    f.w.resize(n);
    std::size_t idx = 0;
    for (int iu = 0; iu < grid.n_u; ++iu)
        for (int iv = 0; iv < grid.n_v; ++iv, ++idx) {
            grid.point(iu, iv, f.q[idx], f.p[idx]);
            f.w[idx] = k(f.q[idx], f.p[idx]);
        }
    return f;
}

MatrixXd cholesky_with_jitter(const MatrixXd& cov) {
    const MatrixXd sym = 0.5 * (cov + cov.transpose());
    const int d = static_cast<int>(sym.rows());
    for (double jitter : {0.0, 1e-15, 1e-14, 1e-13, 1e-12}) {
        Eigen::LLT<MatrixXd> llt(sym + jitter * MatrixXd::Identity(d, d));
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw ValidationError("sample: covariance is not positive semidefinite after symmetrization");
}

MatrixXd sample(const GaussianState& state, int n_samples, std::uint64_t seed, const SampleOptions& opts) {
    if (n_samples < 1) throw ValidationError("sample: n_samples must be >= 1");
    const int d = 2 * state.n_modes();
    MatrixXd cov = state.cov();
    if (opts.heterodyne_noise) cov += 0.5 * MatrixXd::Identity(d, d);
    const MatrixXd l = cholesky_with_jitter(cov);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXd z(d, n_samples);
    for (int s = 0; s < n_samples; ++s)
        for (int i = 0; i < d; ++i) z(i, s) = g(rng);
    MatrixXd out = (l * z).transpose();
    out.rowwise() += state.mean().transpose();
    return out;
}

GaussianChannel GaussianChannel::identity(int n_modes) {
    return {MatrixXd::Identity(2 * n_modes, 2 * n_modes), MatrixXd::Zero(2 * n_modes, 2 * n_modes), "identity"};
}

double complete_positivity_margin(const GaussianChannel& ch) {
    check_square_even(ch.X, "channel X");
    if (ch.Y.rows() != ch.X.rows() || ch.Y.cols() != ch.X.cols())
        throw ValidationError("channel: X and Y dimensions differ");
    const MatrixXd om = symplectic_form(ch.n_modes());
    const MatrixXd d = 0.5 * (om - ch.X * om * ch.X.transpose());
    Eigen::MatrixXcd h(ch.Y.rows(), ch.Y.cols());
    const MatrixXd ys = 0.5 * (ch.Y + ch.Y.transpose());
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) h(i, j) = {ys(i, j), d(i, j)};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_completely_positive(const GaussianChannel& ch, double tol) {
    return complete_positivity_margin(ch) >= -tol;
}

GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second) {
    if (first.X.rows() != second.X.rows()) throw ValidationError("compose: channel dimensions differ");
    GaussianChannel out;
    out.X = second.X * first.X;
    out.Y = second.X * first.Y * second.X.transpose() + second.Y;
    out.description = first.description + " -> " + second.description;
    return out;
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch) {
    if (ch.X.rows() != state.cov().rows()) {
        std::ostringstream os;
        os << "apply_channel: channel acts on " << ch.n_modes() << " modes, state has " << state.n_modes();
        throw ValidationError(os.str());
    }
    const double margin = complete_positivity_margin(ch);
    if (margin < -kPhysicalityTol) {
        std::ostringstream os;
        os << "apply_channel: unphysical channel '" << ch.description
           << "' (complete-positivity margin " << margin << ")";
        throw ValidationError(os.str());
    }
    MatrixXd v = ch.X * state.cov() * ch.X.transpose() + ch.Y;
    return GaussianState(ch.X * state.mean(), 0.5 * (v + v.transpose()));
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& ch,
                            const std::vector<int>& modes) {
    if (static_cast<int>(modes.size()) != ch.n_modes())
        throw ValidationError("apply_channel: mode list length does not match channel size");
    const int n = state.n_modes();
    std::vector<bool> used(n, false);
    GaussianChannel full = GaussianChannel::identity(n);
    full.description = ch.description;
    for (int a = 0; a < ch.n_modes(); ++a) {
        if (modes[a] < 0 || modes[a] >= n || used[modes[a]])
            throw ValidationError("apply_channel: invalid or repeated mode index");
        used[modes[a]] = true;
    }
    for (int a = 0; a < ch.n_modes(); ++a)
        for (int b = 0; b < ch.n_modes(); ++b) {
            full.X.block<2, 2>(2 * modes[a], 2 * modes[b]) = ch.X.block<2, 2>(2 * a, 2 * b);
            full.Y.block<2, 2>(2 * modes[a], 2 * modes[b]) = ch.Y.block<2, 2>(2 * a, 2 * b);
        }
    return apply_channel(state, full);
}

}  // namespace qradar
