#include "qradar/jpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qradar/error.hpp"
#include "qradar/langevin.hpp"

namespace qradar {

namespace {

constexpr double kElementaryCharge = 1.602176634e-19;

// Non-negative real roots of c3 n^3 + c2 n^2 + c1 n + c0, polished by Newton.
std::vector<double> nonneg_real_roots(double c3, double c2, double c1, double c0) {
    std::vector<double> roots;
    auto poly = [&](double n) { return ((c3 * n + c2) * n + c1) * n + c0; };
    auto dpoly = [&](double n) { return (3.0 * c3 * n + 2.0 * c2) * n + c1; };
    if (c3 == 0.0 && c2 == 0.0) {
        if (c1 != 0.0) roots.push_back(-c0 / c1);
    } else {
        const int deg = c3 != 0.0 ? 3 : 2;
        const double lead = deg == 3 ? c3 : c2;
        std::vector<double> c = deg == 3 ? std::vector<double>{c0, c1, c2} : std::vector<double>{c0, c1};
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        for (int i = 0; i < deg; ++i) {
            const cplx z = es.eigenvalues()[i];
            if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
            double x = z.real();
            for (int it = 0; it < 50; ++it) {
                const double dp = dpoly(x);
                if (dp == 0.0) break;
                const double step = poly(x) / dp;
                x -= step;
                if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
            }
            roots.push_back(x);
        }
    }
    std::vector<double> out;
    for (double r : roots)
        if (r >= -1e-14 * std::max(1.0, std::abs(c0))) out.push_back(std::max(r, 0.0));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }),
              out.end());
    return out;
}

}  // namespace

JpaCircuit derived_params(double E_J, double C) {
    if (!(E_J > 0.0) || !(C > 0.0)) throw ValidationError("derived_params: E_J and C must be > 0");
    JpaCircuit c;
    c.E_c = kElementaryCharge * kElementaryCharge / (2.0 * C);
    c.omega0 = std::sqrt(8.0 * c.E_c * E_J) / kHbar;
    c.Lambda = -c.E_c / (2.0 * kHbar);
    return c;
}

JpaCircuit derived_params_natural(double E_J, double E_c) {
    if (!(E_J > 0.0) || !(E_c > 0.0)) throw ValidationError("derived_params: E_J and E_c must be > 0");
    return {E_c, std::sqrt(8.0 * E_c * E_J), -E_c / 2.0};
}

ClassicalField classical_field(const JpaParams& p) {
    if (!(p.kappa > 0.0)) throw ValidationError("classical_field: kappa must be > 0");
    if (!std::isfinite(std::abs(p.epsilon))) throw ValidationError("classical_field: epsilon must be finite");
    const double delta = p.omega0 - p.omega_p;
    const double eps2 = std::norm(p.epsilon);
    ClassicalField f;
    if (eps2 == 0.0) {
        f.branch_count = 1;
    } else if (!p.self_consistent || p.Lambda == 0.0) {
        f.alpha = -cplx(0.0, 1.0) * p.epsilon / cplx(p.kappa / 2.0, delta);
        f.n = std::norm(f.alpha);
        f.branch_count = 1;
    } else {
        // |alpha|^2 ((delta + 4 Lambda n)^2 + kappa^2/4) = |epsilon|^2
        const double L = p.Lambda;
        const auto roots = nonneg_real_roots(16.0 * L * L, 8.0 * L * delta,
                                             delta * delta + 0.25 * p.kappa * p.kappa, -eps2);
        if (roots.empty()) throw NumericalError("classical_field: steady-state cubic has no non-negative root");
        f.branch_count = static_cast<int>(roots.size());
        f.n = roots.front();
        f.alpha = -cplx(0.0, 1.0) * p.epsilon / cplx(p.kappa / 2.0, delta + 4.0 * L * f.n);
    }
    f.bistable = f.branch_count > 1;
    f.Delta0 = p.omega0 + 4.0 * f.n * p.Lambda - p.omega_p;
    f.lambda1 = 2.0 * f.alpha * f.alpha * p.Lambda;
    return f;
}

Eigen::Matrix2cd scattering_matrix(double kappa, double Delta0, cplx lambda1, double omega) {
    if (!(kappa > 0.0)) throw ValidationError("scattering_matrix: kappa must be > 0");
    const double ratio = std::abs(lambda1) / (kappa / 2.0);
    if (!(ratio < 1.0)) {
        std::ostringstream os;
        os << "scattering_matrix: at or above threshold, |lambda1|/(kappa/2) = " << ratio;
        throw NumericalError(os.str());
    }
    const cplx j(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << -j * (omega + Delta0) + kappa / 2.0, j * lambda1,
         -j * std::conj(lambda1), j * (omega - Delta0) + kappa / 2.0;
    return kappa * m.inverse() - Eigen::Matrix2cd::Identity();
}

BipartiteBlocks output_two_mode_cm(const OutputMoments& m) {
    if (!(m.n1 >= 0.0) || !(m.n2 >= 0.0) || !(m.n_in1 >= 0.0) || !(m.n_in2 >= 0.0))
        throw ValidationError("output_two_mode_cm: occupations must be >= 0");
    if (!(m.kappa1 >= 0.0) || !(m.kappa2 >= 0.0)) throw ValidationError("output_two_mode_cm: rates must be >= 0");
    const double bound = m.n1 * m.n2 + std::min(m.n1, m.n2);
    if (m.d12 * m.d12 > bound * (1.0 + 1e-12) + 1e-15) {
        std::ostringstream os;
        os << "output_two_mode_cm: |d12|^2 = " << m.d12 * m.d12 << " exceeds n1 n2 + min(n1, n2) = " << bound;
        throw ValidationError(os.str());
    }
    const double no1 = 2.0 * m.kappa1 * m.n1 + m.n_in1;
    const double no2 = 2.0 * m.kappa2 * m.n2 + m.n_in2;
    const double d = 2.0 * std::sqrt(m.kappa1 * m.kappa2) * m.d12;
    BipartiteBlocks bb;
    bb.A = Matrix2d::Identity() * (no1 + 0.5);
    bb.B = Matrix2d::Identity() * (no2 + 0.5);
    bb.C = (Matrix2d() << d, 0.0, 0.0, -d).finished();
    require_physical(bb);
    return bb;
}

namespace {

// x + i p -> mu (x + i p) + nu (x - i p) is a rotation by theta = (arg mu + arg nu)/2 of
// diag(sum, d / sum), sum = |mu| + |nu|, d = |mu|^2 - |nu|^2. Working from these factors keeps the
// squeezed variance accurate near threshold, where T T^T loses it to cancellation.
struct SqueezeFactors {
    double sum = 1.0;
    double d = 1.0;
    double theta = 0.0;
};

SqueezeFactors squeeze_factors(double kappa, double Delta0, cplx lambda1) {
    const Eigen::Matrix2cd s = scattering_matrix(kappa, Delta0, lambda1, 0.0);
    const cplx mu = s(0, 0), nu = s(0, 1);
    SqueezeFactors f;
    f.sum = std::abs(mu) + std::abs(nu);
    f.d = std::norm(mu) - std::norm(nu);
    if (std::abs(f.d - 1.0) > 1e-9 * (std::norm(mu) + std::norm(nu))) {
        std::ostringstream os;
        os << "single_mode_output: map is not symplectic (|mu|^2 - |nu|^2 = " << f.d << ")";
        throw NumericalError(os.str());
    }
    f.theta = 0.5 * (std::arg(mu) + std::arg(nu));
    return f;
}

}  // namespace

GaussianState single_mode_output(double kappa, double Delta0, cplx lambda1, double n_in) {
    if (!(n_in >= 0.0)) throw ValidationError("single_mode_output: n_in must be >= 0");
    const SqueezeFactors f = squeeze_factors(kappa, Delta0, lambda1);
    Matrix2d r;
    r << std::cos(f.theta), -std::sin(f.theta), std::sin(f.theta), std::cos(f.theta);
    const Eigen::Vector2d diag(f.sum * f.sum, f.d * f.d / (f.sum * f.sum));
    Matrix2d v = (n_in + 0.5) * r * diag.asDiagonal() * r.transpose();
    v = 0.5 * (v + v.transpose());
    // Near threshold, rounding of a tilted, strongly squeezed V can lower det V by
    // about eps |V|^2. A diagonal shift of the same order puts it back.
    const double target = std::pow((n_in + 0.5) * f.d, 2);
    for (int i = 0; i < 3 && v.determinant() < target; ++i)
        v.diagonal().array() += (target - v.determinant()) / v.trace() + std::numeric_limits<double>::epsilon() * v.trace();
    return GaussianState(MatrixXd(v));
}

std::vector<WignerSample> wigner_sweep(const std::vector<double>& g_values, const WignerSweepOptions& opts) {
    std::vector<WignerSample> out;
    out.reserve(g_values.size());
    for (double g : g_values) {
        if (!(g >= 0.0)) throw ValidationError("wigner_sweep: g must be >= 0");
        if (!(g < 0.5)) {
            std::ostringstream os;
            os << "wigner_sweep: g = " << g << " is at or above the threshold g = 0.5";
            throw NumericalError(os.str());
        }
        WignerSample w;
        w.g = g;
        const cplx l1 = std::polar(g * opts.kappa, opts.pump_phase);
        w.state = single_mode_output(opts.kappa, 0.0, l1);
        const SqueezeFactors f = squeeze_factors(opts.kappa, 0.0, l1);
        w.major_variance = 0.5 * f.sum * f.sum;
        w.minor_variance = 0.5 * f.d * f.d / (f.sum * f.sum);
        // Squeezed axis is perpendicular to theta; reported in (-pi/2, pi/2].
        w.axis_angle = std::remainder(f.theta + M_PI / 2.0, M_PI);
        if (w.axis_angle <= -M_PI / 2.0) w.axis_angle += M_PI;
        w.field = wigner(w.state, PhaseSpaceGrid::adapted(w.state, opts.n_sigma, opts.points_per_axis));
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace qradar
