#include "qradar/eom_converter.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "continuation.hpp"
#include "qradar/error.hpp"
#include "qradar/parallel.hpp"

namespace qradar {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

double EomParams::wavelength_scale() const {
    return std::sqrt(lambda_L / lambda_ref);
}

double EomParams::omega_c() const {
    return 2.0 * M_PI * kSpeedOfLight / lambda_L;
}

void EomParams::validate() const {
    auto pos = [](double v, const char* n) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string("EomParams: ") + n + " must be > 0");
    };
    auto nonneg = [](double v, const char* n) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(std::string("EomParams: ") + n + " must be >= 0");
    };
    pos(omega_m, "omega_m");
    pos(omega_w, "omega_w");
    pos(lambda_L, "lambda_L");
    pos(lambda_ref, "lambda_ref");
    nonneg(kappa_c, "kappa_c");
    nonneg(gamma_m, "gamma_m");
    nonneg(kappa_w, "kappa_w");
    nonneg(G1, "G1");
    nonneg(G2, "G2");
    nonneg(E_c, "E_c");
    nonneg(E_w, "E_w");
    nonneg(T, "T");
    if (!std::isfinite(delta_c) || !std::isfinite(delta_w)) throw ValidationError("EomParams: detunings must be finite");
}

EomParams EomParams::reference() {
    const double wm = 2.0 * M_PI * 1e6;
    EomParams p;
    p.omega_m = wm;
    p.omega_w = 2.0 * M_PI * 10e9;
    p.kappa_c = 0.0295 * wm;
    p.gamma_m = 2.0 * M_PI * 1.0;
    p.kappa_w = 0.024 * wm;
    p.delta_c = -0.6 * wm;
    p.delta_w = 0.945 * wm;
    p.G1 = 0.0143 * wm;
    p.G2 = 1e-4;
    p.E_c = 3.7744650522e9;
    p.E_w = 1.9284254510e10;
    return p;
}

EomOperatingPoint operating_point(const EomParams& p) {
    p.validate();
    EomOperatingPoint op;
    const double g1 = p.G1_eff(), ec = p.E_c_eff();
    const std::complex<double> j(0.0, 1.0);

    // A_s = (E_c - j G1 P_s) z with z = 1/(j delta_c + kappa_c); omega_m P_s + 2 G1 Re A_s = 0 is linear in P_s.
    const std::complex<double> z = 1.0 / (j * p.delta_c + p.kappa_c);
    const double den_p = p.omega_m - 2.0 * g1 * g1 * (j * z).real();
    if (std::abs(den_p) < 1e-300) throw NumericalError("operating_point: degenerate optical fixed point");
    op.P_s = -2.0 * g1 * ec * z.real() / den_p;
    op.A_s = (ec - j * g1 * op.P_s) * z;

    // -gamma_m P_s - omega_m X_s + Dw G2 |C_s|^2 = 0 with |C_s|^2 = E_w^2 / ((Dw (1 - G2 X_s))^2 + kappa_w^2)
    const double dw = p.delta_w, g2 = p.G2, kw = p.kappa_w, ew2 = p.E_w * p.E_w;
    using V1 = detail::Vec<1>;
    using M1 = detail::Mat<1>;
    auto den = [&](double x) {
        const double d = dw * (1.0 - g2 * x);
        return d * d + kw * kw;
    };
    auto f = [&](const V1& x, double s) {
        return V1(p.omega_m * x(0) + p.gamma_m * s * op.P_s - dw * g2 * s * s * ew2 / den(x(0)));
    };
    auto jac = [&](const V1& x, double s) {
        const double dd = den(x(0));
        return M1(p.omega_m - dw * g2 * s * s * ew2 * 2.0 * dw * dw * g2 * (1.0 - g2 * x(0)) / (dd * dd));
    };
    const double x_scale = std::max(dw * g2 * ew2 / std::max(kw * kw + dw * dw, 1e-300) / p.omega_m, 1e-9);
    detail::ContinuationResult info;
    const V1 x = detail::track_root<1>(f, jac, V1(0.0), V1(x_scale), info, "EOM operating point");
    op.X_s = x(0);
    op.iterations = info.iterations;
    op.C_s = std::sqrt(ew2 / den(op.X_s));

    const double r_a = std::abs(-(j * p.delta_c + p.kappa_c) * op.A_s - j * g1 * op.P_s + ec) /
                       std::max(ec, std::numeric_limits<double>::min());
    const double r_c = std::abs(std::abs(op.C_s) * std::sqrt(den(op.X_s)) - p.E_w) /
                       std::max(p.E_w, std::numeric_limits<double>::min());
    const double r_p = std::abs(p.omega_m * op.P_s + 2.0 * g1 * op.A_s.real()) /
                       std::max(p.omega_m * std::abs(op.P_s) + 2.0 * g1 * std::abs(op.A_s), 1e-300);
    const double r_x = std::abs(-p.gamma_m * op.P_s - p.omega_m * op.X_s + dw * g2 * std::norm(op.C_s)) /
                       std::max(p.omega_m * std::abs(op.X_s) + std::abs(dw * g2) * std::norm(op.C_s), 1e-300);
    op.residual = std::max({r_a, r_c, r_p, r_x});
    if (op.residual > 1e-9) {
        std::ostringstream os;
        os << "operating_point: fixed point residual " << op.residual << " exceeds 1e-9";
        throw NumericalError(os.str());
    }
    return op;
}

MatrixXd drift_matrix(const EomParams& p, const EomOperatingPoint& op) {
    p.validate();
    const double g1 = p.G1_eff();
    const double k = kSqrt2 * p.G2 * p.delta_w;
    const double g_re = k * op.C_s.real();
    const double g_im = k * op.C_s.imag();
    const double dw1 = p.delta_w - p.G2 * p.delta_w * op.X_s;
    const double kw1 = p.kappa_w;

    MatrixXd a = MatrixXd::Zero(6, 6);
    a(0, 1) = p.omega_m;
    a(0, 2) = kSqrt2 * g1;
    a(1, 0) = -p.omega_m;
    a(1, 1) = -p.gamma_m;
    if (p.layout == EomCouplingLayout::corrected) {
        a(1, 4) = g_re;
        a(1, 5) = g_im;
    } else {
        a(1, 3) = g_re;
    }
    a(2, 2) = -p.kappa_c;
    a(2, 3) = p.delta_c;
    a(3, 1) = -kSqrt2 * g1;
    a(3, 2) = -p.delta_c;
    a(3, 3) = -p.kappa_c;
    a(4, 0) = -g_im;  // G11
    a(4, 4) = -kw1;
    a(4, 5) = dw1;
    a(5, 0) = g_re;  // G22
    a(5, 4) = -dw1;
    a(5, 5) = -kw1;
    return a;
}

MatrixXd eom_diffusion(const EomParams& p) {
    return diffusion_from_baths({
        {p.omega_m, p.gamma_m, p.T, BathKind::mechanical},
        {p.omega_c(), p.kappa_c, p.T, BathKind::cavity},
        {p.omega_w, p.kappa_w, p.T, BathKind::cavity},
    });
}

LinearLangevinModel eom_model(const EomParams& p) {
    const EomOperatingPoint op = operating_point(p);
    return {drift_matrix(p, op), eom_diffusion(p), {"MR", "OC", "MC"}};
}

EomReport entanglement_report(const EomParams& p) {
    const LinearLangevinModel model = eom_model(p);
    EomReport r;
    const StabilityReport st = is_stable(model);
    r.stable = st.stable;
    r.max_real_part = st.max_real_part;
    r.cov = steady_state_cov(model);
    const GaussianState s(r.cov);
    r.oc_mc = evaluate(BipartiteBlocks::from_state(s, kEomOptical, kEomMicrowave));
    r.oc_mr = evaluate(BipartiteBlocks::from_state(s, kEomOptical, kEomMech));
    r.mr_mc = evaluate(BipartiteBlocks::from_state(s, kEomMech, kEomMicrowave));
    return r;
}

EomAxis parse_eom_axis(const std::string& name) {
    if (name == "temperature") return EomAxis::temperature;
    if (name == "wavelength") return EomAxis::wavelength;
    if (name == "gamma_m") return EomAxis::gamma_m;
    throw ValidationError("unknown EOM sweep axis '" + name + "' (expected temperature, wavelength or gamma_m)");
}

EomParams with_axis(EomParams p, EomAxis axis, double value) {
    switch (axis) {
        case EomAxis::temperature: p.T = value; break;
        case EomAxis::wavelength: p.lambda_L = value; break;
        case EomAxis::gamma_m: p.gamma_m = value; break;
    }
    return p;
}

std::vector<EomSweepRow> sweep(const EomParams& p, EomAxis axis, const std::vector<double>& grid, int workers) {
    if (grid.empty()) throw ValidationError("sweep: empty grid");
    for (double v : grid)
        if (!std::isfinite(v)) throw ValidationError("sweep: non-finite grid value");
    std::vector<EomSweepRow> rows(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        EomSweepRow& row = rows[i];
        row.x = grid[i];
        try {
            const EomReport r = entanglement_report(with_axis(p, axis, grid[i]));
            row.stable = true;
            row.lambda_oc_mc = r.oc_mc.lambda_sph;
            row.lambda_oc_mr = r.oc_mr.lambda_sph;
            row.lambda_mr_mc = r.mr_mc.lambda_sph;
        } catch (const NumericalError&) {
            row.stable = false;
            row.lambda_oc_mc = row.lambda_oc_mr = row.lambda_mr_mc = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return rows;
}

double threshold_temperature(const EomParams& p, double t_max, double resolution) {
    auto lam = [&](double t) { return entanglement_report(with_axis(p, EomAxis::temperature, t)).oc_mc.lambda_sph; };
    if (!(lam(0.0) < 0.0)) throw NumericalError("threshold_temperature: OC-MC pair is separable at T = 0");
    const int n = 64;
    double lo = 0.0, hi = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double t = t_max * i / n;
        if (lam(t) >= 0.0) {
            hi = t;
            break;
        }
        lo = t;
    }
    if (hi < 0.0) throw NumericalError("threshold_temperature: still entangled at t_max");
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (lam(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qradar
