#include "qradar/oe_converter.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "continuation.hpp"
#include "qradar/channel.hpp"
#include "qradar/error.hpp"
#include "qradar/parallel.hpp"

namespace qradar {

namespace {

constexpr double kEpsilon0 = 8.8541878128e-12;
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

void OeParams::validate() const {
    auto nonneg = [](double v, const char* n) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(std::string("OeParams: ") + n + " must be >= 0");
    };
    nonneg(kappa_c, "kappa_c");
    nonneg(kappa_w, "kappa_w");
    nonneg(gamma_p, "gamma_p");
    nonneg(g_op, "g_op");
    nonneg(g_wp_per_mu_c, "g_wp_per_mu_c");
    nonneg(mu_c, "mu_c");
    nonneg(E_c, "E_c");
    nonneg(E_w, "E_w");
    nonneg(T_c, "T_c");
    if (!(omega_c > 0.0) || !(omega_w > 0.0)) throw ValidationError("OeParams: cavity frequencies must be > 0");
    if (!std::isfinite(delta_c) || !std::isfinite(delta_w) || !std::isfinite(delta_eg))
        throw ValidationError("OeParams: detunings must be finite");
    if (!(omega_eg() > 0.0)) throw ValidationError("OeParams: omega_c + delta_eg must be > 0");
}

OeParams OeParams::reference() {
    const double u = 2.0 * M_PI * 1e6;
    OeParams p;
    p.delta_eg = u;
    p.gamma_p = 0.01 * u;
    p.kappa_c = 0.0295 * u;
    p.kappa_w = 0.024 * u;
    p.delta_c = -3.7715148384e6;
    p.delta_w = 5.9375540435e6;
    p.g_op = 635.33226016;
    p.g_wp_per_mu_c = 1.1107207345e7;
    p.mu_c = 2e-4;
    p.E_c = 3.7744650522e8;
    p.E_w = 5.1544182568e9;
    return p;
}

void PdMaterialSpec::validate() const {
    if (!(dipole_moment >= 0.0) || !(density_of_states > 0.0) || !(lorentzian_width > 0.0) || !(mode_volume > 0.0))
        throw ValidationError("PdMaterialSpec: dipole >= 0 and positive density of states, width, volume required");
}

double coupling_gop(const PdMaterialSpec& spec, double omega_c, double omega_eg) {
    spec.validate();
    if (!(omega_c > 0.0) || !(omega_eg > 0.0)) throw ValidationError("coupling_gop: frequencies must be > 0");
    const double hw = 0.5 * spec.lorentzian_width;
    const double d = omega_eg - omega_c;
    const double lorentz = hw / M_PI / (d * d + hw * hw);
    return M_PI * omega_c / (kEpsilon0 * spec.mode_volume) * spec.dipole_moment * spec.dipole_moment *
           spec.density_of_states * lorentz;
}

OeOperatingPoint operating_point(const OeParams& p) {
    p.validate();
    const bool printed = p.variant == OeDriftVariant::as_printed;
    const double gop = p.g_op, gwp = p.g_wp();
    const double ec2 = p.E_c * p.E_c, ew2 = p.E_w * p.E_w;
    auto den_a = [&](double pp) {
        const double d = p.delta_c + gop * pp;
        return d * d + p.kappa_c * p.kappa_c;
    };
    auto den_c = [&](double x) {
        const double d = p.delta_w - gwp * x;
        return d * d + p.kappa_w * p.kappa_w;
    };
    using V2 = detail::Vec<2>;
    using M2 = detail::Mat<2>;
    // Consistent: q row  -gamma_p X + Delta_eg P + g_op |A_s|^2 = 0.
    // Printed:    q row  Delta_eg P + 2 g_op Re A_s = 0 (E_c real).
    // p row (both): -gamma_p P - Delta_eg X + g_wp |C_s|^2 = 0.
    auto f = [&](const V2& v, double s) {
        const double pp = v(0), x = v(1);
        V2 r;
        if (printed)
            r(0) = p.delta_eg * pp + 2.0 * gop * s * p.E_c * p.kappa_c / den_a(pp);
        else
            r(0) = -p.gamma_p * x + p.delta_eg * pp + gop * s * s * ec2 / den_a(pp);
        r(1) = -p.gamma_p * pp - p.delta_eg * x + gwp * s * s * ew2 / den_c(x);
        return r;
    };
    auto jac = [&](const V2& v, double s) {
        const double pp = v(0), x = v(1);
        const double da = den_a(pp), dc = den_c(x);
        const double dda = 2.0 * (p.delta_c + gop * pp) * gop;   // d den_a / dP
        const double ddc = -2.0 * (p.delta_w - gwp * x) * gwp;   // d den_c / dX
        M2 m;
        if (printed) {
            m(0, 0) = p.delta_eg - 2.0 * gop * s * p.E_c * p.kappa_c * dda / (da * da);
            m(0, 1) = 0.0;
        } else {
            m(0, 0) = p.delta_eg - gop * s * s * ec2 * dda / (da * da);
            m(0, 1) = -p.gamma_p;
        }
        m(1, 0) = -p.gamma_p;
        m(1, 1) = -p.delta_eg - gwp * s * s * ew2 * ddc / (dc * dc);
        return m;
    };
    const double rate = std::max({std::abs(p.delta_eg), p.gamma_p, 1e-300});
    const V2 scale(std::max(gop * ec2 / std::max(den_a(0.0), 1e-300) / rate, 1e-9),
                   std::max(gwp * ew2 / std::max(den_c(0.0), 1e-300) / rate, 1e-9));
    detail::ContinuationResult info;
    const V2 v = detail::track_root<2>(f, jac, V2::Zero(), scale, info, "OE operating point");

    OeOperatingPoint op;
    op.P_s = v(0);
    op.X_s = v(1);
    op.iterations = info.iterations;
    const std::complex<double> j(0.0, 1.0);
    op.A_s = p.E_c / (j * (p.delta_c + gop * op.P_s) + p.kappa_c);
    op.C_s = std::sqrt(ew2 / den_c(op.X_s));

    const V2 r = f(v, 1.0);
    const double s0 = printed ? std::abs(p.delta_eg * op.P_s) + 2.0 * gop * std::abs(op.A_s)
                              : std::abs(p.gamma_p * op.X_s) + std::abs(p.delta_eg * op.P_s) + gop * std::norm(op.A_s);
    const double s1 = std::abs(p.gamma_p * op.P_s) + std::abs(p.delta_eg * op.X_s) + gwp * std::norm(op.C_s);
    op.residual = std::max(std::abs(r(0)) / std::max(s0, 1e-300), std::abs(r(1)) / std::max(s1, 1e-300));
    if (op.residual > 1e-9) {
        std::ostringstream os;
        os << "OE operating point: residual " << op.residual << " exceeds 1e-9";
        throw NumericalError(os.str());
    }
    return op;
}

MatrixXd drift_matrix(const OeParams& p, const OeOperatingPoint& op) {
    p.validate();
    const bool printed = p.variant == OeDriftVariant::as_printed;
    const double gop = p.g_op, gwp = p.g_wp();
    const double asr = op.A_s.real(), asi = op.A_s.imag();
    const double csr = op.C_s.real(), csi = op.C_s.imag();
    const double dc1 = p.delta_c + gop * op.P_s;
    const double dw1 = p.delta_w - gwp * op.X_s;

    MatrixXd a = MatrixXd::Zero(6, 6);
    a(0, 1) = p.delta_eg;
    a(1, 0) = -p.delta_eg;
    a(1, 1) = -p.gamma_p;
    a(1, 4) = kSqrt2 * gwp * csr;
    a(2, 1) = kSqrt2 * gop * asi;
    a(2, 2) = -p.kappa_c;
    a(2, 3) = dc1;
    a(3, 1) = -kSqrt2 * gop * asr;
    a(3, 2) = -dc1;
    a(3, 3) = -p.kappa_c;
    a(4, 0) = -kSqrt2 * gwp * csi;
    a(4, 4) = -p.kappa_w;
    a(4, 5) = dw1;
    a(5, 0) = kSqrt2 * gwp * csr;
    a(5, 5) = -p.kappa_w;
    if (printed) {
        a(0, 2) = kSqrt2 * gop;
        a(1, 5) = -kSqrt2 * gwp * csi;
        a(5, 4) = -p.delta_w - gwp * op.X_s;
    } else {
        a(0, 0) = -p.gamma_p;
        a(0, 2) = kSqrt2 * gop * asr;
        a(0, 3) = kSqrt2 * gop * asi;
        a(1, 5) = kSqrt2 * gwp * csi;
        a(5, 4) = -dw1;
    }
    return a;
}

MatrixXd oe_diffusion(const OeParams& p) {
    const BathKind pd = p.variant == OeDriftVariant::as_printed ? BathKind::mechanical : BathKind::cavity;
    return diffusion_from_baths({
        {p.omega_eg(), p.gamma_p, p.T_c, pd},
        {p.omega_c, p.kappa_c, p.T_c, BathKind::cavity},
        {p.omega_w, p.kappa_w, p.T_c, BathKind::cavity},
    });
}

LinearLangevinModel oe_model(const OeParams& p) {
    const OeOperatingPoint op = operating_point(p);
    return {drift_matrix(p, op), oe_diffusion(p), {"PD", "OC", "MC"}};
}

OeReport entanglement_report(const OeParams& p) {
    const LinearLangevinModel model = oe_model(p);
    OeReport r;
    const StabilityReport st = is_stable(model);
    r.stable = st.stable;
    r.max_real_part = st.max_real_part;
    r.cov = steady_state_cov(model);
    r.oc_mc = evaluate(BipartiteBlocks::from_state(GaussianState(r.cov), kOeOptical, kOeMicrowave));
    return r;
}

DetuningCurve entanglement_vs_detuning(const OeParams& p, const std::vector<double>& grid, int workers) {
    if (grid.empty()) throw ValidationError("entanglement_vs_detuning: empty grid");
    DetuningCurve c;
    c.rows.resize(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        OeParams q = p;
        q.delta_eg = grid[i];
        DetuningRow& row = c.rows[i];
        row.delta_eg = grid[i];
        try {
            row.two_eta = entanglement_report(q).oc_mc.two_eta;
            row.stable = true;
        } catch (const NumericalError&) {
            row.two_eta = std::numeric_limits<double>::quiet_NaN();
            row.stable = false;
        }
    });
    for (std::size_t i = 0; i < c.rows.size(); ++i)
        if (c.rows[i].stable && (c.argmin < 0 || c.rows[i].two_eta < c.rows[c.argmin].two_eta))
            c.argmin = static_cast<int>(i);
    return c;
}

EndToEndReport end_to_end_report(const OeParams& p, const EndToEndSpec& spec) {
    const OeReport direct = entanglement_report(p);
    const double n_bath = thermal_occupation(p.omega_w, p.T_c);
    const double n_env = spec.n_env < 0.0 ? n_bath : spec.n_env;
    const double n_t = spec.n_target < 0.0 ? n_bath : spec.n_target;
    const GaussianChannel leg = attenuation_channel(spec.kappa_atm, spec.range_m, n_env);
    const GaussianChannel ch = round_trip(leg, target_channel(spec.kappa_t, spec.dz_t, n_t), leg);

    const GaussianState pair = GaussianState(direct.cov).reduced({kOeOptical, kOeMicrowave});
    const GaussianState back = apply_channel(pair, ch, {1});
    EndToEndReport r;
    r.direct = direct.oc_mc;
    r.backscatter = evaluate(BipartiteBlocks::from_state(back, 0, 1));
    r.round_trip_transmissivity = transmissivity(ch);
    return r;
}

std::vector<TemperatureRow> temperature_sweep(const OeParams& p, const EndToEndSpec& spec,
                                              const std::vector<double>& grid, int workers) {
    if (grid.empty()) throw ValidationError("temperature_sweep: empty grid");
    std::vector<TemperatureRow> rows(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        OeParams q = p;
        q.T_c = grid[i];
        TemperatureRow& row = rows[i];
        row.T_c = grid[i];
        try {
            const EndToEndReport r = end_to_end_report(q, spec);
            row.two_eta_direct = r.direct.two_eta;
            row.two_eta_backscatter = r.backscatter.two_eta;
            row.stable = true;
        } catch (const NumericalError&) {
            row.two_eta_direct = row.two_eta_backscatter = std::numeric_limits<double>::quiet_NaN();
            row.stable = false;
        }
    });
    return rows;
}

namespace {

template <class F>
double bisect_threshold(F&& two_eta_at, double t_max, double resolution, const char* what) {
    if (!(two_eta_at(0.0) < 1.0)) throw NumericalError(std::string(what) + ": separable at T_c = 0");
    const int n = 64;
    double lo = 0.0, hi = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double t = t_max * i / n;
        if (two_eta_at(t) >= 1.0) {
            hi = t;
            break;
        }
        lo = t;
    }
    if (hi < 0.0) throw NumericalError(std::string(what) + ": still entangled at t_max");
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (two_eta_at(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double threshold_temperature(const OeParams& p, double t_max, double resolution) {
    return bisect_threshold(
        [&](double t) {
            OeParams q = p;
            q.T_c = t;
            return entanglement_report(q).oc_mc.two_eta;
        },
        t_max, resolution, "OE threshold_temperature");
}

double threshold_temperature_end_to_end(const OeParams& p, const EndToEndSpec& spec, double t_max,
                                        double resolution) {
    return bisect_threshold(
        [&](double t) {
            OeParams q = p;
            q.T_c = t;
            return end_to_end_report(q, spec).backscatter.two_eta;
        },
        t_max, resolution, "OE end-to-end threshold");
}

}  // namespace qradar
