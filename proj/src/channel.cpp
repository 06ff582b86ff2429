#include "qradar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qradar/error.hpp"

namespace qradar {

void ThermalProfile::validate() const {
    if (!(n_in >= 0.0) || !(n_out >= 0.0)) throw ValidationError("ThermalProfile: occupations must be >= 0");
    if (!(mu_in >= 0.0) || !(mu_out >= 0.0)) throw ValidationError("ThermalProfile: absorption must be >= 0");
    if (!(L > 0.0)) throw ValidationError("ThermalProfile: L must be > 0");
    if (!(L0 >= 0.0) || L0 > L) throw ValidationError("ThermalProfile: need 0 <= L0 <= L");
}

double n_eff_closed(const ThermalProfile& p) {
    p.validate();
    const double e_in = std::exp(-p.mu_in * p.L0);
    const double e_out = std::exp(-p.mu_out * (p.L - p.L0));
    const double den = 1.0 - e_in * e_out;
    if (!(den > 1e-300)) throw ValidationError("n_eff_closed: zero total absorption, n_eff is undefined");
    return p.n_in * e_out * (1.0 - e_in) / den + p.n_out * (1.0 - e_out) / den;
}

namespace {

double integrate_split(const ProfileFn& f, double a, double b, const QuadratureOptions& opts, double& err) {
    using boost::math::quadrature::gauss_kronrod;
    std::vector<double> cuts{a};
    for (double x : opts.breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        // Boost compares an unscaled error estimate with a width-scaled target, so
        // short segments never converge; integrate over [0, 1] instead.
        const double lo = cuts[i], w = cuts[i + 1] - cuts[i];
        const auto unit = [&](double t) { return w * f(lo + w * t); };
        double e = 0.0;
        acc += gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, opts.max_depth, opts.tolerance, &e);
        err += e;
    }
    return acc;
}

}  // namespace

double n_eff_general(const ProfileFn& mu, const ProfileFn& n, double L, const QuadratureOptions& opts) {
    if (!(L > 0.0)) throw ValidationError("n_eff_general: L must be > 0");
    // Inner errors are tracked as a worst case, not summed over every outer node.
    double inner_err = 0.0;
    const auto optical_depth = [&](double x) {
        double e = 0.0;
        const double d = integrate_split(mu, 0.0, x, opts, e);
        inner_err = std::max(inner_err, e / std::max(1.0, d));
        return d;
    };
    const ProfileFn integrand = [&](double x) { return mu(x) * n(x) * std::exp(-optical_depth(x)); };
    double err = 0.0;
    const double num = integrate_split(integrand, 0.0, L, opts, err);
    const double den = -std::expm1(-optical_depth(L));
    if (!(den > 1e-300)) throw ValidationError("n_eff_general: zero total absorption, n_eff is undefined");
    const double limit = 1e3 * opts.tolerance;
    if (!std::isfinite(num) || err > limit * std::max(1.0, std::abs(num)) || inner_err > limit) {
        std::ostringstream os;
        os << "n_eff_general: quadrature did not converge (error estimates " << err << ", " << inner_err << ")";
        throw NumericalError(os.str());
    }
    return num / den;
}

StepProfile step_profile(const ThermalProfile& p) {
    p.validate();
    const double edge = p.L - p.L0;
    StepProfile s;
    s.breakpoint = edge;
    s.mu = [p, edge](double x) { return x < edge ? p.mu_out : p.mu_in; };
    s.n = [p, edge](double x) { return x < edge ? p.n_out : p.n_in; };
    return s;
}

namespace {

GaussianChannel loss_like(double t, double n, std::string desc) {
    GaussianChannel ch;
    ch.X = Eigen::Matrix2d::Identity() * std::sqrt(t);
    ch.Y = Eigen::Matrix2d::Identity() * (1.0 - t) * (n + 0.5);
    ch.description = std::move(desc);
    return ch;
}

}  // namespace

GaussianChannel attenuation_channel(double kappa_atm, double range_m, double n_env) {
    if (!(kappa_atm >= 0.0) || !(range_m >= 0.0)) throw ValidationError("attenuation_channel: need kappa >= 0, R >= 0");
    if (!(n_env >= 0.0)) throw ValidationError("attenuation_channel: n_env must be >= 0");
    std::ostringstream os;
    os << "attenuation(kappa=" << kappa_atm << "/m, R=" << range_m << " m, n=" << n_env << ")";
    return loss_like(std::exp(-2.0 * kappa_atm * range_m), n_env, os.str());
}

GaussianChannel target_channel(double kappa_t, double dz_t, double n_t) {
    if (!(kappa_t >= 0.0)) throw ValidationError("target_channel: kappa_t must be >= 0");
    if (!(dz_t > 0.0)) throw ValidationError("target_channel: dz_t must be > 0");
    if (!(n_t >= 0.0)) throw ValidationError("target_channel: n_t must be >= 0");
    const double r = std::exp(-kappa_t * dz_t);
    std::ostringstream os;
    os << "target(kappa_t=" << kappa_t << "/m, dz=" << dz_t << " m, n=" << n_t << ")";
    return loss_like(r * r, n_t, os.str());
}

GaussianChannel amplifier_channel(double gain_db, double added_noise) {
    if (!(gain_db >= 0.0)) throw ValidationError("amplifier_channel: gain below 1, use attenuation_channel instead");
    if (!(added_noise >= 0.0)) throw ValidationError("amplifier_channel: added noise must be >= 0");
    const double g = std::pow(10.0, gain_db / 10.0);
    GaussianChannel ch;
    ch.X = Eigen::Matrix2d::Identity() * std::sqrt(g);
    ch.Y = Eigen::Matrix2d::Identity() * (g - 1.0) * (added_noise + 0.5);
    std::ostringstream os;
    os << "amplifier(G=" << gain_db << " dB, n_add=" << added_noise << ")";
    ch.description = os.str();
    return ch;
}

GaussianChannel round_trip(const GaussianChannel& out, const GaussianChannel& target, const GaussianChannel& back) {
    if (out.n_modes() != 1 || target.n_modes() != 1 || back.n_modes() != 1)
        throw ValidationError("round_trip: single-mode channels expected");
    return compose(compose(out, target), back);
}

GaussianChannel channel_preset(const std::string& name, double n_thermal) {
    if (name == "fig10_atmosphere") return attenuation_channel(2e-6, 20.0, n_thermal);
    if (name == "fig10_target") return target_channel(18.2, 0.01, n_thermal);
    if (name == "quantum_limited_amp") return amplifier_channel(20.0, 0.0);
    throw ValidationError("unknown channel preset '" + name + "'");
}

std::vector<std::string> channel_preset_names() {
    return {"fig10_atmosphere", "fig10_target", "quantum_limited_amp"};
}

double transmissivity(const GaussianChannel& ch) {
    if (ch.n_modes() != 1) throw ValidationError("transmissivity: single-mode channel expected");
    return ch.X(0, 0) * ch.X(0, 0);
}

}  // namespace qradar
