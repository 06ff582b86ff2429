#include <doctest.h>

#include <cmath>
#include <random>

#include "qradar/channel.hpp"
#include "qradar/criteria.hpp"
#include "qradar/error.hpp"
#include "qradar/receiver.hpp"
#include "support/generators.hpp"

using namespace qradar;
using qradar::testing::max_abs_diff;

namespace {

double two_eta_after(const GaussianChannel& ch, double r = 1.0) {
    return two_eta(BipartiteBlocks::from_state(apply_channel(tmsv_cm(r), ch, {0})));
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("n_eff closed form") {
    CHECK(n_eff_closed({2.0, 2.0, 0.3, 1.1, 0.4, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(n_eff_closed({0.7, 9.0, 0.3, 1.1, 1.0, 1.0}) == doctest::Approx(0.7).epsilon(1e-15));
    // mu_in L0 = mu_out (L - L0) = ln 2
    const double l2 = std::log(2.0);
    CHECK(n_eff_closed({0.0, 1.0, l2 / 0.5, l2 / 0.5, 0.5, 1.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(n_eff_closed({0.0, 1.0, 0.0, 0.0, 0.5, 1.0}), ValidationError);
    CHECK_THROWS_AS(n_eff_closed({0.0, 1.0, 1.0, 1.0, 1.5, 1.0}), ValidationError);
}

TEST_CASE("property: n_eff is a convex combination") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ThermalProfile p{5 * u(rng), 5 * u(rng), 3 * u(rng) + 1e-3, 3 * u(rng) + 1e-3, 0.0, 0.5 + 2 * u(rng)};
        p.L0 = p.L * u(rng);
        const double n = n_eff_closed(p);
        CHECK(n >= std::min(p.n_in, p.n_out) - 1e-12);
        CHECK(n <= std::max(p.n_in, p.n_out) + 1e-12);
    }
}

TEST_CASE("general quadrature matches the closed form on step profiles") {
    for (double L0 : {0.0, 0.2, 0.75, 1.5}) {
        const ThermalProfile p{0.3, 4.0, 2.0, 0.6, L0, 1.5};
        const StepProfile s = step_profile(p);
        QuadratureOptions q;
        q.breakpoints = {s.breakpoint};
        CHECK(std::abs(n_eff_general(s.mu, s.n, p.L, q) - n_eff_closed(p)) <= 1e-8);
    }
}

TEST_CASE("general quadrature on uniform and ramp profiles") {
    const auto mu = [](double) { return 0.8; };
    CHECK(n_eff_general(mu, [](double) { return 2.5; }, 3.0) == doctest::Approx(2.5).epsilon(1e-12));
    const double v = n_eff_general(mu, [](double x) { return 1.0 + x; }, 2.0);
    CHECK(v > 1.0);
    CHECK(v < 3.0);
    CHECK_THROWS_AS(n_eff_general([](double) { return 0.0; }, mu, 1.0), ValidationError);
}

TEST_CASE("attenuation channel") {
    const GaussianChannel id = attenuation_channel(0.1, 0.0, 3.0);
    CHECK(max_abs_diff(id.X, MatrixXd::Identity(2, 2)) == 0.0);
    CHECK(id.Y.isZero(0.0));
    const GaussianChannel f10 = attenuation_channel(2e-6, 20.0, 0.0);
    CHECK(transmissivity(f10) == doctest::Approx(std::exp(-8e-5)).epsilon(1e-15));
    CHECK(transmissivity(f10) == doctest::Approx(0.99992).epsilon(1e-6));
    CHECK(f10.Y(0, 0) == doctest::Approx((1 - std::exp(-8e-5)) * 0.5).epsilon(1e-12));
}

TEST_CASE("property: segment composition is length-additive and associative") {
    std::mt19937_64 rng(92);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double k = 0.05 * u(rng), n = 3 * u(rng);
        const double r1 = 30 * u(rng), r2 = 30 * u(rng), r3 = 30 * u(rng);
        const auto a = attenuation_channel(k, r1, n), b = attenuation_channel(k, r2, n), c = attenuation_channel(k, r3, n);
        const auto whole = attenuation_channel(k, r1 + r2 + r3, n);
        const auto left = compose(compose(a, b), c), right = compose(a, compose(b, c));
        CHECK(max_abs_diff(left.X, whole.X) <= 1e-12);
        CHECK(max_abs_diff(left.Y, whole.Y) <= 1e-12);
        CHECK(max_abs_diff(left.X, right.X) <= 1e-12);
        CHECK(max_abs_diff(left.Y, right.Y) <= 1e-12);
    }
}

TEST_CASE("target channel") {
    const GaussianChannel mirror = target_channel(0.0, 0.01, 5.0);
    CHECK(max_abs_diff(mirror.X, MatrixXd::Identity(2, 2)) == 0.0);
    CHECK(mirror.Y.isZero(0.0));
    const GaussianChannel t = target_channel(18.2, 0.01, 0.0);
    CHECK(t.X(0, 0) == doctest::Approx(std::exp(-0.182)).epsilon(1e-15));
    // Thermal flooding separates any input.
    CHECK(two_eta_after(target_channel(18.2, 0.01, 1e4), 2.0) >= 1.0);
    CHECK(lambda_sph(BipartiteBlocks::from_state(apply_channel(tmsv_cm(2.0), target_channel(18.2, 0.01, 1e4), {0}))) >= 0.0);
    CHECK_THROWS_AS(target_channel(1.0, 0.0, 0.0), ValidationError);
}

TEST_CASE("amplifier channel") {
    const GaussianChannel one = amplifier_channel(0.0, 0.0);
    CHECK(max_abs_diff(one.X, MatrixXd::Identity(2, 2)) == 0.0);
    CHECK(one.Y.isZero(0.0));
    const GaussianChannel g4 = amplifier_channel(10 * std::log10(4.0), 0.0);
    const GaussianState out = apply_channel(GaussianState::vacuum(1), g4);
    CHECK(out.cov()(0, 0) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK_THROWS_AS(amplifier_channel(-1.0, 0.0), ValidationError);

    // Loss and gain do not commute.
    const GaussianChannel loss = attenuation_channel(0.01, 30.0, 0.0);
    const GaussianChannel la = compose(loss, g4), al = compose(g4, loss);
    CHECK(max_abs_diff(la.X, al.X) < 1e-15);
    CHECK(max_abs_diff(la.Y, al.Y) > 0.1);
}

TEST_CASE("every emitted channel is completely positive") {
    std::vector<GaussianChannel> chans = {attenuation_channel(0.01, 10.0, 2.0), target_channel(18.2, 0.01, 0.5),
                                          amplifier_channel(20.0, 0.0), amplifier_channel(3.0, 1.2)};
    for (const auto& n : channel_preset_names()) chans.push_back(channel_preset(n, 0.3));
    chans.push_back(round_trip(chans[0], chans[1], chans[0]));
    for (const auto& c : chans) {
        CHECK(is_completely_positive(c));
        CHECK(apply_channel(GaussianState::vacuum(1), c).is_physical());
    }
    CHECK_THROWS_AS(channel_preset("fog", 0.0), ValidationError);
}

TEST_CASE("round trip composition") {
    const GaussianChannel id = GaussianChannel::identity(1);
    const GaussianChannel rt = round_trip(id, id, id);
    CHECK(max_abs_diff(rt.X, MatrixXd::Identity(2, 2)) == 0.0);
    const GaussianChannel atm = channel_preset("fig10_atmosphere", 0.0);
    const GaussianChannel tgt = channel_preset("fig10_target", 0.0);
    const double r_eff = std::exp(-18.2 * 0.01);
    CHECK(transmissivity(round_trip(atm, tgt, atm)) == doctest::Approx(r_eff * r_eff * std::exp(-2 * 2 * 2e-6 * 20)).epsilon(1e-14));
    CHECK_THROWS_AS(round_trip(GaussianChannel::identity(2), id, id), ValidationError);
}

TEST_CASE("property: round trip entanglement degrades with range, target loss and bath") {
    double prev = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const auto a = attenuation_channel(0.02, 5.0 * i, 0.3);
        const double e = two_eta_after(round_trip(a, target_channel(5.0, 0.01, 0.3), a));
        CHECK(e >= prev);
        prev = e;
    }
    prev = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double e = two_eta_after(round_trip(attenuation_channel(0.02, 5.0, 0.3), target_channel(3.0 * i, 0.05, 0.3),
                                                  attenuation_channel(0.02, 5.0, 0.3)));
        CHECK(e >= prev);
        prev = e;
    }
    prev = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const auto a = attenuation_channel(0.02, 10.0, 0.5 * i);
        const double e = two_eta_after(round_trip(a, target_channel(5.0, 0.01, 0.3), a));
        CHECK(e >= prev);
        prev = e;
    }
}

}  // TEST_SUITE
