#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "qradar/error.hpp"
#include "qradar/jpa.hpp"
#include "qradar/receiver.hpp"

using namespace qradar;

TEST_SUITE("jpa") {

TEST_CASE("derived parameters in natural units") {
    const JpaCircuit c = derived_params_natural(1.0, 1.0);
    CHECK(c.omega0 == doctest::Approx(std::sqrt(8.0)));
    CHECK(c.Lambda == -0.5);
    CHECK(c.E_c == 1.0);
}

TEST_CASE("capacitance scaling") {
    const double h = 6.62607015e-34;
    const double ej = h * 50e9;
    const JpaCircuit a = derived_params(ej, 1e-12), b = derived_params(ej, 2e-12);
    CHECK(b.E_c == doctest::Approx(a.E_c / 2));
    CHECK(b.Lambda == doctest::Approx(a.Lambda / 2));
    CHECK(b.omega0 == doctest::Approx(a.omega0 / std::sqrt(2.0)));
}

TEST_CASE("SI and natural units agree") {
    const double hbar = 1.054571817e-34, e = 1.602176634e-19;
    const double ej = 6.62607015e-34 * 50e9;
    const JpaCircuit si = derived_params(ej, 1e-12);
    const double ec_rad = e * e / (2e-12) / hbar;
    const JpaCircuit nat = derived_params_natural(ej / hbar, ec_rad);
    CHECK(si.omega0 == doctest::Approx(nat.omega0).epsilon(1e-12));
    CHECK(si.Lambda == doctest::Approx(nat.Lambda).epsilon(1e-12));
    CHECK_THROWS_AS(derived_params(0.0, 1e-12), ValidationError);
}

TEST_CASE("classical field") {
    JpaParams p;
    p.omega0 = 10.0;
    p.omega_p = 10.0;
    p.kappa = 2.0;
    p.Lambda = 0.0;
    p.epsilon = 0.0;
    CHECK(std::abs(classical_field(p).alpha) == 0.0);

    p.epsilon = cplx(0.3, 0.1);
    const ClassicalField lin = classical_field(p);
    CHECK(std::abs(lin.alpha - (-2.0 * cplx(0, 1) * p.epsilon / p.kappa)) < 1e-15);

    // Kerr case: substitute back into alpha (j(delta + 4 Lambda |alpha|^2) + kappa/2) = -j epsilon.
    p.Lambda = -0.02;
    p.epsilon = 1.5;
    const ClassicalField f = classical_field(p);
    const cplx j(0, 1);
    const cplx res = f.alpha * (j * (p.omega0 - p.omega_p + 4.0 * p.Lambda * std::norm(f.alpha)) + p.kappa / 2.0) + j * p.epsilon;
    CHECK(std::abs(res) <= 1e-10);
    CHECK(f.Delta0 == doctest::Approx(p.omega0 + 4 * f.n * p.Lambda - p.omega_p));
    CHECK(std::abs(f.lambda1 - 2.0 * f.alpha * f.alpha * p.Lambda) < 1e-15);
}

TEST_CASE("bistable drive reports every branch and picks the low one") {
    JpaParams p;
    p.omega0 = 0.0;
    p.omega_p = 5.0;  // delta = -5, Lambda < 0: Kerr shift pushes away from resonance
    p.Lambda = 0.1;
    p.kappa = 0.5;
    p.epsilon = 2.0;
    const ClassicalField f = classical_field(p);
    CHECK(f.branch_count == 3);
    CHECK(f.bistable);
    p.self_consistent = false;
    const ClassicalField lin = classical_field(p);
    CHECK(lin.branch_count == 1);
    CHECK(f.n <= 1.01 * lin.n + 1.0);
}

TEST_CASE("no pump gives unit reflection") {
    const auto s = scattering_matrix(1.0, 0.0, 0.0, 0.0);
    CHECK(std::abs(s(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(s(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(s(0, 1)) == 0.0);
}

TEST_CASE("gain at quarter threshold") {
    const double kappa = 2.0, l = kappa / 4;
    const auto s = scattering_matrix(kappa, 0.0, l, 0.0);
    const double oracle = (kappa * kappa / 4 + l * l) / (kappa * kappa / 4 - l * l);
    CHECK(std::abs(s(0, 0)) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(s(0, 0)) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(10 * std::log10(std::norm(s(0, 0))) == doctest::Approx(4.437).epsilon(1e-3));
}

TEST_CASE("threshold is an error naming the ratio") {
    try {
        scattering_matrix(1.0, 0.0, 0.6, 0.0);
        FAIL("expected an error");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("1.2") != std::string::npos);
    }
}

TEST_CASE("property: Bogoliubov identity on random below-threshold points") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int set = 0; set < 20; ++set) {
        const double kappa = 0.5 + 5 * u(rng), d0 = (2 * u(rng) - 1) * kappa;
        const cplx l1 = std::polar(0.99 * u(rng) * kappa / 2, 2 * M_PI * u(rng));
        for (int k = 0; k <= 100; ++k) {
            const auto s = scattering_matrix(kappa, d0, l1, (-2.0 + 4.0 * k / 100) * kappa);
            CHECK(std::norm(s(0, 0)) - std::norm(s(0, 1)) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("property: pump phase rotates the idler phase only") {
    const double kappa = 1.0, d0 = 0.13, w = 0.21;
    const cplx l1 = std::polar(0.3, 0.4);
    const auto s0 = scattering_matrix(kappa, d0, l1, w);
    for (double th : {0.5, 1.7, -2.9}) {
        const auto s = scattering_matrix(kappa, d0, l1 * std::polar(1.0, th), w);
        CHECK(std::abs(s(0, 0)) == doctest::Approx(std::abs(s0(0, 0))).epsilon(1e-12));
        CHECK(std::abs(s(0, 1)) == doctest::Approx(std::abs(s0(0, 1))).epsilon(1e-12));
        CHECK(std::abs(std::remainder(std::arg(s(0, 1)) - std::arg(s0(0, 1)) - th, 2 * M_PI)) < 1e-12);
    }
}

TEST_CASE("property: gain increases with pump and diverges at threshold") {
    double prev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double g = std::norm(scattering_matrix(1.0, 0.0, 0.5 * i / 100.0, 0.0)(0, 0));
        CHECK(g > prev);
        prev = g;
    }
    CHECK(std::norm(scattering_matrix(1.0, 0.0, 0.49 * 0.5, 0.0)(0, 0)) >
          std::norm(scattering_matrix(1.0, 0.0, 0.40 * 0.5, 0.0)(0, 0)));
}

TEST_CASE("output two-mode covariance") {
    OutputMoments m;
    const BipartiteBlocks vac = output_two_mode_cm(m);
    CHECK(vac.A.isApprox(0.5 * Matrix2d::Identity()));
    CHECK(vac.C.isZero());

    m = {0.4, 0.7, 0.0, 1.0, 1.0, 0.0, 0.0};
    const CriteriaReport prod = evaluate(output_two_mode_cm(m));
    CHECK(std::abs(prod.discord) < 1e-12);

    // TMSV(r = 0.5) moments with unit-rate normalisation: 2 kappa n = sinh^2 r, 2 kappa d = sinh r cosh r.
    const double r = 0.5, s = std::sinh(r), c = std::cosh(r);
    m = {s * s, s * s, s * c, 0.5, 0.5, 0.0, 0.0};
    const BipartiteBlocks b = output_two_mode_cm(m);
    CHECK(lambda_sph(b) == doctest::Approx((1 - std::cosh(2.0)) / 8).epsilon(1e-12));

    m = {0.1, 0.1, 0.5, 1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(output_two_mode_cm(m), ValidationError);
}

TEST_CASE("single-mode output covariance matches the scattering map") {
    const double kappa = 1.0;
    const cplx l1 = std::polar(0.3, 0.8);
    const auto s = scattering_matrix(kappa, 0.0, l1, 0.0);
    const cplx mu = s(0, 0), nu = s(0, 1);
    // x + ip -> mu (x + ip) + nu (x - ip) as a real 2x2 map.
    Matrix2d t;
    t << (mu + nu).real(), (nu - mu).imag(), (mu + nu).imag(), (mu - nu).real();
    const Matrix2d expect = 0.5 * t * t.transpose();
    const GaussianState out = single_mode_output(kappa, 0.0, l1);
    CHECK((out.cov() - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(out.cov().determinant() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(out.is_physical());
}

TEST_CASE("Wigner sweep") {
    const auto ws = wigner_sweep({0.0, 0.3, 0.4, 0.499});
    REQUIRE(ws.size() == 4);
    CHECK(ws[0].minor_variance == doctest::Approx(0.5));
    CHECK(ws[0].major_variance == doctest::Approx(0.5));
    CHECK(ws[1].minor_variance == doctest::Approx(0.5 / 16).epsilon(1e-12));
    for (std::size_t i = 0; i < ws.size(); ++i) {
        CHECK(ws[i].field.riemann_sum() == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(ws[i].state.is_physical());
        CHECK(ws[i].minor_variance * ws[i].major_variance == doctest::Approx(0.25).epsilon(1e-9));
        if (i > 0) CHECK(ws[i].minor_variance < ws[i - 1].minor_variance);
    }
    // Squeezed axis follows the pump phase: rotating the pump by phi turns the ellipse by phi/2.
    WignerSweepOptions opt;
    opt.pump_phase = 1.0;
    const auto rot = wigner_sweep({0.3}, opt);
    CHECK(std::abs(std::remainder(rot[0].axis_angle - ws[1].axis_angle - 0.5, M_PI)) < 1e-9);
    CHECK_THROWS_AS(wigner_sweep({0.5}), NumericalError);
    CHECK_THROWS_AS(wigner_sweep({-0.1}), ValidationError);
}

}  // TEST_SUITE
