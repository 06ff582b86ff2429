#include <doctest.h>

#include <cmath>

#include "qradar/eom_converter.hpp"
#include "qradar/error.hpp"

using namespace qradar;

namespace {

EomParams uncoupled() {
    EomParams p = EomParams::reference();
    p.G1 = 0.0;
    p.G2 = 0.0;
    return p;
}

}  // namespace

TEST_SUITE("eom_converter") {

TEST_CASE("undriven fixed point is zero") {
    EomParams p = EomParams::reference();
    p.E_c = 0.0;
    p.E_w = 0.0;
    const EomOperatingPoint op = operating_point(p);
    CHECK(std::abs(op.A_s) == 0.0);
    CHECK(std::abs(op.C_s) == 0.0);
    CHECK(op.P_s == 0.0);
    CHECK(op.X_s == 0.0);
}

TEST_CASE("decoupled fixed point has the linear-cavity closed form") {
    const EomParams p = uncoupled();
    const EomOperatingPoint op = operating_point(p);
    const std::complex<double> j(0, 1);
    const auto a = p.E_c / (j * p.delta_c + p.kappa_c);
    CHECK(std::abs(op.A_s - a) <= 1e-12 * std::abs(a));
    // C_s is taken real and positive; its modulus is the closed form's.
    CHECK(op.C_s.imag() == 0.0);
    CHECK(op.C_s.real() == doctest::Approx(std::abs(p.E_w / (j * p.delta_w + p.kappa_w))).epsilon(1e-12));
    CHECK(op.P_s == 0.0);
    CHECK(op.X_s == 0.0);
}

TEST_CASE("reference fixed point satisfies its equations") {
    const EomOperatingPoint op = operating_point(EomParams::reference());
    CHECK(op.residual <= 1e-9);
    CHECK(op.C_s.real() > 0.0);
    CHECK(op.C_s.imag() == 0.0);
}

TEST_CASE("drift structure") {
    const EomParams ref = EomParams::reference();
    const MatrixXd a = drift_matrix(ref, operating_point(ref));
    CHECK(a(0, 1) == ref.omega_m);
    CHECK(a(1, 0) == -ref.omega_m);
    CHECK(a(3, 1) == doctest::Approx(-std::sqrt(2.0) * ref.G1_eff()).epsilon(1e-15));
    // Drive phase convention: Im C_s = 0 removes G11.
    CHECK(a(4, 0) == 0.0);

    const EomParams p = uncoupled();
    const MatrixXd d = drift_matrix(p, operating_point(p));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            if (i != k) CHECK(d.block(2 * i, 2 * k, 2, 2).isZero(0.0));
    CHECK(d(1, 1) == -p.gamma_m);
    CHECK(d(0, 0) == 0.0);
}

TEST_CASE("printed layout places G_m in the optical column") {
    EomParams p = EomParams::reference();
    const MatrixXd c = drift_matrix(p, operating_point(p));
    p.layout = EomCouplingLayout::as_printed;
    const MatrixXd printed = drift_matrix(p, operating_point(p));
    CHECK(printed(1, 3) == c(1, 4));
    CHECK(printed(1, 4) == 0.0);
}

TEST_CASE("reference model is stable") {
    const LinearLangevinModel m = eom_model(EomParams::reference());
    CHECK(is_stable(m).stable);
}

TEST_CASE("zero coupling factorizes into thermal blocks") {
    const EomParams p = with_axis(uncoupled(), EomAxis::temperature, 0.05);
    const EomReport r = entanglement_report(p);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            if (i != k) CHECK(r.cov.block(2 * i, 2 * k, 2, 2).isZero(0.0));
    const double n_w = thermal_occupation(p.omega_w, p.T);
    CHECK((r.cov.block(4, 4, 2, 2) - (n_w + 0.5) * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12 * (n_w + 1));
    CHECK((r.cov.block(2, 2, 2, 2) - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_FALSE(r.oc_mc.entangled_by_ppt);
    CHECK_FALSE(r.oc_mr.entangled_by_ppt);
    CHECK_FALSE(r.mr_mc.entangled_by_ppt);
}

TEST_CASE("entanglement at low temperature, none when hot") {
    const EomParams ref = EomParams::reference();
    const EomReport cold = entanglement_report(with_axis(ref, EomAxis::temperature, 0.03));
    const EomReport warm = entanglement_report(with_axis(ref, EomAxis::temperature, 1.2));
    CHECK(cold.oc_mc.lambda_sph < 0.0);
    CHECK(warm.oc_mc.lambda_sph > cold.oc_mc.lambda_sph);
    const EomReport hot = entanglement_report(with_axis(ref, EomAxis::temperature, 50.0));
    CHECK(hot.oc_mc.lambda_sph >= 0.0);
    CHECK(hot.oc_mr.lambda_sph >= 0.0);
    CHECK(hot.mr_mc.lambda_sph >= 0.0);
}

TEST_CASE("steady states are physical") {
    const EomParams ref = EomParams::reference();
    for (double t : {0.0, 0.1, 0.5, 2.0}) CHECK(GaussianState(entanglement_report(with_axis(ref, EomAxis::temperature, t)).cov).is_physical());
}

TEST_CASE("singleton sweep equals the report") {
    const EomParams ref = EomParams::reference();
    const auto rows = sweep(ref, EomAxis::temperature, {0.0});
    REQUIRE(rows.size() == 1);
    const EomReport r = entanglement_report(with_axis(ref, EomAxis::temperature, 0.0));
    CHECK(rows[0].stable);
    CHECK(rows[0].lambda_oc_mc == r.oc_mc.lambda_sph);
    CHECK(rows[0].lambda_oc_mr == r.oc_mr.lambda_sph);
    CHECK(rows[0].lambda_mr_mc == r.mr_mc.lambda_sph);
}

TEST_CASE("property: OC-MC lambda_SPH is non-decreasing in temperature") {
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(1.5 * i / 49.0);
    const auto rows = sweep(EomParams::reference(), EomAxis::temperature, grid);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].lambda_oc_mc >= rows[i - 1].lambda_oc_mc - 1e-12);
}

TEST_CASE("sweep output order is independent of worker count") {
    std::vector<double> grid;
    for (int i = 0; i < 17; ++i) grid.push_back(0.05 * i);
    const auto a = sweep(EomParams::reference(), EomAxis::temperature, grid, 1);
    const auto b = sweep(EomParams::reference(), EomAxis::temperature, grid, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].lambda_oc_mc == b[i].lambda_oc_mc);
    }
}

TEST_CASE("unstable points are flagged, not fatal") {
    EomParams p = EomParams::reference();
    p.delta_c = -p.delta_c;  // both drives blue-detuned
    p.delta_w = -p.delta_w;
    const auto rows = sweep(p, EomAxis::temperature, {0.0, 0.1});
    for (const auto& r : rows) {
        CHECK_FALSE(r.stable);
        CHECK(std::isnan(r.lambda_oc_mc));
    }
    CHECK_THROWS_AS(entanglement_report(p), NumericalError);
}

TEST_CASE("OC-MR entanglement degrades with mechanical damping") {
    EomParams ref = EomParams::reference();
    ref.T = 0.01;
    const auto rows = sweep(ref, EomAxis::gamma_m, {2 * M_PI * 1.0, 2 * M_PI * 100.0, 2 * M_PI * 1e4});
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].lambda_oc_mr > rows[0].lambda_oc_mr);
}

TEST_CASE("threshold temperature") {
    const EomParams ref = EomParams::reference();
    const double t = threshold_temperature(ref, 5.0, 1e-3);
    CHECK(t > 0.1);
    CHECK(t < 1.2);
    CHECK(entanglement_report(with_axis(ref, EomAxis::temperature, t - 2e-3)).oc_mc.lambda_sph < 0.0);
    CHECK(entanglement_report(with_axis(ref, EomAxis::temperature, t + 2e-3)).oc_mc.lambda_sph >= 0.0);
    CHECK_THROWS_AS(threshold_temperature(uncoupled()), NumericalError);
    CHECK_THROWS_AS(threshold_temperature(ref, 0.1), NumericalError);
}

TEST_CASE("validation") {
    EomParams p = EomParams::reference();
    p.kappa_c = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    CHECK_THROWS_AS(parse_eom_axis("pressure"), ValidationError);
}

}  // TEST_SUITE
