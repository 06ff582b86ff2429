#include "qradar/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qradar/error.hpp"

namespace qradar {

namespace {

const Matrix2d kJ = (Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();

struct LocalNormal {
    double a, b;
    Matrix2d C;  // cross block after A -> a I, B -> b I
};

// Single-mode Williamson: S = sqrt(a) A^{-1/2} is symplectic and maps A to a I.
Matrix2d williamson_1(const Matrix2d& m, double& nu) {
    nu = std::sqrt(std::max(m.determinant(), 0.0));
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0) throw ValidationError("local covariance block is not positive definite");
    return std::sqrt(nu) * es.operatorInverseSqrt();
}

LocalNormal local_normal(const BipartiteBlocks& bb) {
    LocalNormal ln;
    const Matrix2d sa = williamson_1(bb.A, ln.a);
    const Matrix2d sb = williamson_1(bb.B, ln.b);
    ln.C = sa * bb.C * sb.transpose();
    return ln;
}

void check_block_symmetry(const BipartiteBlocks& bb) {
    auto asym = [](const Matrix2d& m) { return std::abs(m(0, 1) - m(1, 0)); };
    const double scale = std::max({1.0, bb.A.cwiseAbs().maxCoeff(), bb.B.cwiseAbs().maxCoeff()});
    if (asym(bb.A) > 1e-10 * scale || asym(bb.B) > 1e-10 * scale)
        throw ValidationError("bipartite blocks: A and B must be symmetric");
    if (!bb.A.allFinite() || !bb.B.allFinite() || !bb.C.allFinite())
        throw ValidationError("bipartite blocks: non-finite entries");
}

}  // namespace

BipartiteBlocks BipartiteBlocks::from_cov(const MatrixXd& cov4) {
    if (cov4.rows() != 4 || cov4.cols() != 4) throw ValidationError("BipartiteBlocks: expected a 4x4 covariance");
    BipartiteBlocks bb;
    bb.A = cov4.topLeftCorner<2, 2>();
    bb.B = cov4.bottomRightCorner<2, 2>();
    bb.C = cov4.topRightCorner<2, 2>();
    return bb;
}

BipartiteBlocks BipartiteBlocks::from_state(const GaussianState& state, int mode_a, int mode_b) {
    if (mode_a == mode_b) throw ValidationError("BipartiteBlocks: modes must differ");
    return from_cov(state.reduced({mode_a, mode_b}).cov());
}

MatrixXd BipartiteBlocks::cov() const {
    MatrixXd v(4, 4);
    v << A, C, C.transpose(), B;
    return v;
}

void require_physical(const BipartiteBlocks& blocks) {
    check_block_symmetry(blocks);
    const double nu = symplectic_eigenvalues(blocks.cov()).front();
    if (nu < 0.5 - kPhysicalityTol) {
        std::ostringstream os;
        os.precision(12);
        os << "bipartite blocks are unphysical (smallest symplectic eigenvalue " << nu << ")";
        throw ValidationError(os.str());
    }
}

double lambda_sph(const BipartiteBlocks& bb) {
    require_physical(bb);
    const double da = bb.A.determinant(), db = bb.B.determinant(), dc = bb.C.determinant();
    const double q = 0.25 - std::abs(dc);
    const double tr = (bb.A * kJ * bb.C * kJ * bb.B * kJ * bb.C.transpose() * kJ).trace();
    return da * db + q * q - tr - 0.25 * (da + db);
}

namespace {

// Squared symplectic eigenvalues of the partial transpose, smaller first.
std::pair<double, double> pt_eigen_sq(const BipartiteBlocks& bb) {
    const double delta = bb.A.determinant() + bb.B.determinant() - 2.0 * bb.C.determinant();
    const double det_v = bb.cov().determinant();
    double disc = delta * delta - 4.0 * det_v;
    if (disc < -1e-10 * std::max(1.0, delta * delta)) {
        std::ostringstream os;
        os << "two_eta: negative discriminant " << disc << " (numerically degenerate blocks)";
        throw NumericalError(os.str());
    }
    disc = std::max(disc, 0.0);
    const double big = 0.5 * (delta + std::sqrt(disc));
    // det V / nu+^2 avoids the cancellation in (delta - sqrt(disc)) / 2.
    const double small = big > 0.0 ? std::max(det_v / big, 0.0) : 0.0;
    return {small, big};
}

}  // namespace

double two_eta(const BipartiteBlocks& bb) {
    require_physical(bb);
    return 2.0 * std::sqrt(pt_eigen_sq(bb).first);
}

StandardFormParams standard_form(const BipartiteBlocks& bb) {
    require_physical(bb);
    const LocalNormal ln = local_normal(bb);

    // Rotations R_A, R_B with R_A^T C R_B diagonal.
    Eigen::JacobiSVD<Matrix2d> svd(ln.C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix2d u = svd.matrixU(), v = svd.matrixV();
    if (u.determinant() < 0.0) u.col(1) *= -1.0;
    if (v.determinant() < 0.0) v.col(1) *= -1.0;
    Matrix2d diag = u.transpose() * ln.C * v;
    if (diag(0, 0) < 0.0) diag = -diag;  // rotate mode A by pi

    const double d = diag(0, 0);
    const double r_mag = std::abs(std::abs(diag(0, 0)) - std::abs(diag(1, 1)));
    const double r_off = std::max(std::abs(diag(0, 1)), std::abs(diag(1, 0)));
    const double r_sign = (d > 1e-8 && diag(1, 1) > 0.0) ? diag(1, 1) : 0.0;
    if (r_mag > 1e-8 || r_off > 1e-8 || r_sign > 1e-8) {
        std::ostringstream os;
        os << "standard_form: blocks not reducible to a I, b I, d diag(1,-1); residuals |d1|-|d2| = " << r_mag
           << ", off-diagonal = " << r_off << ", same-sign correlation = " << r_sign;
        throw ValidationError(os.str());
    }

    StandardFormParams p;
    p.a = ln.a;
    p.b = ln.b;
    p.d = d;
    if (p.b <= 0.5 + 1e-12) {
        p.tau = 0.0;
        p.eta_param = p.a;
        return p;
    }
    const double den = p.b * p.b - 1.0;
    if (std::abs(den) < 1e-12)
        throw NumericalError("standard_form: b^2 - 1 vanishes, tau is undefined at b = 1");
    p.tau = d * d / den;
    p.eta_param = p.a - p.b * d * d / den;
    return p;
}

CriteriaReport gaussian_discord(const BipartiteBlocks& bb) {
    require_physical(bb);
    const LocalNormal ln = local_normal(bb);
    const auto nu = symplectic_eigenvalues(bb.cov());

    // State of A conditioned on a heterodyne record of B.
    const Matrix2d cond = ln.a * Matrix2d::Identity() - ln.C * ln.C.transpose() / (ln.b + 0.5);
    const double e = std::sqrt(std::max(cond.determinant(), 0.25));

    CriteriaReport r;
    const double s_ab = entropy_h(nu[0]) + entropy_h(nu[1]);
    r.mutual_info = std::max(entropy_h(ln.a) + entropy_h(ln.b) - s_ab, 0.0);
    r.classical_corr = std::max(entropy_h(ln.a) - entropy_h(e), 0.0);
    r.discord = std::max(entropy_h(ln.b) - s_ab + entropy_h(e), 0.0);
    return r;
}

CriteriaReport evaluate(const BipartiteBlocks& bb) {
    CriteriaReport r = gaussian_discord(bb);
    r.lambda_sph = lambda_sph(bb);
    r.two_eta = two_eta(bb);
    const double nu_plus_sq = pt_eigen_sq(bb).second;
    r.entangled_by_ppt = r.two_eta < 1.0 - kVerdictTol;
    r.entangled_by_sph = r.lambda_sph < -0.5 * kVerdictTol * std::max(nu_plus_sq - 0.25, 0.0);
    return r;
}

}  // namespace qradar
