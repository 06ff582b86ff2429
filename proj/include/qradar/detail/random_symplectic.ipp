#pragma once

#include <cmath>
#include <complex>
#include <random>

namespace qradar {

namespace detail {

// Haar-ish random unitary from QR of a complex Ginibre matrix, mapped to the
// orthogonal symplectic [[Re U, -Im U], [Im U, Re U]] in interleaved ordering.
template <class Rng>
MatrixXd random_passive(int n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd u = qr.householderQ();
    MatrixXd o(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = u(i, j).real(), im = u(i, j).imag();
            o(2 * i, 2 * j) = re;
            o(2 * i, 2 * j + 1) = -im;
            o(2 * i + 1, 2 * j) = im;
            o(2 * i + 1, 2 * j + 1) = re;
        }
    return o;
}

}  // namespace detail

template <class Rng>
MatrixXd random_symplectic(int n_modes, Rng& rng, double max_squeeze) {
    std::uniform_real_distribution<double> u(-max_squeeze, max_squeeze);
    MatrixXd sq = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double s = u(rng);
        sq(2 * k, 2 * k) = std::exp(-s);
        sq(2 * k + 1, 2 * k + 1) = std::exp(s);
    }
    return detail::random_passive(n_modes, rng) * sq * detail::random_passive(n_modes, rng);
}

}  // namespace qradar
