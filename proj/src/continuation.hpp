#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "qradar/error.hpp"

namespace qradar::detail {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int N>
using Mat = Eigen::Matrix<double, N, N>;

struct ContinuationResult {
    int iterations = 0;
};

// Tracks the root of f(x, s) = 0 from x0 at s = 0 to s = 1 by Newton steps on a
// self-adjusting s grid. `scale` sets the per-component size used by the
// convergence test and the step clamp.
template <int N, class F, class J>
Vec<N> track_root(F&& f, J&& jac, Vec<N> x, const Vec<N>& scale, ContinuationResult& info,
                  const char* what, int max_iterations = 10000) {
    double s = 0.0, ds = 0.01;
    int total = 0;
    while (s < 1.0) {
        const double s_try = std::min(1.0, s + ds);
        Vec<N> y = x;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            if (++total > max_iterations) {
                std::ostringstream os;
                os << what << ": no convergence after " << max_iterations << " iterations (last residual "
                   << f(y, s_try).norm() << " at drive fraction " << s_try << ")";
                throw NumericalError(os.str());
            }
            const Vec<N> r = f(y, s_try);
            const Mat<N> jm = jac(y, s_try);
            Vec<N> dx = jm.fullPivLu().solve(-r);
            if (!dx.allFinite()) break;
            for (int k = 0; k < N; ++k) dx(k) = std::clamp(dx(k), -0.25 * scale(k) - 0.25 * std::abs(y(k)),
                                                             0.25 * scale(k) + 0.25 * std::abs(y(k)));
            y += dx;
            bool small = true;
            for (int k = 0; k < N; ++k)
                if (std::abs(dx(k)) > 1e-13 * std::max(std::abs(y(k)), scale(k))) small = false;
            if (small) {
                ok = true;
                break;
            }
        }
        // Reject jumps to a distant branch as well as outright failures.
        bool jumped = false;
        for (int k = 0; k < N; ++k)
            if (std::abs(y(k) - x(k)) > 0.5 * std::max(std::abs(x(k)), scale(k))) jumped = true;
        if (ok && (!jumped || ds <= 1e-6)) {
            x = y;
            s = s_try;
            ds = std::min(0.05, ds * 1.5);
        } else {
            ds *= 0.5;
            if (ds < 1e-9) {
                std::ostringstream os;
                os << what << ": continuation stalled at drive fraction " << s
                   << " (bistable or turning point)";
                throw NumericalError(os.str());
            }
        }
    }
    info.iterations = total;
    return x;
}

}  // namespace qradar::detail
