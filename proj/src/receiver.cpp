#include "qradar/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/random/normal_distribution.hpp>

#include "qradar/error.hpp"
#include "qradar/parallel.hpp"

namespace qradar {

GaussianState tmsv_cm(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("tmsv_cm: r must be finite and >= 0");
    const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
    MatrixXd v = MatrixXd::Zero(4, 4);
    v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = c;
    v(0, 2) = v(2, 0) = s;
    v(1, 3) = v(3, 1) = -s;
    return GaussianState(v);
}

double correlation_coefficient(const GaussianState& state) {
    if (state.n_modes() < 2) throw ValidationError("correlation_coefficient: need two modes");
    const MatrixXd& v = state.cov();
    const double den = v(0, 0) * v(2, 2);
    if (!(den > 0.0)) throw NumericalError("correlation_coefficient: degenerate x variance");
    return v(0, 2) / std::sqrt(den);
}

Detector parse_detector(const std::string& name) {
    if (name == "covariance_detector") return Detector::covariance;
    if (name == "energy_detector") return Detector::energy;
    throw ValidationError("unknown detector '" + name + "' (expected covariance_detector or energy_detector)");
}

std::string to_string(Detector d) {
    return d == Detector::covariance ? "covariance_detector" : "energy_detector";
}

namespace {

void check_single_mode(const GaussianChannel& ch, const char* what) {
    if (ch.X.rows() != 2 || ch.X.cols() != 2 || ch.Y.rows() != 2 || ch.Y.cols() != 2)
        throw ValidationError(std::string("QiScenario: ") + what + " must be single-mode");
    if (!is_completely_positive(ch)) throw ValidationError(std::string("QiScenario: ") + what + " is not completely positive");
}

GaussianState coherent_pair(double alpha) {
    VectorXd m = VectorXd::Zero(4);
    m(0) = m(2) = std::sqrt(2.0) * alpha;
    return GaussianState(m, 0.5 * MatrixXd::Identity(4, 4));
}

std::vector<double> statistics(const GaussianState& joint, const QiScenario& s, std::uint64_t stream) {
    MatrixXd cov = joint.cov();
    if (s.heterodyne_noise) cov += 0.5 * MatrixXd::Identity(4, 4);
    const Eigen::Matrix4d l = cholesky_with_jitter(cov);
    const Eigen::Vector4d mean = joint.mean();
    const bool cov_det = s.detector == Detector::covariance;
    std::vector<double> out(static_cast<std::size_t>(s.n_decisions));
    parallel_for(out.size(), s.workers, [&](std::size_t d) {
        std::mt19937_64 rng(decision_seed(s.seed, d, stream));
        boost::random::normal_distribution<double> g(0.0, 1.0);
        double acc = 0.0;
        for (int k = 0; k < s.samples_per_decision; ++k) {
            Eigen::Vector4d z;
            for (int i = 0; i < 4; ++i) z(i) = g(rng);
            const Eigen::Vector4d y = mean + l.triangularView<Eigen::Lower>() * z;
            acc += cov_det ? y(0) * y(2) - y(1) * y(3) : y(0) * y(0) + y(1) * y(1);
        }
        out[d] = acc / s.samples_per_decision;
    });
    return out;
}

DetectionSamples run(const QiScenario& s, GaussianState (*joint)(const QiScenario&, bool)) {
    s.validate();
    DetectionSamples out;
    out.h0 = statistics(joint(s, false), s, 0);
    out.h1 = statistics(joint(s, true), s, 1);
    return out;
}

}  // namespace

void QiScenario::validate() const {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("QiScenario: r must be finite and >= 0");
    if (samples_per_decision < 1) throw ValidationError("QiScenario: samples_per_decision must be >= 1");
    if (n_decisions < 1) throw ValidationError("QiScenario: n_decisions must be >= 1");
    if (workers < 1) throw ValidationError("QiScenario: workers must be >= 1");
    check_single_mode(signal_channel, "signal channel");
    check_single_mode(background_channel, "background channel");
}

GaussianChannel thermal_replacement(double n_thermal) {
    if (!(n_thermal >= 0.0) || !std::isfinite(n_thermal))
        throw ValidationError("thermal_replacement: occupation must be finite and >= 0");
    return {MatrixXd::Zero(2, 2), (n_thermal + 0.5) * MatrixXd::Identity(2, 2), "thermal background"};
}

GaussianState qi_joint_state(const QiScenario& s, bool target_present) {
    return apply_channel(tmsv_cm(s.r), target_present ? s.signal_channel : s.background_channel, {0});
}

GaussianState ci_joint_state(const QiScenario& s, bool target_present) {
    return apply_channel(coherent_pair(std::sinh(s.r)), target_present ? s.signal_channel : s.background_channel,
                         {0});
}

DetectionSamples run_detection(const QiScenario& s) {
    return run(s, &qi_joint_state);
}

DetectionSamples ci_baseline(const QiScenario& s) {
    return run(s, &ci_joint_state);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t decision_seed(std::uint64_t seed, std::uint64_t decision, std::uint64_t stream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ decision);
}

RocCurve roc_curve(const std::vector<double>& h0, const std::vector<double>& h1) {
    if (h0.empty() || h1.empty()) throw ValidationError("roc_curve: both sample sets must be non-empty");
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(h0.size() + h1.size());
    for (double v : h0) pooled.emplace_back(v, 0);
    for (double v : h1) pooled.emplace_back(v, 1);
    for (const auto& e : pooled)
        if (!std::isfinite(e.first)) throw ValidationError("roc_curve: non-finite statistic");
    std::sort(pooled.begin(), pooled.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve c;
    const double n0 = static_cast<double>(h0.size()), n1 = static_cast<double>(h1.size());
    c.pfa.push_back(0.0);
    c.pd.push_back(0.0);
    c.thresholds.push_back(std::numeric_limits<double>::infinity());
    std::size_t k0 = 0, k1 = 0;
    for (std::size_t i = 0; i < pooled.size();) {
        const double t = pooled[i].first;
        for (; i < pooled.size() && pooled[i].first == t; ++i) (pooled[i].second ? k1 : k0)++;
        c.pfa.push_back(k0 / n0);
        c.pd.push_back(k1 / n1);
        c.thresholds.push_back(t);
    }
    for (std::size_t i = 1; i < c.pfa.size(); ++i)
        c.auc += (c.pfa[i] - c.pfa[i - 1]) * 0.5 * (c.pd[i] + c.pd[i - 1]);
    return c;
}

double RocCurve::pd_at(double x) const {
    if (pfa.empty()) throw ValidationError("RocCurve::pd_at: empty curve");
    if (x <= 0.0) return pd.front();
    if (x >= 1.0) return pd.back();
    const auto it = std::upper_bound(pfa.begin(), pfa.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - pfa.begin()) - 1;  // last pfa <= x
    if (pfa[k] == x || k + 1 >= pfa.size()) return pd[k];
    const double w = (x - pfa[k]) / (pfa[k + 1] - pfa[k]);
    return pd[k] + w * (pd[k + 1] - pd[k]);
}

}  // namespace qradar
