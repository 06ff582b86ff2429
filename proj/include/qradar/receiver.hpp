#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qradar/gaussian_core.hpp"

namespace qradar {

// cov = (1/2)[[cosh2r I, sinh2r Z], [sinh2r Z, cosh2r I]], Z = diag(1, -1). Mode 0 is the signal.
GaussianState tmsv_cm(double r);

// Cov(x_s, x_i) / sqrt(Var x_s Var x_i) between modes 0 and 1.
double correlation_coefficient(const GaussianState& state);

enum class Detector {
    covariance,  // t = mean(x_R x_I - p_R p_I)
    energy,      // t = mean(x_R^2 + p_R^2)
};
Detector parse_detector(const std::string& name);
std::string to_string(Detector d);

struct QiScenario {
    double r = 0.0;
    GaussianChannel signal_channel = GaussianChannel::identity(1);      // target present
    GaussianChannel background_channel = GaussianChannel::identity(1);  // target absent
    int samples_per_decision = 1;
    int n_decisions = 1;
    std::uint64_t seed = 0;
    Detector detector = Detector::covariance;
    bool heterodyne_noise = true;
    int workers = 1;

    void validate() const;
};

// Background channel that discards the signal and emits a thermal state.
GaussianChannel thermal_replacement(double n_thermal);

struct DetectionSamples {
    std::vector<double> h0, h1;
};

// Quantum illumination with a TMSV source.
DetectionSamples run_detection(const QiScenario& s);

// Coherent signal with |alpha|^2 = sinh^2 r and a coherent reference copy recorded by the
// same receiver. Uses the same per-decision normal draws as run_detection.
DetectionSamples ci_baseline(const QiScenario& s);

// Joint state (returned signal, idler or reference) under each hypothesis, before receiver noise.
GaussianState qi_joint_state(const QiScenario& s, bool target_present);
GaussianState ci_joint_state(const QiScenario& s, bool target_present);

// Counter-based stream seeds: identical for any evaluation order.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t decision_seed(std::uint64_t seed, std::uint64_t decision, std::uint64_t stream);

struct RocCurve {
    std::vector<double> pfa, pd, thresholds;  // from (0,0) to (1,1); thresholds[0] = +inf
    double auc = 0.0;

    // Linear interpolation of pd at a false-alarm probability.
    double pd_at(double pfa_value) const;
};

// Decide H1 when t >= threshold; threshold swept over the pooled sample values.
RocCurve roc_curve(const std::vector<double>& h0, const std::vector<double>& h1);

}  // namespace qradar
