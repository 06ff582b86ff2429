#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qradar/gaussian_core.hpp"

namespace qradar {

// Two-temperature line: cold section of length L0 at the far end, warm section of
// length L - L0 next to the output, whose emission reaches it unattenuated.
struct ThermalProfile {
    double n_in = 0.0;    // occupation of the cold section
    double n_out = 0.0;   // occupation of the warm section
    double mu_in = 0.0;   // 1/m
    double mu_out = 0.0;  // 1/m
    double L0 = 0.0;      // m
    double L = 1.0;       // m

    void validate() const;
};

double n_eff_closed(const ThermalProfile& profile);

using ProfileFn = std::function<double(double)>;

struct QuadratureOptions {
    // Points where mu or n may jump; integration is split there.
    std::vector<double> breakpoints;
    double tolerance = 1e-12;
    unsigned max_depth = 20;
};

// x runs from the line output (x = 0) to its far end (x = L).
double n_eff_general(const ProfileFn& mu, const ProfileFn& n, double L, const QuadratureOptions& opts = {});

// Step-profile mu(x), n(x) consistent with n_eff_closed, plus its breakpoint.
struct StepProfile {
    ProfileFn mu;
    ProfileFn n;
    double breakpoint;
};
StepProfile step_profile(const ThermalProfile& profile);

GaussianChannel attenuation_channel(double kappa_atm, double range_m, double n_env);
GaussianChannel target_channel(double kappa_t, double dz_t, double n_t);
GaussianChannel amplifier_channel(double gain_db, double added_noise);
GaussianChannel round_trip(const GaussianChannel& out, const GaussianChannel& target, const GaussianChannel& back);

// Named presets: fig10_atmosphere, fig10_target, quantum_limited_amp.
// n_thermal feeds the occupation of the bath the preset couples to.
GaussianChannel channel_preset(const std::string& name, double n_thermal);
std::vector<std::string> channel_preset_names();

// Power transmissivity of a single-mode phase-insensitive channel, X = sqrt(t) I.
double transmissivity(const GaussianChannel& ch);

}  // namespace qradar
