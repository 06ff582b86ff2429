#include "qradar/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

#include "qradar/channel.hpp"
#include "qradar/eom_converter.hpp"
#include "qradar/error.hpp"
#include "qradar/jpa.hpp"
#include "qradar/oe_converter.hpp"
#include "qradar/receiver.hpp"

namespace qradar {

using nlohmann::json;
namespace fs = std::filesystem;

std::string default_output_root() {
    const char* env = std::getenv(kOutputDirEnv);
    return env && *env ? std::string(env) : std::string("qradar_out");
}

std::string git_blob_sha1(const std::string& content) {
    const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
        throw Error("git_blob_sha1: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

// One CSV file held in memory until the run succeeds.
struct Table {
    std::string file;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string flag(bool b) {
    return b ? "1" : "0";
}

struct Artifacts {
    std::vector<Table> tables;
    json results = json::object();
};

// values XOR (start, stop, points); uniform grid includes both ends.
std::vector<double> grid(const ScenarioConfig& c, const std::string& values, const std::string& start,
                         const std::string& stop, const std::string& points, double stop_default = NAN) {
    const auto v = c.number_list(values);
    const bool uniform_given = c.explicit_keys.count(start) || c.explicit_keys.count(stop) ||
                               c.explicit_keys.count(points);
    if (!v.empty()) {
        if (uniform_given)
            throw ValidationError("give either '" + values + "' or '" + start + "'/'" + stop + "'/'" + points + "'");
        return v;
    }
    const json& a = c.parameters.at(start);
    const json& b = c.parameters.at(stop);
    const long long n = c.integer(points);
    if (a.is_null() || (b.is_null() && std::isnan(stop_default)) || n < 1)
        throw ValidationError("no grid: set '" + values + "' or '" + start + "', '" + stop + "' and '" + points +
                              "' (>= 1)");
    const double lo = a.get<double>(), hi = b.is_null() ? stop_default : b.get<double>();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

EomParams eom_params(const ScenarioConfig& c) {
    EomParams p;
    p.omega_m = c.number("omega_m_rad_s");
    p.omega_w = c.number("omega_w_rad_s");
    p.kappa_c = c.number("kappa_c_rad_s");
    p.gamma_m = c.number("gamma_m_rad_s");
    p.kappa_w = c.number("kappa_w_rad_s");
    p.delta_c = c.number("delta_c_rad_s");
    p.delta_w = c.number("delta_w_rad_s");
    p.G1 = c.number("G1_rad_s");
    p.G2 = c.number("G2");
    p.E_c = c.number("E_c_rad_s");
    p.E_w = c.number("E_w_rad_s");
    p.T = c.number("T_K");
    p.lambda_L = c.number("lambda_L_m");
    p.lambda_ref = c.number("lambda_ref_m");
    p.layout = c.string("layout") == "as_printed" ? EomCouplingLayout::as_printed : EomCouplingLayout::corrected;
    p.validate();
    return p;
}

OeParams oe_params(const ScenarioConfig& c) {
    OeParams p;
    p.delta_c = c.number("delta_c_rad_s");
    p.delta_w = c.number("delta_w_rad_s");
    p.delta_eg = c.number("delta_eg_rad_s");
    p.kappa_c = c.number("kappa_c_rad_s");
    p.kappa_w = c.number("kappa_w_rad_s");
    p.gamma_p = c.number("gamma_p_rad_s");
    p.g_op = c.number("g_op_rad_s");
    p.g_wp_per_mu_c = c.number("g_wp_per_mu_c_rad_s");
    p.mu_c = c.number("mu_c");
    p.E_c = c.number("E_c_rad_s");
    p.E_w = c.number("E_w_rad_s");
    p.T_c = c.number("T_c_K");
    p.omega_c = c.number("omega_c_rad_s");
    p.omega_w = c.number("omega_w_rad_s");
    p.variant = c.string("variant") == "as_printed" ? OeDriftVariant::as_printed : OeDriftVariant::consistent;
    p.validate();
    return p;
}

EomAxis eom_axis(const std::string& key) {
    if (key == "T_K") return EomAxis::temperature;
    if (key == "lambda_L_m") return EomAxis::wavelength;
    return EomAxis::gamma_m;
}

std::vector<double> eom_grid(const ScenarioConfig& c) {
    return grid(c, "sweep_values", "sweep_start", "sweep_stop", "sweep_points");
}

std::vector<double> oe_detuning_grid(const ScenarioConfig& c) {
    return grid(c, "delta_eg_values_rad_s", "delta_eg_start_rad_s", "delta_eg_stop_rad_s", "delta_eg_points");
}

std::vector<double> oe_temperature_grid(const ScenarioConfig& c) {
    return grid(c, "T_c_values_K", "T_c_start_K", "T_c_stop_K", "T_c_points");
}

EndToEndSpec end_to_end_spec(const ScenarioConfig& c) {
    EndToEndSpec s;
    s.kappa_atm = c.number("kappa_atm_per_m");
    s.range_m = c.number("range_m");
    s.kappa_t = c.number("kappa_t_per_m");
    s.dz_t = c.number("dz_t_m");
    s.n_env = c.number("n_env");
    s.n_target = c.number("n_target");
    return s;
}

ThermalProfile neff_profile(const ScenarioConfig& c) {
    ThermalProfile p;
    p.n_in = c.number("n_in");
    p.n_out = c.number("n_out");
    p.mu_in = c.number("mu_in_per_m");
    p.mu_out = c.number("mu_out_per_m");
    p.L = c.number("L_m");
    p.L0 = 0.0;
    p.validate();
    return p;
}

std::vector<double> neff_grid(const ScenarioConfig& c) {
    const auto g = grid(c, "L0_values_m", "L0_start_m", "L0_stop_m", "L0_points", c.number("L_m"));
    for (double v : g)
        if (v < 0.0 || v > c.number("L_m")) throw ValidationError("L0 grid values must lie in [0, L_m]");
    return g;
}

QiScenario qi_scenario(const ScenarioConfig& c, int workers) {
    QiScenario s;
    s.r = std::asinh(std::sqrt(c.number("signal_photons")));
    const double tau = c.number("transmissivity"), nb = c.number("n_background");
    // Environment occupation nb / (1 - tau): the return carries nb background photons under either hypothesis.
    s.signal_channel = {std::sqrt(tau) * MatrixXd::Identity(2, 2), (nb + 0.5 * (1.0 - tau)) * MatrixXd::Identity(2, 2),
                        "lossy return"};
    s.background_channel = thermal_replacement(nb);
    if (c.string("receiver_preset") != "none") {
        const GaussianChannel amp = channel_preset(c.string("receiver_preset"), 0.0);
        s.signal_channel = compose(s.signal_channel, amp);
        s.background_channel = compose(s.background_channel, amp);
    }
    s.samples_per_decision = static_cast<int>(c.integer("samples_per_decision"));
    s.n_decisions = static_cast<int>(c.integer("n_decisions"));
    s.seed = c.seed;
    s.detector = parse_detector(c.string("detector"));
    s.heterodyne_noise = c.boolean("heterodyne_noise");
    s.workers = workers;
    s.validate();
    return s;
}

void check_jpa_gain(const ScenarioConfig& c) {
    if (!(c.number("lambda1_max_fraction") < 0.5))
        throw ValidationError("'lambda1_max_fraction' must be < 0.5");
    if (!(c.number("omega_stop_rad_s") > c.number("omega_start_rad_s")))
        throw ValidationError("'omega_stop_rad_s' must exceed 'omega_start_rad_s'");
}

// Cross-field checks that need more than the per-key schema.
void check_semantics(const ScenarioConfig& c) {
    switch (c.kind) {
        case ScenarioKind::eom_sweep: eom_params(c); eom_grid(c); break;
        case ScenarioKind::oe_sweep: oe_params(c); oe_detuning_grid(c); break;
        case ScenarioKind::oe_end_to_end: oe_params(c); oe_temperature_grid(c); end_to_end_spec(c); break;
        case ScenarioKind::jpa_gain: check_jpa_gain(c); break;
        case ScenarioKind::jpa_wigner:
            if (c.number_list("g_values").empty()) throw ValidationError("'g_values' must not be empty");
            break;
        case ScenarioKind::channel_neff: neff_profile(c); neff_grid(c); break;
        case ScenarioKind::qi_roc: qi_scenario(c, 1); break;
    }
}

Artifacts run_eom(const ScenarioConfig& c, int workers) {
    const EomParams p = eom_params(c);
    const std::string axis_key = c.string("sweep_axis");
    const auto rows = sweep(p, eom_axis(axis_key), eom_grid(c), workers);
    Artifacts a;
    Table t{"sweep.csv", {"axis_value", "lambda_sph_oc_mc", "lambda_sph_oc_mr", "lambda_sph_mr_mc", "stable_flag"}, {}};
    int unstable = 0;
    for (const auto& r : rows) {
        t.add({csv_number(r.x), csv_number(r.lambda_oc_mc), csv_number(r.lambda_oc_mr), csv_number(r.lambda_mr_mc),
               flag(r.stable)});
        unstable += !r.stable;
    }
    a.tables.push_back(std::move(t));
    a.results["sweep_axis"] = axis_key;
    a.results["points"] = rows.size();
    a.results["unstable_points"] = unstable;
    if (c.boolean("find_threshold"))
        a.results["threshold_temperature_K"] =
            threshold_temperature(p, c.number("threshold_max_K"), c.number("threshold_resolution_K"));
    return a;
}

Artifacts run_oe_sweep(const ScenarioConfig& c, int workers) {
    const OeParams p = oe_params(c);
    const DetuningCurve curve = entanglement_vs_detuning(p, oe_detuning_grid(c), workers);
    Artifacts a;
    Table t{"detuning.csv", {"delta_eg_rad_s", "two_eta", "stable_flag"}, {}};
    for (const auto& r : curve.rows) t.add({csv_number(r.delta_eg), csv_number(r.two_eta), flag(r.stable)});
    a.tables.push_back(std::move(t));
    a.results["points"] = curve.rows.size();
    if (curve.argmin >= 0) {
        a.results["argmin_delta_eg_rad_s"] = curve.rows[curve.argmin].delta_eg;
        a.results["min_two_eta"] = curve.rows[curve.argmin].two_eta;
    } else {
        a.results["argmin_delta_eg_rad_s"] = nullptr;
        a.results["min_two_eta"] = nullptr;
    }
    if (c.boolean("find_threshold"))
        a.results["threshold_temperature_K"] =
            threshold_temperature(p, c.number("threshold_max_K"), c.number("threshold_resolution_K"));
    return a;
}

Artifacts run_oe_end_to_end(const ScenarioConfig& c, int workers) {
    const OeParams p = oe_params(c);
    const EndToEndSpec spec = end_to_end_spec(c);
    const auto rows = temperature_sweep(p, spec, oe_temperature_grid(c), workers);
    Artifacts a;
    Table t{"temperature.csv", {"T_c_K", "two_eta_direct", "two_eta_backscatter"}, {}};
    int unstable = 0;
    for (const auto& r : rows) {
        t.add({csv_number(r.T_c), csv_number(r.two_eta_direct), csv_number(r.two_eta_backscatter)});
        unstable += !r.stable;
    }
    a.tables.push_back(std::move(t));
    a.results["points"] = rows.size();
    a.results["unstable_points"] = unstable;
    a.results["round_trip_transmissivity"] = end_to_end_report(p, spec).round_trip_transmissivity;
    if (c.boolean("find_threshold")) {
        const double tmax = c.number("threshold_max_K"), res = c.number("threshold_resolution_K");
        a.results["threshold_direct_K"] = threshold_temperature(p, tmax, res);
        a.results["threshold_backscatter_K"] = threshold_temperature_end_to_end(p, spec, tmax, res);
    }
    return a;
}

Artifacts run_jpa_gain(const ScenarioConfig& c) {
    check_jpa_gain(c);
    const double kappa = c.number("kappa_rad_s"), d0 = c.number("Delta0_rad_s");
    const cplx l1 = std::polar(c.number("lambda1_abs_rad_s"), c.number("lambda1_phase_rad"));
    Artifacts a;
    Table tw{"gain_vs_omega.csv", {"omega_rad_s", "signal_gain", "idler_gain", "bogoliubov_residual"}, {}};
    const double w0 = c.number("omega_start_rad_s"), w1 = c.number("omega_stop_rad_s");
    const long long nw = c.integer("omega_points");
    double worst = 0.0;
    for (long long i = 0; i < nw; ++i) {
        const double w = w0 + (w1 - w0) * static_cast<double>(i) / (nw - 1);
        const Eigen::Matrix2cd s = scattering_matrix(kappa, d0, l1, w);
        const double res = std::norm(s(0, 0)) - std::norm(s(0, 1)) - 1.0;
        worst = std::max(worst, std::abs(res));
        tw.add({csv_number(w), csv_number(std::abs(s(0, 0))), csv_number(std::abs(s(0, 1))), csv_number(res)});
    }
    Table tl{"gain_vs_lambda1.csv", {"lambda1_abs_rad_s", "signal_gain", "idler_gain"}, {}};
    const long long nl = c.integer("lambda1_points");
    const double lmax = c.number("lambda1_max_fraction") * kappa;
    for (long long i = 0; i < nl; ++i) {
        const double l = lmax * static_cast<double>(i) / (nl - 1);
        const Eigen::Matrix2cd s = scattering_matrix(kappa, d0, std::polar(l, std::arg(l1)), 0.0);
        tl.add({csv_number(l), csv_number(std::abs(s(0, 0))), csv_number(std::abs(s(0, 1)))});
    }
    a.tables.push_back(std::move(tw));
    a.tables.push_back(std::move(tl));
    a.results["signal_gain_at_omega0"] = std::abs(scattering_matrix(kappa, d0, l1, 0.0)(0, 0));
    a.results["max_bogoliubov_residual"] = worst;
    return a;
}

Artifacts run_jpa_wigner(const ScenarioConfig& c) {
    WignerSweepOptions o;
    o.kappa = c.number("kappa_rad_s");
    o.pump_phase = c.number("pump_phase_rad");
    o.n_sigma = c.number("n_sigma");
    o.points_per_axis = static_cast<int>(c.integer("points_per_axis"));
    const auto g = c.number_list("g_values");
    if (g.empty()) throw ValidationError("'g_values' must not be empty");
    const auto samples = wigner_sweep(g, o);
    Artifacts a;
    json per = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        Table t{"wigner_" + std::to_string(i) + ".csv", {"q", "p", "W"}, {}};
        for (std::size_t k = 0; k < s.field.w.size(); ++k)
            t.add({csv_number(s.field.q[k]), csv_number(s.field.p[k]), csv_number(s.field.w[k])});
        a.tables.push_back(std::move(t));
        per.push_back({{"g", s.g},
                       {"file", "wigner_" + std::to_string(i) + ".csv"},
                       {"normalization", s.field.riemann_sum()},
                       {"minor_variance", s.minor_variance},
                       {"major_variance", s.major_variance},
                       {"squeezed_axis_angle_rad", s.axis_angle}});
    }
    a.results["states"] = per;
    return a;
}

Artifacts run_channel_neff(const ScenarioConfig& c) {
    ThermalProfile p = neff_profile(c);
    Artifacts a;
    Table t{"neff.csv", {"L0_m", "n_eff_closed", "n_eff_general"}, {}};
    double worst = 0.0;
    for (double l0 : neff_grid(c)) {
        p.L0 = l0;
        const double closed = n_eff_closed(p);
        const StepProfile sp = step_profile(p);
        QuadratureOptions q;
        q.breakpoints = {sp.breakpoint};
        const double general = n_eff_general(sp.mu, sp.n, p.L, q);
        worst = std::max(worst, std::abs(general - closed));
        t.add({csv_number(l0), csv_number(closed), csv_number(general)});
    }
    a.tables.push_back(std::move(t));
    a.results["max_abs_difference"] = worst;
    return a;
}

Artifacts run_qi_roc(const ScenarioConfig& c, int workers) {
    const QiScenario s = qi_scenario(c, workers);
    const DetectionSamples qi = run_detection(s);
    const DetectionSamples ci = ci_baseline(s);
    const RocCurve rq = roc_curve(qi.h0, qi.h1);
    const RocCurve rc = roc_curve(ci.h0, ci.h1);

    Artifacts a;
    Table t{"roc.csv", {"curve", "threshold", "pfa", "pd"}, {}};
    for (std::size_t i = 0; i < rq.pfa.size(); ++i)
        t.add({"qi", csv_number(rq.thresholds[i]), csv_number(rq.pfa[i]), csv_number(rq.pd[i])});
    for (std::size_t i = 0; i < rc.pfa.size(); ++i)
        t.add({"ci", csv_number(rc.thresholds[i]), csv_number(rc.pfa[i]), csv_number(rc.pd[i])});
    a.tables.push_back(std::move(t));

    const GaussianState h1 = qi_joint_state(s, true);
    const MatrixXd draws = sample(h1, static_cast<int>(c.integer("rho_samples")), decision_seed(s.seed, 0, 2));
    const Eigen::VectorXd xr = draws.col(0).array() - draws.col(0).mean();
    const Eigen::VectorXd xi = draws.col(2).array() - draws.col(2).mean();
    const double rho_emp = xr.dot(xi) / std::sqrt(xr.squaredNorm() * xi.squaredNorm());

    // Dominance on an interior false-alarm grid, with a 3-sigma binomial band.
    const long long np = c.integer("pfa_points");
    double min_margin = std::numeric_limits<double>::infinity();
    bool dominates = true;
    const double n1 = s.n_decisions;
    for (long long i = 1; i <= np; ++i) {
        const double x = static_cast<double>(i) / (np + 1);
        const double pq = rq.pd_at(x), pc = rc.pd_at(x);
        const double band = 3.0 * std::sqrt((pq * (1 - pq) + pc * (1 - pc)) / n1);
        min_margin = std::min(min_margin, pq - pc);
        if (pq < pc - band) dominates = false;
    }
    a.results["auc_qi"] = rq.auc;
    a.results["auc_ci"] = rc.auc;
    a.results["rho_analytic"] = correlation_coefficient(h1);
    a.results["rho_empirical"] = rho_emp;
    a.results["squeezing_r"] = s.r;
    a.results["min_pd_margin_qi_minus_ci"] = min_margin;
    a.results["qi_dominates_ci"] = dominates;
    return a;
}

Artifacts dispatch(const ScenarioConfig& c, int workers) {
    switch (c.kind) {
        case ScenarioKind::eom_sweep: return run_eom(c, workers);
        case ScenarioKind::oe_sweep: return run_oe_sweep(c, workers);
        case ScenarioKind::oe_end_to_end: return run_oe_end_to_end(c, workers);
        case ScenarioKind::jpa_gain: return run_jpa_gain(c);
        case ScenarioKind::jpa_wigner: return run_jpa_wigner(c);
        case ScenarioKind::channel_neff: return run_channel_neff(c);
        case ScenarioKind::qi_roc: return run_qi_roc(c, workers);
    }
    throw ValidationError("unhandled kind");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    f << text;
    if (!f) throw Error("write failed: " + path.string());
}

std::string render(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += r[i];
        }
        out += '\n';
    }
    return out;
}

json inputs_echo(const ScenarioConfig& c) {
    return {{"format_version", c.format_version},
            {"kind", to_string(c.kind)},
            {"name", c.name},
            {"description", c.description},
            {"seed", c.seed},
            {"parameters", c.parameters}};
}

std::string resolve_output_dir(const ScenarioConfig* c, const RunOptions& o) {
    if (!o.output_dir.empty()) return o.output_dir;
    if (c && !c->output_dir.empty()) return c->output_dir;
    return (fs::path(default_output_root()) / (c ? c->name : std::string("invalid"))).string();
}

void write_failure(RunOutcome& out, const json& summary) {
    try {
        fs::create_directories(out.output_dir);
        write_text(fs::path(out.output_dir) / "summary.json", summary.dump(2) + "\n");
        out.files.push_back("summary.json");
    } catch (const std::exception&) {
        // Reported through the exit code and stderr only.
    }
}

}  // namespace

std::vector<std::string> validate_config(const std::string& text) {
    ConfigParseResult r = parse_config(text);
    if (!r.ok()) return r.errors;
    try {
        check_semantics(*r.config);
    } catch (const Error& e) {
        return {e.what()};
    }
    return {};
}

RunOutcome run_scenario(const ScenarioConfig& c, const RunOptions& o) {
    RunOutcome out;
    out.output_dir = resolve_output_dir(&c, o);
    const int workers = o.parallelism > 0 ? o.parallelism : c.parallelism;
    json summary = {{"format_version", kFormatVersion},
                    {"kind", to_string(c.kind)},
                    {"name", c.name},
                    {"status", "ok"},
                    {"error", ""},
                    {"config_sha1", git_blob_sha1(c.source_text)},
                    {"inputs", inputs_echo(c)}};
    const auto t0 = std::chrono::steady_clock::now();
    Artifacts art;
    try {
        check_semantics(c);
        art = dispatch(c, workers);
    } catch (const ValidationError& e) {
        out.exit_code = kExitValidation;
        out.status = "validation_error";
        out.error = e.what();
    } catch (const NumericalError& e) {
        out.exit_code = kExitNumerical;
        out.status = "numerical_error";
        out.error = e.what();
    }
    if (out.exit_code != kExitOk) {
        summary["status"] = out.status;
        summary["error"] = out.error;
        write_failure(out, summary);
        return out;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(out.output_dir);
    json outputs = json::array();
    for (const auto& t : art.tables) {
        write_text(fs::path(out.output_dir) / t.file, render(t));
        out.files.push_back(t.file);
        outputs.push_back({{"file", t.file}, {"columns", t.columns}, {"rows", t.rows.size()},
                           {"format_version", kFormatVersion}});
    }
    summary["outputs"] = outputs;
    summary["results"] = art.results;
    write_text(fs::path(out.output_dir) / "summary.json", summary.dump(2) + "\n");
    out.files.push_back("summary.json");
    const json timing = {{"format_version", kFormatVersion}, {"wall_time_s", wall}, {"parallelism", workers}};
    write_text(fs::path(out.output_dir) / "timing.json", timing.dump(2) + "\n");
    out.files.push_back("timing.json");
    out.status = "ok";
    return out;
}

RunOutcome run_config(const std::string& text, const RunOptions& o) {
    ConfigParseResult r = parse_config(text);
    if (r.ok()) return run_scenario(*r.config, o);
    RunOutcome out;
    out.exit_code = kExitValidation;
    out.status = "validation_error";
    for (std::size_t i = 0; i < r.errors.size(); ++i) out.error += (i ? "\n" : "") + r.errors[i];
    if (!o.output_dir.empty()) {
        out.output_dir = o.output_dir;
        json errors = r.errors;
        write_failure(out, {{"format_version", kFormatVersion},
                            {"status", out.status},
                            {"error", out.error},
                            {"errors", errors},
                            {"config_sha1", git_blob_sha1(text)}});
    }
    return out;
}

}  // namespace qradar
