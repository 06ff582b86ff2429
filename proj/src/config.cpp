#include "qradar/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qradar/eom_converter.hpp"
#include "qradar/error.hpp"
#include "qradar/oe_converter.hpp"

namespace qradar {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::pair<ScenarioKind, std::string>>& kind_table() {
    static const std::vector<std::pair<ScenarioKind, std::string>> t = {
        {ScenarioKind::eom_sweep, "eom_sweep"},       {ScenarioKind::oe_sweep, "oe_sweep"},
        {ScenarioKind::oe_end_to_end, "oe_end_to_end"}, {ScenarioKind::jpa_gain, "jpa_gain"},
        {ScenarioKind::jpa_wigner, "jpa_wigner"},     {ScenarioKind::channel_neff, "channel_neff"},
        {ScenarioKind::qi_roc, "qi_roc"},
    };
    return t;
}

FieldSpec num(std::string key, json def, std::string doc, double min = -kInf, double max = kInf, bool excl = false) {
    FieldSpec f;
    f.key = std::move(key);
    f.type = FieldType::number;
    f.default_value = std::move(def);
    f.min = min;
    f.max = max;
    f.min_exclusive = excl;
    f.doc = std::move(doc);
    return f;
}

FieldSpec integer(std::string key, json def, std::string doc, double min = -kInf, double max = kInf) {
    FieldSpec f = num(std::move(key), std::move(def), std::move(doc), min, max);
    f.type = FieldType::integer;
    return f;
}

FieldSpec boolean(std::string key, bool def, std::string doc) {
    FieldSpec f;
    f.key = std::move(key);
    f.type = FieldType::boolean;
    f.default_value = def;
    f.doc = std::move(doc);
    return f;
}

FieldSpec choice(std::string key, std::string def, std::vector<std::string> choices, std::string doc) {
    FieldSpec f;
    f.key = std::move(key);
    f.type = FieldType::string;
    f.default_value = std::move(def);
    f.choices = std::move(choices);
    f.doc = std::move(doc);
    return f;
}

FieldSpec list(std::string key, std::string doc, double min = -kInf) {
    FieldSpec f;
    f.key = std::move(key);
    f.type = FieldType::number_list;
    f.default_value = json::array();
    f.min = min;
    f.doc = std::move(doc);
    return f;
}

std::vector<FieldSpec> eom_fields() {
    const EomParams r = EomParams::reference();
    return {
        num("omega_m_rad_s", r.omega_m, "mechanical frequency", 0.0, kInf, true),
        num("omega_w_rad_s", r.omega_w, "microwave carrier, sets N(omega_w, T)", 0.0, kInf, true),
        num("kappa_c_rad_s", r.kappa_c, "optical cavity damping", 0.0),
        num("gamma_m_rad_s", r.gamma_m, "mechanical damping", 0.0),
        num("kappa_w_rad_s", r.kappa_w, "microwave cavity damping", 0.0),
        num("delta_c_rad_s", r.delta_c, "optical detuning"),
        num("delta_w_rad_s", r.delta_w, "microwave detuning"),
        num("G1_rad_s", r.G1, "optomechanical coupling at lambda_ref_m", 0.0),
        num("G2", r.G2, "electromechanical coupling, dimensionless", 0.0),
        num("E_c_rad_s", r.E_c, "optical drive at lambda_ref_m", 0.0),
        num("E_w_rad_s", r.E_w, "microwave drive", 0.0),
        num("T_K", r.T, "bath temperature", 0.0),
        num("lambda_L_m", r.lambda_L, "drive wavelength", 0.0, kInf, true),
        num("lambda_ref_m", r.lambda_ref, "wavelength at which G1 and E_c are quoted", 0.0, kInf, true),
        choice("layout", "corrected", {"corrected", "as_printed"}, "drift-matrix coupling layout"),
        choice("sweep_axis", "T_K", {"T_K", "lambda_L_m", "gamma_m_rad_s"}, "parameter swept; values in its unit"),
        list("sweep_values", "explicit grid (excludes sweep_start/stop/points)"),
        num("sweep_start", nullptr, "grid start", -kInf),
        num("sweep_stop", nullptr, "grid stop", -kInf),
        integer("sweep_points", 0, "uniform grid size, 0 when sweep_values is used", 0),
        boolean("find_threshold", false, "bisect the OC-MC separability temperature"),
        num("threshold_max_K", 5.0, "upper end of the threshold search", 0.0, kInf, true),
        num("threshold_resolution_K", 1e-3, "bisection resolution", 0.0, kInf, true),
    };
}

std::vector<FieldSpec> oe_fields() {
    const OeParams r = OeParams::reference();
    return {
        num("delta_c_rad_s", r.delta_c, "optical detuning"),
        num("delta_w_rad_s", r.delta_w, "microwave detuning"),
        num("delta_eg_rad_s", r.delta_eg, "photodetector detuning omega_eg - omega_c"),
        num("kappa_c_rad_s", r.kappa_c, "optical cavity damping", 0.0),
        num("kappa_w_rad_s", r.kappa_w, "microwave cavity damping", 0.0),
        num("gamma_p_rad_s", r.gamma_p, "photodetector damping", 0.0),
        num("g_op_rad_s", r.g_op, "optical-photodetector coupling", 0.0),
        num("g_wp_per_mu_c_rad_s", r.g_wp_per_mu_c, "microwave-photodetector coupling per unit mu_c", 0.0),
        num("mu_c", r.mu_c, "varactor modulation depth, dimensionless", 0.0),
        num("E_c_rad_s", r.E_c, "optical drive", 0.0),
        num("E_w_rad_s", r.E_w, "microwave drive", 0.0),
        num("T_c_K", r.T_c, "bath temperature", 0.0),
        num("omega_c_rad_s", r.omega_c, "optical carrier", 0.0, kInf, true),
        num("omega_w_rad_s", r.omega_w, "microwave carrier", 0.0, kInf, true),
        choice("variant", "consistent", {"consistent", "as_printed"}, "drift-matrix variant"),
    };
}

std::vector<FieldSpec> build_schema(ScenarioKind k) {
    std::vector<FieldSpec> f;
    auto add = [&](std::vector<FieldSpec> more) { f.insert(f.end(), more.begin(), more.end()); };
    switch (k) {
        case ScenarioKind::eom_sweep:
            add(eom_fields());
            break;
        case ScenarioKind::oe_sweep:
            add(oe_fields());
            add({
                list("delta_eg_values_rad_s", "explicit detuning grid"),
                num("delta_eg_start_rad_s", nullptr, "grid start"),
                num("delta_eg_stop_rad_s", nullptr, "grid stop"),
                integer("delta_eg_points", 0, "uniform grid size, 0 when delta_eg_values_rad_s is used", 0),
                boolean("find_threshold", false, "bisect the OC-MC separability temperature at delta_eg_rad_s"),
                num("threshold_max_K", 10.0, "upper end of the threshold search", 0.0, kInf, true),
                num("threshold_resolution_K", 1e-3, "bisection resolution", 0.0, kInf, true),
            });
            break;
        case ScenarioKind::oe_end_to_end:
            add(oe_fields());
            add({
                num("kappa_atm_per_m", 2e-6, "atmospheric attenuation", 0.0),
                num("range_m", 20.0, "transmitter-target distance", 0.0),
                num("kappa_t_per_m", 18.2, "target attenuation", 0.0),
                num("dz_t_m", 0.01, "target thickness", 0.0, kInf, true),
                num("n_env", -1.0, "atmospheric occupation; negative ties it to N(omega_w, T_c)"),
                num("n_target", -1.0, "target occupation; negative ties it to N(omega_w, T_c)"),
                list("T_c_values_K", "explicit temperature grid", 0.0),
                num("T_c_start_K", nullptr, "grid start", 0.0),
                num("T_c_stop_K", nullptr, "grid stop", 0.0),
                integer("T_c_points", 0, "uniform grid size, 0 when T_c_values_K is used", 0),
                boolean("find_threshold", false, "bisect direct and backscatter thresholds"),
                num("threshold_max_K", 10.0, "upper end of the threshold search", 0.0, kInf, true),
                num("threshold_resolution_K", 1e-3, "bisection resolution", 0.0, kInf, true),
            });
            break;
        case ScenarioKind::jpa_gain:
            add({
                num("kappa_rad_s", 1.0, "total damping", 0.0, kInf, true),
                num("Delta0_rad_s", 0.0, "effective detuning"),
                num("lambda1_abs_rad_s", 0.25, "pump-induced coupling |lambda1|", 0.0),
                num("lambda1_phase_rad", 0.0, "arg lambda1"),
                num("omega_start_rad_s", -2.0, "gain-vs-omega grid start"),
                num("omega_stop_rad_s", 2.0, "gain-vs-omega grid stop"),
                integer("omega_points", 201, "gain-vs-omega grid size", 2),
                num("lambda1_max_fraction", 0.49, "gain-vs-|lambda1| grid end as a fraction of kappa", 0.0, 0.5,
                    true),
                integer("lambda1_points", 50, "gain-vs-|lambda1| grid size", 2),
            });
            break;
        case ScenarioKind::jpa_wigner:
            add({
                num("kappa_rad_s", 1.0, "total damping", 0.0, kInf, true),
                num("pump_phase_rad", 0.0, "arg lambda1"),
                {"g_values", FieldType::number_list, json::array({0.3, 0.4, 0.499}), 0.0, 0.5, false, {},
                 "g = |lambda1| / kappa, each in [0, 0.5)"},
                num("n_sigma", 6.0, "grid half-width in standard deviations", 0.0, kInf, true),
                integer("points_per_axis", 241, "grid points per principal axis", 3),
            });
            break;
        case ScenarioKind::channel_neff:
            add({
                num("n_in", 0.0, "occupation of the cold section", 0.0),
                num("n_out", 600.0, "occupation of the warm section", 0.0),
                num("mu_in_per_m", 0.5, "attenuation of the cold section", 0.0),
                num("mu_out_per_m", 0.5, "attenuation of the warm section", 0.0),
                num("L_m", 1.0, "line length", 0.0, kInf, true),
                list("L0_values_m", "explicit cold-length grid", 0.0),
                num("L0_start_m", 0.0, "grid start", 0.0),
                num("L0_stop_m", 1.0, "grid stop", 0.0),
                integer("L0_points", 11, "uniform grid size, ignored when L0_values_m is given", 0),
            });
            break;
        case ScenarioKind::qi_roc:
            add({
                num("signal_photons", 0.01, "mean signal photon number sinh^2 r", 0.0),
                num("transmissivity", 0.1, "round-trip power transmissivity under H1", 0.0, 1.0, true),
                num("n_background", 10.0, "background occupation at the receiver", 0.0),
                integer("samples_per_decision", 5000, "quadrature records per decision", 1),
                integer("n_decisions", 10000, "decisions per hypothesis", 1),
                choice("detector", "covariance_detector", {"covariance_detector", "energy_detector"},
                       "decision statistic"),
                boolean("heterodyne_noise", true, "add the heterodyne vacuum to every record"),
                choice("receiver_preset", "none", {"none", "quantum_limited_amp"},
                       "amplifier chain applied to the return under both hypotheses"),
                integer("rho_samples", 100000, "raw draws for the empirical correlation coefficient", 2),
                integer("pfa_points", 99, "interior false-alarm grid for the dominance summary", 1),
            });
            break;
    }
    return f;
}

std::string type_name(FieldType t) {
    switch (t) {
        case FieldType::number: return "number";
        case FieldType::integer: return "integer";
        case FieldType::boolean: return "boolean";
        case FieldType::string: return "string";
        case FieldType::number_list: return "array of numbers";
    }
    return "?";
}

std::vector<std::string> keys_of(const std::vector<FieldSpec>& fields) {
    std::vector<std::string> k;
    for (const auto& f : fields) k.push_back(f.key);
    return k;
}

std::string unknown_key_message(const std::string& path, const std::string& key,
                                const std::vector<std::string>& valid) {
    std::string m = "unknown key '" + path + key + "'";
    const std::string near = nearest_key(key, valid);
    if (!near.empty()) m += " (did you mean '" + near + "'?)";
    return m;
}

bool range_ok(const FieldSpec& f, double v) {
    if (f.min_exclusive ? !(v > f.min) : !(v >= f.min)) return false;
    return v <= f.max;
}

std::string range_text(const FieldSpec& f) {
    std::ostringstream os;
    os.precision(17);
    if (std::isfinite(f.min)) os << (f.min_exclusive ? "> " : ">= ") << f.min;
    if (std::isfinite(f.min) && std::isfinite(f.max)) os << " and ";
    if (std::isfinite(f.max)) os << "<= " << f.max;
    return os.str();
}

// Checks one value against its spec; returns the normalized value or null with errors appended.
json check_field(const FieldSpec& f, const json& v, const std::string& path, std::vector<std::string>& errors) {
    const std::string where = "'" + path + f.key + "'";
    auto bad_type = [&] {
        errors.push_back(where + ": expected " + type_name(f.type));
        return json();
    };
    auto check_number = [&](double x, const std::string& w) {
        if (!std::isfinite(x)) {
            errors.push_back(w + ": must be finite");
            return false;
        }
        if (!range_ok(f, x)) {
            std::ostringstream os;
            os.precision(17);
            os << w << ": value " << x << " out of range (must be " << range_text(f) << ")";
            errors.push_back(os.str());
            return false;
        }
        return true;
    };
    switch (f.type) {
        case FieldType::number:
            if (!v.is_number()) return bad_type();
            return check_number(v.get<double>(), where) ? json(v.get<double>()) : json();
        case FieldType::integer: {
            if (!v.is_number()) return bad_type();
            const double x = v.get<double>();
            if (x != std::floor(x) || std::abs(x) > 9.0e15) return bad_type();
            return check_number(x, where) ? json(static_cast<long long>(x)) : json();
        }
        case FieldType::boolean:
            if (!v.is_boolean()) return bad_type();
            return v;
        case FieldType::string:
            if (!v.is_string()) return bad_type();
            if (!f.choices.empty() &&
                std::find(f.choices.begin(), f.choices.end(), v.get<std::string>()) == f.choices.end()) {
                std::string m = where + ": '" + v.get<std::string>() + "' is not one of";
                for (const auto& c : f.choices) m += " '" + c + "'";
                const std::string near = nearest_key(v.get<std::string>(), f.choices);
                if (!near.empty()) m += " (did you mean '" + near + "'?)";
                errors.push_back(m);
                return json();
            }
            return v;
        case FieldType::number_list: {
            if (!v.is_array()) return bad_type();
            json out = json::array();
            bool ok = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const std::string w = "'" + path + f.key + "[" + std::to_string(i) + "]'";
                if (!v[i].is_number()) {
                    errors.push_back(w + ": expected number");
                    ok = false;
                    continue;
                }
                if (check_number(v[i].get<double>(), w)) out.push_back(v[i].get<double>());
                else ok = false;
            }
            return ok ? out : json();
        }
    }
    return json();
}

// Fills `out` with every field in `schema`, reporting unknown, missing and invalid entries.
void check_object(const json& in, const std::vector<FieldSpec>& schema, const std::string& path, json& out,
                  std::vector<std::string>& errors) {
    const auto valid = keys_of(schema);
    for (auto it = in.begin(); it != in.end(); ++it)
        if (std::find(valid.begin(), valid.end(), it.key()) == valid.end())
            errors.push_back(unknown_key_message(path, it.key(), valid));
    for (const auto& f : schema) {
        const auto it = in.find(f.key);
        if (it == in.end()) {
            out[f.key] = f.default_value;
            continue;
        }
        const json v = check_field(f, *it, path, errors);
        out[f.key] = v;
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string to_string(ScenarioKind k) {
    for (const auto& [kind, name] : kind_table())
        if (kind == k) return name;
    return "?";
}

std::optional<ScenarioKind> parse_kind(const std::string& name) {
    for (const auto& [kind, n] : kind_table())
        if (n == name) return kind;
    return std::nullopt;
}

std::vector<std::string> scenario_kind_names() {
    std::vector<std::string> out;
    for (const auto& e : kind_table()) out.push_back(e.second);
    return out;
}

const std::vector<FieldSpec>& parameter_schema(ScenarioKind k) {
    static const std::vector<std::vector<FieldSpec>> all = [] {
        std::vector<std::vector<FieldSpec>> v;
        for (const auto& e : kind_table()) v.push_back(build_schema(e.first));
        return v;
    }();
    return all.at(static_cast<std::size_t>(k));
}

const std::vector<FieldSpec>& top_level_schema() {
    static const std::vector<FieldSpec> f = [] {
        FieldSpec params;
        params.key = "parameters";
        params.type = FieldType::string;  // checked separately as an object
        params.default_value = json::object();
        params.doc = "kind-specific table";
        FieldSpec kind = choice("kind", "", scenario_kind_names(), "scenario kind");
        kind.default_value = nullptr;
        FieldSpec name;
        name.key = "name";
        name.type = FieldType::string;
        name.default_value = "";
        name.doc = "run name; output goes to <output dir>/<name>, defaults to the kind";
        FieldSpec desc = name;
        desc.key = "description";
        desc.doc = "free text";
        FieldSpec out = name;
        out.key = "output_dir";
        out.doc = "output directory; default $QRADAR_OUTPUT_DIR/<name> or qradar_out/<name>";
        return std::vector<FieldSpec>{
            integer("format_version", kFormatVersion, "config format version", kFormatVersion, kFormatVersion),
            kind,
            name,
            desc,
            out,
            integer("seed", 0, "master seed", 0, 9.0e15),
            integer("parallelism", 1, "worker threads", 1, 1024),
            params,
        };
    }();
    return f;
}

double ScenarioConfig::number(const std::string& key) const {
    const json& v = parameters.at(key);
    if (v.is_null()) throw ValidationError("parameter '" + key + "' is not set");
    return v.get<double>();
}

long long ScenarioConfig::integer(const std::string& key) const {
    return parameters.at(key).get<long long>();
}

bool ScenarioConfig::boolean(const std::string& key) const {
    return parameters.at(key).get<bool>();
}

std::string ScenarioConfig::string(const std::string& key) const {
    return parameters.at(key).get<std::string>();
}

std::vector<double> ScenarioConfig::number_list(const std::string& key) const {
    return parameters.at(key).get<std::vector<double>>();
}

ConfigParseResult parse_config(const std::string& text) {
    ConfigParseResult res;

    // Duplicate keys are otherwise silently collapsed by the parser.
    std::vector<std::set<std::string>> seen;
    std::vector<std::string> dup;
    auto cb = [&](int, json::parse_event_t ev, json& parsed) {
        if (ev == json::parse_event_t::object_start) seen.emplace_back();
        else if (ev == json::parse_event_t::object_end && !seen.empty()) seen.pop_back();
        else if (ev == json::parse_event_t::key && !seen.empty()) {
            const std::string k = parsed.get<std::string>();
            if (!seen.back().insert(k).second) dup.push_back(k);
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(text, cb);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::string what = e.what();
        const auto pos = what.find("syntax error");
        if (pos != std::string::npos) what = what.substr(pos);
        res.errors.push_back("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + what);
        return res;
    }
    for (const auto& k : dup) res.errors.push_back("duplicate key '" + k + "'");
    if (!doc.is_object()) {
        res.errors.push_back("config must be a JSON object");
        return res;
    }

    ScenarioConfig cfg;
    cfg.source_text = text;
    const auto& top = top_level_schema();
    const auto top_keys = keys_of(top);
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(top_keys.begin(), top_keys.end(), it.key()) == top_keys.end())
            res.errors.push_back(unknown_key_message("", it.key(), top_keys));

    json norm = json::object();
    for (const auto& f : top) {
        if (f.key == "parameters") continue;
        const auto it = doc.find(f.key);
        if (it == doc.end()) {
            if (f.default_value.is_null()) res.errors.push_back("missing required key '" + f.key + "'");
            norm[f.key] = f.default_value;
        } else {
            norm[f.key] = check_field(f, *it, "", res.errors);
        }
    }

    std::optional<ScenarioKind> kind;
    if (norm["kind"].is_string()) kind = parse_kind(norm["kind"].get<std::string>());
    const auto pit = doc.find("parameters");
    const json params_in = pit == doc.end() ? json::object() : *pit;
    if (!params_in.is_object()) res.errors.push_back("'parameters': expected object");
    if (kind) {
        cfg.kind = *kind;
        json params = json::object();
        if (params_in.is_object()) {
            check_object(params_in, parameter_schema(*kind), "parameters.", params, res.errors);
            for (auto it = params_in.begin(); it != params_in.end(); ++it) cfg.explicit_keys.insert(it.key());
        }
        cfg.parameters = params;
    }
    if (!res.errors.empty()) return res;

    cfg.format_version = static_cast<int>(norm["format_version"].get<long long>());
    cfg.name = norm["name"].get<std::string>();
    if (cfg.name.empty()) cfg.name = to_string(cfg.kind);
    if (cfg.name.find('/') != std::string::npos || cfg.name == "." || cfg.name == "..")
        res.errors.push_back("'name': must be a plain file name");
    cfg.description = norm["description"].get<std::string>();
    cfg.output_dir = norm["output_dir"].get<std::string>();
    cfg.seed = static_cast<std::uint64_t>(norm["seed"].get<long long>());
    cfg.parallelism = static_cast<int>(norm["parallelism"].get<long long>());
    if (res.errors.empty()) res.config = std::move(cfg);
    return res;
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key, const std::vector<std::string>& candidates) {
    std::string best;
    std::size_t best_d = std::numeric_limits<std::size_t>::max();
    for (const auto& c : candidates) {
        const std::size_t d = levenshtein(key, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    const std::size_t limit = std::max<std::size_t>(2, key.size() / 3);
    if (best_d <= limit) return best;
    // Truncated forms such as "covariance" for "covariance_detector".
    if (key.size() >= 3)
        for (const auto& c : candidates)
            if (c.rfind(key, 0) == 0) return c;
    return std::string();
}

}  // namespace qradar
