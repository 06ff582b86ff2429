#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace qradar {

inline constexpr int kFormatVersion = 1;

enum class ScenarioKind { eom_sweep, oe_sweep, oe_end_to_end, jpa_gain, jpa_wigner, channel_neff, qi_roc };

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_kind(const std::string& name);
std::vector<std::string> scenario_kind_names();

enum class FieldType { number, integer, boolean, string, number_list };

struct FieldSpec {
    std::string key;
    FieldType type = FieldType::number;
    nlohmann::json default_value;  // null: required
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();
    bool min_exclusive = false;
    std::vector<std::string> choices;  // string fields only
    std::string doc;
};

// Keys accepted under "parameters" for a kind, in documentation order.
const std::vector<FieldSpec>& parameter_schema(ScenarioKind k);
// Keys accepted at the top level of every config.
const std::vector<FieldSpec>& top_level_schema();

struct ScenarioConfig {
    int format_version = kFormatVersion;
    ScenarioKind kind = ScenarioKind::eom_sweep;
    std::string name;              // defaults to the kind name
    std::string description;
    std::string output_dir;        // empty: resolved by the runner
    std::uint64_t seed = 0;
    int parallelism = 1;
    nlohmann::json parameters;     // every schema key present, defaults filled
    std::set<std::string> explicit_keys;  // parameter keys present in the input
    std::string source_text;       // verbatim input, hashed into the summary

    double number(const std::string& key) const;
    long long integer(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::string string(const std::string& key) const;
    std::vector<double> number_list(const std::string& key) const;
};

struct ConfigParseResult {
    std::optional<ScenarioConfig> config;
    std::vector<std::string> errors;  // every problem found, not just the first

    bool ok() const { return config.has_value() && errors.empty(); }
};

// Strict JSON: unknown or duplicate keys, wrong types and out-of-range values are errors.
ConfigParseResult parse_config(const std::string& text);

std::size_t levenshtein(const std::string& a, const std::string& b);
// Closest candidate within a small edit distance, or empty.
std::string nearest_key(const std::string& key, const std::vector<std::string>& candidates);

}  // namespace qradar
