#pragma once

#include <string>
#include <vector>

#include "qradar/config.hpp"

namespace qradar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

inline constexpr const char* kOutputDirEnv = "QRADAR_OUTPUT_DIR";

struct RunOptions {
    std::string output_dir;  // non-empty: overrides the config and the environment
    int parallelism = 0;     // > 0: overrides the config
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::string status;  // ok, validation_error, numerical_error
    std::string error;
    std::string output_dir;
    std::vector<std::string> files;
};

// $QRADAR_OUTPUT_DIR if set and non-empty, otherwise "qradar_out".
std::string default_output_root();

// Syntax, schema and cross-field checks; empty when the config can run.
std::vector<std::string> validate_config(const std::string& text);

// Writes the kind-specific CSV files, summary.json and a timing.json sidecar.
// CSV and summary.json depend only on the config text, never on parallelism or wall time.
RunOutcome run_config(const std::string& text, const RunOptions& opts = {});
RunOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

// Git blob object id: SHA-1 of "blob <size>\0" + content, lowercase hex.
std::string git_blob_sha1(const std::string& content);

// 17 significant digits, scientific.
std::string csv_number(double v);

}  // namespace qradar
