#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qradar/presets.hpp"
#include "qradar/scenario.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    out = ss.str();
    return true;
}

// A config argument is a file path, or preset:<name> for a shipped preset.
bool load_config(const std::string& arg, std::string& text) {
    const std::string prefix = "preset:";
    if (arg.rfind(prefix, 0) == 0) {
        const auto t = qradar::preset_text(arg.substr(prefix.size()));
        if (!t) {
            std::cerr << "error: no preset named '" << arg.substr(prefix.size()) << "'\n";
            return false;
        }
        text = *t;
        return true;
    }
    if (!read_file(arg, text)) {
        std::cerr << "error: cannot read config '" << arg << "'\n";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum radar simulation scenarios"};
    app.require_subcommand(1);

    std::string config_arg, output_dir, preset_name;
    int parallelism = 0;

    auto* run = app.add_subcommand("run", "Run a scenario config and write CSV/JSON artifacts");
    run->add_option("config", config_arg, "config file, or preset:<name>")->required();
    run->add_option("-o,--output-dir", output_dir, "output directory (overrides config and $QRADAR_OUTPUT_DIR)");
    run->add_option("-j,--parallelism", parallelism, "worker threads (overrides config)")
        ->check(CLI::Range(1, 1024));

    auto* validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("config", config_arg, "config file, or preset:<name>")->required();

    auto* presets = app.add_subcommand("presets", "Shipped scenario presets");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "List preset names");
    auto* show = presets->add_subcommand("show", "Print a preset config");
    show->add_option("name", preset_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qradar::kExitValidation;
    }

    if (*list) {
        for (const auto& n : qradar::preset_names()) std::cout << n << "\n";
        return qradar::kExitOk;
    }
    if (*show) {
        const auto t = qradar::preset_text(preset_name);
        if (!t) {
            std::cerr << "error: no preset named '" << preset_name << "'\n";
            return qradar::kExitValidation;
        }
        std::cout << *t;
        return qradar::kExitOk;
    }

    std::string text;
    if (!load_config(config_arg, text)) return qradar::kExitValidation;

    if (*validate) {
        const auto errors = qradar::validate_config(text);
        for (const auto& e : errors) std::cerr << "error: " << e << "\n";
        if (!errors.empty()) return qradar::kExitValidation;
        std::cout << "ok\n";
        return qradar::kExitOk;
    }

    try {
        qradar::RunOptions opts;
        opts.output_dir = output_dir;
        opts.parallelism = parallelism;
        const qradar::RunOutcome r = qradar::run_config(text, opts);
        if (r.exit_code != qradar::kExitOk) {
            std::istringstream lines(r.error);
            for (std::string line; std::getline(lines, line);) std::cerr << "error: " << line << "\n";
            return r.exit_code;
        }
        for (const auto& f : r.files) std::cout << r.output_dir << "/" << f << "\n";
        return qradar::kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qradar::kExitValidation;
    }
}
