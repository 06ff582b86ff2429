#include "qradar/presets.hpp"

#include <cstddef>

namespace qradar {

namespace {

struct PresetEntry {
    const char* name;
    const char* data;
    std::size_t size;
};

#include "qradar_presets.inc"

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : k_presets) out.emplace_back(p.name);
    return out;
}

std::optional<std::string> preset_text(const std::string& name) {
    for (const auto& p : k_presets)
        if (name == p.name) return std::string(p.data, p.size);
    return std::nullopt;
}

}  // namespace qradar
