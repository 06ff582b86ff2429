#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qradar {

std::vector<std::string> preset_names();
std::optional<std::string> preset_text(const std::string& name);

}  // namespace qradar
