#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace detkit {

// All built-in configuration names: 12 variant families x 4 scales.
std::vector<std::string> catalog_names();

// Returns the configuration document for a catalog name, or nullopt for an
// unknown name. Every returned document parses and compiles cleanly.
std::optional<std::string> builtin_config(std::string_view name);

} // namespace detkit
