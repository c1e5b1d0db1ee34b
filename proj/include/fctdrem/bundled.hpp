#pragma once

#include <span>
#include <string_view>

namespace fctdrem {

/// A scenario shipped inside the library (source: scenarios/<name>.toml).
struct BundledScenario {
    std::string_view name;
    std::string_view toml;
};

std::span<const BundledScenario> bundled_scenarios();

/// nullptr if no bundled scenario has this name.
const BundledScenario *find_bundled(std::string_view name);

} // namespace fctdrem
