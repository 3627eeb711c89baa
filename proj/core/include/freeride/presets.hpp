#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freeride/engine.hpp"

namespace freeride {

// Canned experiment scenarios. Every preset produces a fully validated
// SimulationConfig; `seed` overrides the preset's fixed default root seed.
// `full_scale` switches fig2_scaled to the 50-player/30-arm/d=10 setup.
std::vector<std::string> preset_names();
SimulationConfig make_preset(const std::string& name,
                             std::optional<std::uint64_t> seed = std::nullopt,
                             bool full_scale = false);

}  // namespace freeride
