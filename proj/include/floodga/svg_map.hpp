#pragma once

#include <string>
#include <string_view>

#include "floodga/chromosome.hpp"
#include "floodga/scenario.hpp"

namespace floodga {

/// Fill colours for levels 0..3, light to dark.
inline constexpr std::string_view kLevelRamp[4] = {"#fee5d9", "#fcae91", "#fb6a4a", "#cb181d"};

/// One labelled square per barangay at its grid cell, filled by the level of
/// `kind`. Output depends only on the arguments. Throws ValidationError when a
/// barangay has no grid cell or lies outside the grid.
std::string render_grid_map(const Scenario& scenario, ChromosomeKind kind, std::string_view title);

}  // namespace floodga
