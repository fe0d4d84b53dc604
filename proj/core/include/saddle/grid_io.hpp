#pragma once

#include "saddle/grid.hpp"

#include <filesystem>
#include <optional>

namespace saddle {

/// Grid file layout:
///   saddle-grid v1 <nx> <ny> <x_lo> <x_hi> <y_lo> <y_hi>
/// followed by the nodal values with 17 significant digits, one grid row per
/// line (ny = 0 for an interval).
void export_solution(const GridFunction& w, const std::filesystem::path& path);

/// Reads a grid file. With `expected` set, a file on a different grid throws
/// DimensionError naming both grids. Malformed files throw InputError.
GridFunction import_solution(const std::filesystem::path& path, const std::optional<GridSpec>& expected = {});

}  // namespace saddle
