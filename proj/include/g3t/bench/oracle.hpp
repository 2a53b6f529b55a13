#pragma once
//
// Exact 2D shortest collision-free path length for box worlds.

#include "g3t/space.hpp"

namespace g3t::bench {

/// Visibility graph over start, goals, and box corners pushed 1e-9 outward,
/// searched with Dijkstra over exactly checked edges. Infinity when no path
/// exists. Throws UnsupportedDimension unless dim == 2.
[[nodiscard]] double shortest_path_oracle_2d(const ProblemDef& p);

}  // namespace g3t::bench
