#pragma once
//
// RRT-Connect feasibility baseline: two trees grown by extend/connect with a
// goal bias, stopping at the first connection.

#include <cstdint>
#include <optional>

#include "g3t/planner_state.hpp"
#include "g3t/search.hpp"
#include "g3t/space.hpp"

namespace g3t::bench {

struct RrtConfig {
    double goal_bias = 0.05;
    /// Empty selects the per-dimension default (0.5 in R^2, 1.25 in R^4, 3.0 in R^8).
    std::optional<double> max_edge;
};

[[nodiscard]] double default_max_edge(std::size_t dim);

/// One feasible path or none. Every segment check counts as a full check;
/// iterations count extend calls.
[[nodiscard]] PlanResult plan_rrt_connect(const ProblemDef& p, const RrtConfig& config, const Budget& budget,
                                          std::uint64_t seed, EventLog* log = nullptr);

}  // namespace g3t::bench
