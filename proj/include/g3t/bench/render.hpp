#pragma once
//
// SVG scene renderer driven by a planner event log.

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "g3t/events.hpp"
#include "g3t/space.hpp"

namespace g3t::bench {

struct RenderOptions {
    /// Axes to draw; required for dim > 2.
    std::optional<std::array<std::size_t, 2>> project;
    double pixels = 600.0;
};

/// Obstacles, forward and reverse trees, grafted pairs, the last greedy
/// spheroids with their beacon, and the final solution. Throws
/// UnsupportedDimension for dim > 2 without a projection.
[[nodiscard]] std::string render_svg(const EventLog& log, const ProblemDef& p, const RenderOptions& options = {});

/// Same, with the problem read from the log's "problem" event.
[[nodiscard]] std::string render_svg(const EventLog& log, const RenderOptions& options = {});

void render_svg_file(const EventLog& log, const ProblemDef& p, const std::string& path,
                     const RenderOptions& options = {});

}  // namespace g3t::bench
