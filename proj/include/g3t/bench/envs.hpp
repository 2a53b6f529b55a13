#pragma once
//
// Benchmark worlds in the unit hypercube: dividing walls with narrow gaps,
// random rectangles, and single-wall instances with a known 2D optimum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "g3t/space.hpp"

namespace g3t::bench {

enum class EnvKind { DividingWalls, RandomRects, SingleWall, File };

struct EnvSpec {
    EnvKind kind = EnvKind::DividingWalls;
    std::size_t dim = 2;
    /// Variation index (dividing walls, single wall) or generator seed (random rectangles).
    std::uint64_t variation = 0;
    /// Random-rectangle count; empty selects the per-dimension default.
    std::optional<std::size_t> count;
    std::string path;

    /// Short family label used in CSV rows: "dw", "rr", "wall" or the file path.
    [[nodiscard]] std::string family() const;
};

inline constexpr std::size_t kDividingWallVariations = 10;
inline constexpr double kWallThickness = 0.05;
inline constexpr double kGapMin = 0.03;
inline constexpr double kGapMax = 0.125;

/// Two walls centred at x = 0.35 and x = 0.65, each with two gaps whose
/// heights are uniform in [0.03, 0.125]. Start (0.1, 0.5, ...), goal (0.9, 0.5, ...).
[[nodiscard]] ProblemDef gen_dividing_walls(std::size_t dim, std::uint64_t variation);

/// Default obstacle counts: 10 in R^2 (about 94% of worlds stay feasible), 40 in R^4,
/// 20 in R^8, 10 above.
[[nodiscard]] std::size_t default_rect_count(std::size_t dim);

/// count boxes with per-axis sides uniform in [0.05, 0.4] and uniform centres,
/// clipped to the cube. Boxes covering start or goal are redrawn (at most 1000
/// times each). Start (0.5, 0.4, 0.5, ...), goal (0.9, 0.9, ...).
[[nodiscard]] ProblemDef gen_random_rects(std::size_t dim, std::uint64_t seed, std::optional<std::size_t> count = {});

inline constexpr std::size_t kSingleWallInstances = 10;

/// R^2, start (0.1, 0.5), goal (0.9, 0.5), one box [0.45, 0.55] x [0, h] or
/// [1 - h, 1] (alternating) with h = 0.55 + 0.04 * index, so every wall blocks the chord.
[[nodiscard]] ProblemDef gen_single_wall(std::uint64_t index);

[[nodiscard]] ProblemDef make_problem(const EnvSpec& spec);

}  // namespace g3t::bench
