#pragma once
//
// Unit-hypercube state space with closed axis-aligned box obstacles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace g3t {

using State = Eigen::VectorXd;
using Rng = std::mt19937_64;

[[nodiscard]] inline double distance(const State& a, const State& b) noexcept {
    return (a - b).norm();
}

/// Closed axis-aligned box [min, max].
struct AxisBox {
    State min;
    State max;

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(min.size()); }
    [[nodiscard]] bool contains(const State& v) const noexcept;
    [[nodiscard]] double volume() const noexcept;
    /// Parameter range [t_enter, t_exit] of a + t (b - a), t in [0, 1], inside the box; empty if disjoint.
    [[nodiscard]] std::optional<std::pair<double, double>> segment_interval(const State& a, const State& b) const noexcept;
    /// Parametric slab test of the segment a + t (b - a), t in [0, 1].
    [[nodiscard]] bool intersects_segment(const State& a, const State& b) const noexcept;

    bool operator==(const AxisBox& other) const { return min == other.min && max == other.max; }
};

/// Planning problem in [0,1]^n with a Euclidean path-length cost.
class ProblemDef {
public:
    /// Validates dimensions, clips obstacles to the cube, and requires start
    /// and every goal to be collision free.
    ProblemDef(std::size_t dim, std::vector<AxisBox> obstacles, State start, std::vector<State> goals);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<AxisBox>& obstacles() const noexcept { return obstacles_; }
    [[nodiscard]] const State& start() const noexcept { return start_; }
    [[nodiscard]] const std::vector<State>& goals() const noexcept { return goals_; }

    /// Smallest chord length from start to any goal.
    [[nodiscard]] double min_goal_chord() const noexcept;
    /// Admissible start-to-goal estimate through v: ||v - start|| + min_g ||g - v||.
    [[nodiscard]] double heuristic_through(const State& v) const noexcept;

    bool operator==(const ProblemDef& other) const;

private:
    std::size_t dim_;
    std::vector<AxisBox> obstacles_;
    State start_;
    std::vector<State> goals_;
};

/// Piecewise-linear path; cost is the sum of consecutive Euclidean distances.
struct SolutionPath {
    std::vector<State> vertices;
    double cost = 0.0;

    [[nodiscard]] static SolutionPath from_vertices(std::vector<State> vertices);
};

[[nodiscard]] double path_cost(const std::vector<State>& vertices);

/// Independent re-check: endpoints match start and some goal, every segment
/// passes segment_valid, and the stored cost matches the vertex sum.
[[nodiscard]] bool path_is_valid(const ProblemDef& p, const SolutionPath& path, double cost_tol = 1e-9);

[[nodiscard]] bool point_in_free(const ProblemDef& p, const State& v);

/// Exact check: true iff the segment touches no obstacle and stays in the cube.
/// Throws InvalidEndpoint if either endpoint is in collision.
[[nodiscard]] bool segment_valid(const ProblemDef& p, const State& a, const State& b);

/// Lazy check of both endpoints plus 2^level - 1 evenly spaced interior points.
/// One-sided: never rejects a valid segment. Level must lie in [1, 62].
[[nodiscard]] bool sparse_segment_check(const ProblemDef& p, const State& a, const State& b, int level);

/// Rejection sampling over the closed unit cube.
[[nodiscard]] std::vector<State> sample_free_uniform(const ProblemDef& p, Rng& rng, std::size_t count);

/// Uniform draw from the closed cube, no collision filtering.
[[nodiscard]] State sample_cube(std::size_t dim, Rng& rng);

/// Volume of X_free: 1 - sum of box volumes + pairwise overlaps, clamped to (0, 1].
[[nodiscard]] double free_space_measure(const ProblemDef& p);

// Scene files: {"dim": n, "start": [...], "goals": [[...]], "obstacles": [{"min": [...], "max": [...]}]}
[[nodiscard]] ProblemDef load_scene(const std::string& path);
[[nodiscard]] ProblemDef parse_scene(const std::string& json_text);
[[nodiscard]] std::string scene_to_json(const ProblemDef& p);
void save_scene(const ProblemDef& p, const std::string& path);

}  // namespace g3t
