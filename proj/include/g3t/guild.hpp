#pragma once
//
// Greedy GuILD subsets: a beacon vertex on the current solution splits the
// problem into a front spheroid (start, beacon) and a back spheroid
// (beacon, goal) whose diameters are the greedy chord sums along the path.

#include <cstddef>
#include <optional>
#include <vector>

#include "g3t/space.hpp"
#include "g3t/spheroid.hpp"

namespace g3t {

struct BeaconChoice {
    std::size_t index = 0;  ///< position of the beacon in the path
    State beacon;
    std::vector<State> front_path;  ///< start .. beacon
    std::vector<State> back_path;   ///< beacon .. goal
    double front_cost = 0.0;
    double back_cost = 0.0;
    double measure = 0.0;  ///< lambda(front GuILD) + lambda(back GuILD)
};

/// Interior path vertex minimizing the summed volume of the two path-cost
/// spheroids. Ties go to the smallest index. Throws NoInteriorVertex for
/// paths with fewer than 3 vertices.
[[nodiscard]] BeaconChoice select_beacon(const SolutionPath& path, std::size_t n);

struct GreedyCosts {
    double front_cost = 0.0;
    State front_vertex;
    double back_cost = 0.0;
    State back_vertex;
};

/// Largest chord sum along each half path (endpoints included); the first
/// maximizer is kept.
[[nodiscard]] GreedyCosts greedy_costs(const std::vector<State>& front_path, const std::vector<State>& back_path,
                                       const State& beacon, const State& start, const State& goal);

class GuildSubsets {
public:
    GuildSubsets(State start, State goal, BeaconChoice choice, GreedyCosts greedy);

    [[nodiscard]] const State& start() const noexcept { return start_; }
    [[nodiscard]] const State& goal() const noexcept { return goal_; }
    [[nodiscard]] const State& beacon() const noexcept { return choice_.beacon; }
    [[nodiscard]] const BeaconChoice& choice() const noexcept { return choice_; }
    [[nodiscard]] const GreedyCosts& greedy() const noexcept { return greedy_; }
    /// Empty when that side's greedy cost equals its chord (zero volume).
    [[nodiscard]] const std::optional<ProlateHyperspheroid>& front() const noexcept { return front_; }
    [[nodiscard]] const std::optional<ProlateHyperspheroid>& back() const noexcept { return back_; }
    [[nodiscard]] double front_measure() const;
    [[nodiscard]] double back_measure() const;
    [[nodiscard]] bool empty() const noexcept { return !front_ && !back_; }

    /// Inside either spheroid (no collision test).
    [[nodiscard]] bool in_spheroids(const State& v) const;
    /// X_G2 membership: collision free and inside either spheroid.
    [[nodiscard]] bool contains(const ProblemDef& p, const State& v) const;

private:
    State start_;
    State goal_;
    BeaconChoice choice_;
    GreedyCosts greedy_;
    std::optional<ProlateHyperspheroid> front_;
    std::optional<ProlateHyperspheroid> back_;
};

/// Builds X_G2 from a solution path (start = first vertex, goal = last).
[[nodiscard]] GuildSubsets build_g2(const SolutionPath& path, const ProblemDef& p);

struct G2DrawStats {
    std::size_t front = 0;
    std::size_t back = 0;
    std::size_t attempts = 0;
};

/// count members of X_G2, choosing a side per draw in proportion to its
/// volume. Throws SubsetSaturated after 1e5 failed attempts for one point.
[[nodiscard]] std::vector<State> g2_sample(const GuildSubsets& g2, const ProblemDef& p, Rng& rng, std::size_t count,
                                           G2DrawStats* stats = nullptr);

}  // namespace g3t
