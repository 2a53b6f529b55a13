#pragma once
//
// Asymmetric bidirectional batch search: a lazy goal-rooted reverse search
// supplies cost-to-go estimates, a fully checked forward search follows them,
// and invalid connecting edges are repaired by grafting before the reverse
// search is refined.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "g3t/planner_state.hpp"

namespace g3t {

/// (||u - v||, 2^level - 1): admissible cost and interior lazy-check points.
[[nodiscard]] std::pair<double, double> edge_heuristics(const State& u, const State& v, int level);

/// Label-setting search from every goal over the RGG at state.radius, using
/// lazy edge checks at state.level. Vertices whose estimate cannot beat the
/// best cost are labelled but not expanded.
void reverse_search(PlannerState& state);

/// Raises the lazy-check level, recomputes the reverse tree, and restarts the
/// forward tree. Throws ResolutionExhausted at the configured cap.
void update_reverse_resolution(PlannerState& state);

/// True iff the smallest queued key is strictly below the best cost.
[[nodiscard]] bool could_improve(const PlannerState& state);

struct StepOutcome {
    enum class Kind { EdgeAccepted, EdgeInvalid, SolutionImproved, QueueExhausted };
    Kind kind = Kind::QueueExhausted;
    VertexId source = kNoVertex;
    VertexId target = kNoVertex;
    /// False when the popped edge was dominated or stale.
    bool tree_changed = false;
    std::optional<SolutionPath> path;
};

/// Pops and processes the best queued edge. One call is one iteration.
StepOutcome forward_step(PlannerState& state);

struct SolutionRecord {
    std::uint64_t iteration = 0;
    std::uint64_t full_checks = 0;
    std::uint64_t batch = 0;
    double elapsed_ms = 0.0;
    double cost = kInfinity;
    SolutionPath path;
};

struct PlanResult {
    bool success = false;
    /// Strictly decreasing costs, in emission order.
    std::vector<SolutionRecord> trace;
    std::optional<SolutionPath> best;
    PlannerStats stats;
    std::vector<Allocation> allocations;
    double elapsed_ms = 0.0;
};

class Planner {
public:
    Planner(ProblemDef problem, PlannerConfig config, std::uint64_t seed);

    /// Runs batches until the budget is spent, the target cost is reached, or
    /// the solution matches the straight-line lower bound.
    PlanResult run(const Budget& budget, EventLog* log = nullptr);

    /// Samples one batch, updates the radius, and recomputes both trees.
    void begin_batch();

    [[nodiscard]] PlannerState& state() noexcept { return state_; }
    [[nodiscard]] const PlannerState& state() const noexcept { return state_; }

private:
    void finish_batch();
    void refresh_guild();

    PlannerState state_;
    double last_sampling_cost_ = kInfinity;
};

[[nodiscard]] PlanResult plan(const ProblemDef& problem, const PlannerConfig& config, const Budget& budget,
                              std::uint64_t seed, EventLog* log = nullptr);

}  // namespace g3t
