#pragma once
//
// Mutable state of one planner run: sample store, forward and reverse trees,
// edge queue, validity caches, and bookkeeping shared by the search and
// grafting steps.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "g3t/events.hpp"
#include "g3t/guild.hpp"
#include "g3t/hist.hpp"
#include "g3t/rgg.hpp"
#include "g3t/space.hpp"

namespace g3t {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct PlannerConfig {
    double eta = 1.001;
    double rewire_factor = 1.2;
    std::size_t batch_size = 100;
    int theta = 3;
    AllocationMode allocation = AllocationMode::Prose;
    /// Repair invalid connecting edges through common neighbours.
    bool grafting = true;
    /// Greedy GuILD subsets with historical sampling; off means plain informed sampling.
    bool guild = true;
    /// Lazy-check level of the first reverse search and after an abandoned batch.
    int initial_resolution = 1;
    int max_resolution = 16;
};

/// Termination: whichever limit is hit first.
struct Budget {
    std::uint64_t max_full_checks = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_iterations = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_batches = std::numeric_limits<std::uint64_t>::max();
    double max_ms = kInfinity;
    /// Stop once the best cost is at or below this value.
    double target_cost = -kInfinity;
    bool stop_at_first_solution = false;
};

struct PlannerStats {
    std::uint64_t iterations = 0;
    std::uint64_t full_checks = 0;
    std::uint64_t sparse_checks = 0;
    std::uint64_t batches = 0;
    std::uint64_t reverse_searches = 0;
    std::uint64_t resolution_updates = 0;
    std::uint64_t abandoned_batches = 0;
    std::uint64_t graft_attempts = 0;
    std::uint64_t graft_successes = 0;
    std::uint64_t pruned = 0;
};

/// Goal-rooted lazy cost-to-go.
struct ReverseTree {
    std::vector<double> cost_to_go;
    std::vector<VertexId> parent;
    int level = 1;

    [[nodiscard]] double h(VertexId v) const noexcept { return v < cost_to_go.size() ? cost_to_go[v] : kInfinity; }
    [[nodiscard]] bool reached(VertexId v) const noexcept { return h(v) < kInfinity; }
};

/// Start-rooted tree of fully validated edges.
class ForwardTree {
public:
    void reset(std::size_t id_bound, VertexId root);

    [[nodiscard]] bool contains(VertexId v) const noexcept { return v < g_.size() && g_[v] < kInfinity; }
    [[nodiscard]] double g(VertexId v) const noexcept { return v < g_.size() ? g_[v] : kInfinity; }
    [[nodiscard]] VertexId parent(VertexId v) const noexcept { return v < parent_.size() ? parent_[v] : kNoVertex; }
    [[nodiscard]] const std::vector<VertexId>& children(VertexId v) const { return children_.at(v); }
    [[nodiscard]] VertexId root() const noexcept { return root_; }
    [[nodiscard]] const std::vector<VertexId>& members() const noexcept { return members_; }
    [[nodiscard]] bool is_ancestor(VertexId ancestor, VertexId v) const;

    /// Makes parent the parent of child with the given cost-to-come, then
    /// re-derives every descendant's cost. Returns the re-costed descendants.
    std::vector<VertexId> attach(VertexId child, VertexId parent, double g, const SampleStore& store);

private:
    VertexId root_ = kNoVertex;
    std::vector<double> g_;
    std::vector<VertexId> parent_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<VertexId> members_;
};

struct EdgeCandidate {
    VertexId source = kNoVertex;
    VertexId target = kNoVertex;
    double key = kInfinity;     ///< g_F(source) + c_hat + h_R(target)
    double effort = 0.0;        ///< e_bar at the level the edge was queued
};

struct EdgeCandidateOrder {
    bool operator()(const EdgeCandidate& a, const EdgeCandidate& b) const noexcept {
        if (a.key != b.key) return a.key > b.key;
        if (a.effort != b.effort) return a.effort > b.effort;
        if (a.source != b.source) return a.source > b.source;
        return a.target > b.target;
    }
};

using EdgeQueue = std::priority_queue<EdgeCandidate, std::vector<EdgeCandidate>, EdgeCandidateOrder>;

class PlannerState {
public:
    PlannerState(ProblemDef problem, PlannerConfig config, std::uint64_t seed);

    ProblemDef problem;
    PlannerConfig config;
    Rng rng;
    SampleStore store;
    VertexId start_id = kNoVertex;
    std::vector<VertexId> goal_ids;

    double radius = kInfinity;
    int level = 1;
    ReverseTree reverse;
    ForwardTree forward;
    EdgeQueue queue;

    std::optional<SolutionPath> best;
    std::vector<VertexId> best_ids;
    double best_cost = kInfinity;

    std::uint64_t batch = 0;
    ImprovementTracker tracker;
    std::optional<GuildSubsets> g2;
    std::vector<Allocation> allocations;

    PlannerStats stats;
    Budget budget;
    EventLog* log = nullptr;

    [[nodiscard]] bool is_goal(VertexId v) const;
    [[nodiscard]] const State& state_of(VertexId v) const { return store.state(v); }

    /// Radius neighbours of a stored vertex for the current batch (cached).
    const std::vector<Neighbor>& neighbors_of(VertexId v);
    void invalidate_neighbors();

    /// Exact edge check, cached per vertex pair; uncached calls count toward the budget.
    bool full_check(VertexId a, VertexId b);
    /// Lazy check at the current resolution level, cached.
    bool lazy_check(VertexId a, VertexId b) { return lazy_check(a, b, level); }
    /// Sparse check at an explicit resolution level.
    bool lazy_check(VertexId a, VertexId b, int at_level);
    [[nodiscard]] bool known_invalid(VertexId a, VertexId b) const;
    [[nodiscard]] bool known_valid(VertexId a, VertexId b) const;
    [[nodiscard]] bool checks_exhausted() const noexcept { return stats.full_checks >= budget.max_full_checks; }

    /// Queues outgoing edges of a forward-tree vertex whose key beats the best cost.
    void expand(VertexId v);
    /// Forward tree back to the start vertex alone, queue re-seeded.
    void reset_forward();
    /// Path from the start to a forward-tree vertex.
    [[nodiscard]] SolutionPath extract_path(VertexId v, std::vector<VertexId>* ids = nullptr) const;
    /// Records a strictly better goal connection, if one exists in the forward tree.
    std::optional<SolutionPath> check_solution();

    [[nodiscard]] RadiusParams radius_params() const;
    [[nodiscard]] bool failed_via(VertexId s, VertexId t, VertexId via) const;
    void remember_failed_via(VertexId s, VertexId t, VertexId via);
    void clear_failed_vias() { failed_vias_.clear(); }

    void emit(const char* name, nlohmann::json data);
    [[nodiscard]] bool logging(const char* name) const;

private:
    struct EdgeStatus {
        std::int8_t full = 0;           ///< 0 unknown, 1 valid, -1 invalid
        std::int8_t lazy_ok = 0;        ///< highest level known to pass the lazy check
        std::int8_t lazy_bad = 127;     ///< lowest level known to fail the lazy check
    };
    [[nodiscard]] static std::uint64_t edge_key(VertexId a, VertexId b) noexcept;
    [[nodiscard]] static std::uint64_t triple_key(VertexId s, VertexId t) noexcept;

    std::unordered_map<std::uint64_t, EdgeStatus> edges_;
    std::vector<std::vector<Neighbor>> neighbor_cache_;
    std::vector<std::uint64_t> neighbor_stamp_;
    std::uint64_t neighbor_epoch_ = 1;
    std::unordered_map<std::uint64_t, std::unordered_set<VertexId>> failed_vias_;
    double free_measure_;
};

}  // namespace g3t
