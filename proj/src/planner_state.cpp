#include "g3t/planner_state.hpp"

#include <algorithm>
#include <cmath>

#include "g3t/error.hpp"
#include "g3t/spheroid.hpp"

namespace g3t {

void ForwardTree::reset(std::size_t id_bound, VertexId root) {
    for (VertexId v : members_) {
        if (v < g_.size()) {
            g_[v] = kInfinity;
            parent_[v] = kNoVertex;
            children_[v].clear();
        }
    }
    members_.clear();
    g_.resize(id_bound, kInfinity);
    parent_.resize(id_bound, kNoVertex);
    children_.resize(id_bound);
    root_ = root;
    if (root < id_bound) {
        g_[root] = 0.0;
        members_.push_back(root);
    }
}

bool ForwardTree::is_ancestor(VertexId ancestor, VertexId v) const {
    for (VertexId u = v; u != kNoVertex; u = parent(u)) {
        if (u == ancestor) return true;
    }
    return false;
}

std::vector<VertexId> ForwardTree::attach(VertexId child, VertexId parent, double g, const SampleStore& store) {
    if (!contains(parent)) throw Error(ErrorCode::InvalidParameter, "parent is not in the forward tree");
    if (child == root_ || is_ancestor(child, parent)) {
        throw Error(ErrorCode::InvalidParameter, "attaching would create a cycle");
    }
    if (!contains(child)) members_.push_back(child);
    const VertexId old = parent_[child];
    if (old != kNoVertex) {
        auto& siblings = children_[old];
        siblings.erase(std::remove(siblings.begin(), siblings.end(), child), siblings.end());
    }
    parent_[child] = parent;
    children_[parent].push_back(child);
    g_[child] = g;

    // Costs are re-derived from the parent rather than shifted by a delta so
    // every g_F equals the left-to-right path sum.
    std::vector<VertexId> recosted;
    std::vector<VertexId> stack(children_[child].begin(), children_[child].end());
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        const VertexId p = parent_[v];
        g_[v] = g_[p] + distance(store.state(p), store.state(v));
        recosted.push_back(v);
        stack.insert(stack.end(), children_[v].begin(), children_[v].end());
    }
    return recosted;
}

PlannerState::PlannerState(ProblemDef problem_in, PlannerConfig config_in, std::uint64_t seed)
    : problem(std::move(problem_in)),
      config(config_in),
      rng(seed),
      store(problem.dim()),
      tracker(config.theta, config.batch_size, config.allocation) {
    if (config.max_resolution < 1 || config.max_resolution > 30) {
        throw Error(ErrorCode::InvalidParameter, "resolution cap must lie in [1, 30]");
    }
    if (config.initial_resolution < 1 || config.initial_resolution > config.max_resolution) {
        throw Error(ErrorCode::InvalidParameter, "initial resolution must lie in [1, resolution cap]");
    }
    level = config.initial_resolution;
    start_id = store.add(problem.start());
    for (const auto& g : problem.goals()) goal_ids.push_back(store.add(g));
    free_measure_ = free_space_measure(problem);
    reverse.level = level;
}

bool PlannerState::is_goal(VertexId v) const {
    return std::find(goal_ids.begin(), goal_ids.end(), v) != goal_ids.end();
}

const std::vector<Neighbor>& PlannerState::neighbors_of(VertexId v) {
    if (neighbor_cache_.size() < store.id_bound()) {
        neighbor_cache_.resize(store.id_bound());
        neighbor_stamp_.resize(store.id_bound(), 0);
    }
    if (neighbor_stamp_.at(v) != neighbor_epoch_) {
        neighbor_cache_[v] = store.neighbors(v, radius);
        neighbor_stamp_[v] = neighbor_epoch_;
    }
    return neighbor_cache_[v];
}

void PlannerState::invalidate_neighbors() {
    ++neighbor_epoch_;
    neighbor_cache_.resize(store.id_bound());
    neighbor_stamp_.resize(store.id_bound(), 0);
    // Drop lists of removed vertices so memory tracks the live store.
    for (std::size_t v = 0; v < neighbor_cache_.size(); ++v) {
        if (!store.contains(static_cast<VertexId>(v))) std::vector<Neighbor>().swap(neighbor_cache_[v]);
    }
}

std::uint64_t PlannerState::edge_key(VertexId a, VertexId b) noexcept {
    const auto lo = std::min(a, b);
    const auto hi = std::max(a, b);
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

std::uint64_t PlannerState::triple_key(VertexId s, VertexId t) noexcept {
    return (static_cast<std::uint64_t>(s) << 32) | t;
}

bool PlannerState::full_check(VertexId a, VertexId b) {
    auto& status = edges_[edge_key(a, b)];
    if (status.full == 0) {
        ++stats.full_checks;
        status.full = segment_valid(problem, store.state(a), store.state(b)) ? 1 : -1;
    }
    return status.full > 0;
}

bool PlannerState::lazy_check(VertexId a, VertexId b, int at_level) {
    auto& status = edges_[edge_key(a, b)];
    if (status.full > 0 || at_level <= status.lazy_ok) return true;
    if (at_level >= status.lazy_bad) return false;
    ++stats.sparse_checks;
    // Level-L points contain every level-(L-1) point, so results propagate.
    if (sparse_segment_check(problem, store.state(a), store.state(b), at_level)) {
        status.lazy_ok = static_cast<std::int8_t>(at_level);
        return true;
    }
    status.lazy_bad = static_cast<std::int8_t>(at_level);
    return false;
}

bool PlannerState::known_invalid(VertexId a, VertexId b) const {
    const auto it = edges_.find(edge_key(a, b));
    return it != edges_.end() && it->second.full < 0;
}

bool PlannerState::known_valid(VertexId a, VertexId b) const {
    const auto it = edges_.find(edge_key(a, b));
    return it != edges_.end() && it->second.full > 0;
}

void PlannerState::expand(VertexId v) {
    const double gv = forward.g(v);
    if (!(gv < kInfinity)) return;
    const double effort = std::ldexp(1.0, level) - 1.0;
    const VertexId parent = forward.parent(v);
    for (const Neighbor& nb : neighbors_of(v)) {
        const VertexId w = nb.id;
        if (w == parent || w == forward.root()) continue;
        const double h = reverse.h(w);
        if (!(h < kInfinity)) continue;
        const double g_new = gv + nb.distance;
        if (forward.contains(w) && forward.g(w) <= g_new) continue;
        const double key = g_new + h;
        if (!(key < best_cost)) continue;
        if (known_invalid(v, w)) continue;
        queue.push(EdgeCandidate{v, w, key, effort});
    }
}

void PlannerState::reset_forward() {
    queue = EdgeQueue();
    forward.reset(store.id_bound(), start_id);
    expand(start_id);
}

SolutionPath PlannerState::extract_path(VertexId v, std::vector<VertexId>* ids) const {
    if (!forward.contains(v)) throw Error(ErrorCode::InvalidParameter, "vertex is not in the forward tree");
    std::vector<VertexId> chain;
    for (VertexId u = v; u != kNoVertex; u = forward.parent(u)) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    SolutionPath path;
    path.vertices.reserve(chain.size());
    for (VertexId u : chain) path.vertices.push_back(store.state(u));
    path.cost = forward.g(v);
    if (ids != nullptr) *ids = std::move(chain);
    return path;
}

std::optional<SolutionPath> PlannerState::check_solution() {
    VertexId winner = kNoVertex;
    double cost = best_cost;
    for (VertexId g : goal_ids) {
        if (forward.g(g) < cost) {
            cost = forward.g(g);
            winner = g;
        }
    }
    if (winner == kNoVertex) return std::nullopt;
    std::vector<VertexId> ids;
    SolutionPath path = extract_path(winner, &ids);
    best = path;
    best_ids = std::move(ids);
    best_cost = path.cost;
    if (logging("solution")) {
        nlohmann::json verts = nlohmann::json::array();
        for (const auto& s : path.vertices) verts.push_back(to_json(s));
        emit("solution", {{"cost", path.cost},
                          {"full_checks", stats.full_checks},
                          {"batch", batch},
                          {"vertices", std::move(verts)}});
    }
    return path;
}

RadiusParams PlannerState::radius_params() const {
    RadiusParams params;
    params.eta = config.eta;
    params.dim = problem.dim();
    params.rewire_factor = config.rewire_factor;
    double measure = free_measure_;
    if (std::isfinite(best_cost) && problem.goals().size() == 1) {
        measure = std::min(measure, phs_measure(std::max(best_cost, problem.min_goal_chord()),
                                                problem.min_goal_chord(), problem.dim()));
    }
    params.measure_min = std::clamp(measure, 1e-12, 1.0);
    return params;
}

bool PlannerState::failed_via(VertexId s, VertexId t, VertexId via) const {
    const auto it = failed_vias_.find(triple_key(s, t));
    return it != failed_vias_.end() && it->second.count(via) > 0;
}

void PlannerState::remember_failed_via(VertexId s, VertexId t, VertexId via) {
    failed_vias_[triple_key(s, t)].insert(via);
}

void PlannerState::emit(const char* name, nlohmann::json data) {
    if (log != nullptr) log->emit(name, stats.iterations, std::move(data));
}

bool PlannerState::logging(const char* name) const { return log != nullptr && log->wants(name); }

}  // namespace g3t
