#include "g3t/search.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <queue>

#include "g3t/error.hpp"
#include "g3t/grafting.hpp"
#include "g3t/spheroid.hpp"

namespace g3t {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Consecutive batches with no new exact check and no improvement before the
// run stops: once a solution exists the search has stalled inside the
// informed set; without one the goal may be enclosed.
constexpr std::uint64_t kIdleBatchesSolved = 20;
constexpr std::uint64_t kIdleBatchesUnsolved = 200;

}  // namespace

std::pair<double, double> edge_heuristics(const State& u, const State& v, int level) {
    if (u.size() != v.size()) throw Error(ErrorCode::DimensionError, "edge endpoints differ in dimension");
    if (level < 1) throw Error(ErrorCode::InvalidParameter, "resolution level must be >= 1");
    return {distance(u, v), std::ldexp(1.0, level) - 1.0};
}

void reverse_search(PlannerState& st) {
    ++st.stats.reverse_searches;
    auto& rev = st.reverse;
    rev.level = st.level;
    const std::size_t n = st.store.id_bound();
    rev.cost_to_go.assign(n, kInfinity);
    rev.parent.assign(n, kNoVertex);

    using Entry = std::pair<double, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    for (VertexId g : st.goal_ids) {
        if (!st.store.contains(g)) continue;
        rev.cost_to_go[g] = 0.0;
        open.emplace(0.0, g);
    }
    std::vector<char> closed(n, 0);
    const State& start = st.problem.start();
    while (!open.empty()) {
        const auto [h, u] = open.top();
        open.pop();
        if (closed[u] || h > rev.cost_to_go[u]) continue;
        closed[u] = 1;
        // Nothing routed through u can beat the incumbent.
        if (!(h + distance(start, st.state_of(u)) < st.best_cost)) continue;
        for (const Neighbor& nb : st.neighbors_of(u)) {
            const VertexId w = nb.id;
            if (closed[w]) continue;
            const double candidate = h + nb.distance;
            if (!(candidate < rev.cost_to_go[w])) continue;
            if (st.known_invalid(u, w) || !st.lazy_check(u, w)) continue;
            rev.cost_to_go[w] = candidate;
            rev.parent[w] = u;
            open.emplace(candidate, w);
        }
    }
}

void update_reverse_resolution(PlannerState& st) {
    if (st.level >= st.config.max_resolution) {
        throw Error(ErrorCode::ResolutionExhausted, "lazy-check resolution cap reached");
    }
    ++st.level;
    ++st.stats.resolution_updates;
    reverse_search(st);
    st.reset_forward();
}

bool could_improve(const PlannerState& st) { return !st.queue.empty() && st.queue.top().key < st.best_cost; }

StepOutcome forward_step(PlannerState& st) {
    StepOutcome out;
    if (st.queue.empty()) return out;
    ++st.stats.iterations;
    const EdgeCandidate e = st.queue.top();
    st.queue.pop();
    out.source = e.source;
    out.target = e.target;
    out.kind = StepOutcome::Kind::EdgeAccepted;

    const double c_hat = distance(st.state_of(e.source), st.state_of(e.target));
    const double g_new = st.forward.g(e.source) + c_hat;
    // Dominated: the target is already reached at least as cheaply, or the
    // edge can no longer beat the incumbent.
    if (!(g_new < st.forward.g(e.target)) || !(g_new + st.reverse.h(e.target) < st.best_cost)) return out;

    // A failed sparse check proves the edge invalid without spending a full check.
    if (!st.lazy_check(e.source, e.target)) return out;
    if (!st.known_valid(e.source, e.target) && !st.known_invalid(e.source, e.target) && st.checks_exhausted()) {
        // Put the edge back so a larger budget could resume from here.
        st.queue.push(e);
        --st.stats.iterations;
        out.kind = StepOutcome::Kind::QueueExhausted;
        return out;
    }
    if (!st.full_check(e.source, e.target)) {
        out.kind = StepOutcome::Kind::EdgeInvalid;
        if (st.logging("edge-invalid")) {
            st.emit("edge-invalid", {{"source", e.source},
                                     {"target", e.target},
                                     {"from", to_json(st.state_of(e.source))},
                                     {"to", to_json(st.state_of(e.target))}});
        }
        return out;
    }

    const auto recosted = st.forward.attach(e.target, e.source, g_new, st.store);
    out.tree_changed = true;
    if (st.logging("edge-accept")) {
        st.emit("edge-accept", {{"source", e.source},
                                {"target", e.target},
                                {"g", g_new},
                                {"from", to_json(st.state_of(e.source))},
                                {"to", to_json(st.state_of(e.target))}});
    }
    st.expand(e.target);
    for (VertexId d : recosted) st.expand(d);
    if (auto path = st.check_solution()) {
        out.kind = StepOutcome::Kind::SolutionImproved;
        out.path = std::move(path);
    }
    return out;
}

Planner::Planner(ProblemDef problem, PlannerConfig config, std::uint64_t seed)
    : state_(std::move(problem), config, seed) {}

void Planner::begin_batch() {
    PlannerState& st = state_;
    const std::size_t m = st.config.batch_size;
    SamplingContext ctx;
    ctx.c_prev = last_sampling_cost_;
    ctx.c_curr = st.best_cost;
    ctx.g2 = st.g2 ? &*st.g2 : nullptr;
    ctx.problem = &st.problem;
    ctx.rng = &st.rng;
    SamplingResult sampled = st.config.guild ? historical_sampling(st.tracker, ctx) : informed_sampling(m, ctx);
    last_sampling_cost_ = st.best_cost;
    st.allocations.push_back(sampled.allocation);

    st.store.add_batch(sampled.samples);
    ++st.batch;
    ++st.stats.batches;
    st.radius = rgg_radius(st.store.size(), st.radius_params());
    st.invalidate_neighbors();
    st.clear_failed_vias();
    if (st.logging("batch")) {
        const Allocation& a = sampled.allocation;
        st.emit("batch", {{"batch", st.batch},
                          {"vertices", st.store.size()},
                          {"radius", st.radius},
                          {"level", st.level},
                          {"branch", std::string(to_string(a.branch))},
                          {"m_g2", a.m_g2},
                          {"m_informed", a.m_informed},
                          {"cci", a.cci},
                          {"hci", a.hci},
                          {"fallback", sampled.fallback}});
    }
    reverse_search(st);
    st.reset_forward();
}

void Planner::refresh_guild() {
    PlannerState& st = state_;
    st.g2.reset();
    if (!st.config.guild || !st.best || st.best->vertices.size() < 3) return;
    st.g2 = build_g2(*st.best, st.problem);
    if (st.logging("guild")) {
        const auto side = [](const std::optional<ProlateHyperspheroid>& phs) -> nlohmann::json {
            if (!phs) return nullptr;
            return {{"a", to_json(phs->focus_a())}, {"b", to_json(phs->focus_b())}, {"c", phs->transverse_cost()}};
        };
        st.emit("guild", {{"beacon", to_json(st.g2->beacon())},
                          {"front", side(st.g2->front())},
                          {"back", side(st.g2->back())},
                          {"front_vertex", to_json(st.g2->greedy().front_vertex)},
                          {"back_vertex", to_json(st.g2->greedy().back_vertex)}});
    }
}

void Planner::finish_batch() {
    PlannerState& st = state_;
    if (std::isfinite(st.best_cost)) {
        std::vector<VertexId> keep = st.best_ids;
        keep.push_back(st.start_id);
        keep.insert(keep.end(), st.goal_ids.begin(), st.goal_ids.end());
        st.stats.pruned += prune(st.store, st.problem, st.best_cost, keep);
    }
}

PlanResult Planner::run(const Budget& budget, EventLog* log) {
    PlannerState& st = state_;
    st.budget = budget;
    st.log = log;
    const auto t0 = Clock::now();
    PlanResult result;
    if (st.logging("problem")) st.emit("problem", nlohmann::json::parse(scene_to_json(st.problem)));

    const double lower_bound = st.problem.min_goal_chord();
    const auto record = [&](const SolutionPath& path) {
        SolutionRecord r;
        r.iteration = st.stats.iterations;
        r.full_checks = st.stats.full_checks;
        r.batch = st.batch;
        r.elapsed_ms = ms_since(t0);
        r.cost = path.cost;
        r.path = path;
        result.trace.push_back(std::move(r));
    };
    const auto done = [&]() {
        if (st.checks_exhausted() || st.stats.iterations >= budget.max_iterations) return true;
        if (ms_since(t0) >= budget.max_ms) return true;
        if (st.best_cost <= budget.target_cost) return true;
        if (budget.stop_at_first_solution && st.best) return true;
        return st.best_cost <= lower_bound;
    };

    std::uint64_t idle = 0;
    while (!done() && st.stats.batches < budget.max_batches &&
           idle < (st.best ? kIdleBatchesSolved : kIdleBatchesUnsolved)) {
        const auto checks_before = st.stats.full_checks;
        const double cost_before = st.best_cost;
        begin_batch();
        try {
            while (!done() && could_improve(st)) {
                StepOutcome step = forward_step(st);
                if (step.kind == StepOutcome::Kind::QueueExhausted) break;
                if (step.kind == StepOutcome::Kind::SolutionImproved) {
                    record(*step.path);
                    continue;
                }
                if (step.kind != StepOutcome::Kind::EdgeInvalid) continue;
                if (st.config.grafting) {
                    const auto pair = graft(st, step.source, step.target, st.radius);
                    if (pair) {
                        if (auto path = st.check_solution()) record(*path);
                        continue;
                    }
                    if (st.checks_exhausted()) break;
                }
                update_reverse_resolution(st);
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ResolutionExhausted) throw;
            // Abandon this batch; sampling resumes at the coarsest level.
            ++st.stats.abandoned_batches;
            st.level = st.config.initial_resolution;
        }
        finish_batch();
        if (st.best_cost < cost_before) refresh_guild();
        idle = (st.stats.full_checks == checks_before && !(st.best_cost < cost_before)) ? idle + 1 : 0;
    }

    if (st.logging("reverse-tree")) {
        nlohmann::json edges = nlohmann::json::array();
        for (VertexId v = 0; v < st.reverse.parent.size(); ++v) {
            const VertexId p = st.reverse.parent[v];
            if (p != kNoVertex && st.store.contains(v) && st.store.contains(p)) {
                edges.push_back({to_json(st.state_of(v)), to_json(st.state_of(p))});
            }
        }
        st.emit("reverse-tree", {{"edges", std::move(edges)}});
    }
    if (st.logging("forward-tree")) {
        nlohmann::json edges = nlohmann::json::array();
        for (VertexId v : st.forward.members()) {
            const VertexId p = st.forward.parent(v);
            if (p != kNoVertex && st.store.contains(v) && st.store.contains(p)) {
                edges.push_back({to_json(st.state_of(p)), to_json(st.state_of(v))});
            }
        }
        st.emit("forward-tree", {{"edges", std::move(edges)}});
    }

    result.success = st.best.has_value();
    result.best = st.best;
    result.stats = st.stats;
    result.allocations = st.allocations;
    result.elapsed_ms = ms_since(t0);
    st.log = nullptr;
    return result;
}

PlanResult plan(const ProblemDef& problem, const PlannerConfig& config, const Budget& budget, std::uint64_t seed,
                EventLog* log) {
    Planner planner(problem, config, seed);
    return planner.run(budget, log);
}

}  // namespace g3t
