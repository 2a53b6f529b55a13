#include "g3t/grafting.hpp"

#include <algorithm>
#include <cmath>

#include "g3t/error.hpp"

namespace g3t {

namespace {

std::vector<VertexId> sorted_ids(const std::vector<Neighbor>& list) {
    std::vector<VertexId> ids;
    ids.reserve(list.size());
    for (const auto& nb : list) ids.push_back(nb.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Re-expands a vertex and every descendant whose cost just dropped.
void propagate(PlannerState& st, VertexId v, const std::vector<VertexId>& recosted) {
    st.expand(v);
    for (VertexId d : recosted) st.expand(d);
}

}  // namespace

bool edge_pair_less(const EdgePair& a, const EdgePair& b) noexcept {
    if (a.key_cost != b.key_cost) return a.key_cost < b.key_cost;
    if (a.key_effort != b.key_effort) return a.key_effort < b.key_effort;
    return a.via < b.via;
}

EdgePair best_edge_pair(std::span<const EdgePair> candidates) {
    if (candidates.empty()) throw Error(ErrorCode::EmptyQueue, "no edge pairs to choose from");
    return *std::min_element(candidates.begin(), candidates.end(), edge_pair_less);
}

std::vector<EdgePair> edge_pairs(PlannerState& st, VertexId s, VertexId t, double r) {
    std::vector<VertexId> common;
    if (r == st.radius) {
        const auto ns = sorted_ids(st.neighbors_of(s));
        const auto nt = sorted_ids(st.neighbors_of(t));
        std::set_intersection(ns.begin(), ns.end(), nt.begin(), nt.end(), std::back_inserter(common));
        common.erase(std::remove_if(common.begin(), common.end(), [&](VertexId v) { return v == s || v == t; }),
                     common.end());
    } else {
        common = st.store.common_neighbors(s, t, r);
    }
    const State& a = st.state_of(s);
    const State& b = st.state_of(t);
    const double leg_effort = std::ldexp(1.0, st.level) - 1.0;
    std::vector<EdgePair> pairs;
    pairs.reserve(common.size());
    for (VertexId v : common) {
        const State& mid = st.state_of(v);
        pairs.push_back(EdgePair{v, s, t, distance(a, mid) + distance(mid, b), 2.0 * leg_effort});
    }
    std::sort(pairs.begin(), pairs.end(), edge_pair_less);
    return pairs;
}

std::optional<EdgePair> graft(PlannerState& st, VertexId s, VertexId t, double r) {
    ++st.stats.graft_attempts;
    const auto pairs = edge_pairs(st, s, t, r);
    std::size_t tried = 0;
    for (const EdgePair& pair : pairs) {
        const VertexId v = pair.via;
        if (st.failed_via(s, t, v)) continue;
        ++tried;
        if (!st.lazy_check(s, v, st.config.max_resolution) || !st.lazy_check(v, t, st.config.max_resolution)) {
            st.remember_failed_via(s, t, v);
            continue;
        }
        bool leg_ok = true;
        for (const auto& [a, b] : {std::pair{s, v}, std::pair{v, t}}) {
            if (!st.known_valid(a, b) && !st.known_invalid(a, b) && st.checks_exhausted()) return std::nullopt;
            if (!st.full_check(a, b)) {
                leg_ok = false;
                break;
            }
        }
        if (!leg_ok) {
            st.remember_failed_via(s, t, v);
            continue;
        }

        // Both legs are valid; keep whichever connections are improvements.
        const double g_via = st.forward.g(s) + distance(st.state_of(s), st.state_of(v));
        if (g_via < st.forward.g(v)) {
            const auto recosted = st.forward.attach(v, s, g_via, st.store);
            propagate(st, v, recosted);
        }
        const double g_t = st.forward.g(v) + distance(st.state_of(v), st.state_of(t));
        if (g_t < st.forward.g(t) && !st.forward.is_ancestor(t, v)) {
            const auto recosted = st.forward.attach(t, v, g_t, st.store);
            propagate(st, t, recosted);
        }
        ++st.stats.graft_successes;
        if (st.logging("graft-success")) {
            st.emit("graft-success", {{"source", s},
                                      {"via", v},
                                      {"target", t},
                                      {"key_cost", pair.key_cost},
                                      {"from", to_json(st.state_of(s))},
                                      {"mid", to_json(st.state_of(v))},
                                      {"to", to_json(st.state_of(t))}});
        }
        return pair;
    }
    if (st.logging("graft-fail")) {
        st.emit("graft-fail", {{"source", s}, {"target", t}, {"candidates", pairs.size()}, {"tried", tried}});
    }
    return std::nullopt;
}

}  // namespace g3t
