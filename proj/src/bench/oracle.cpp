#include "g3t/bench/oracle.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "g3t/error.hpp"

namespace g3t::bench {

namespace {

constexpr double kCornerInflation = 1e-9;

}  // namespace

double shortest_path_oracle_2d(const ProblemDef& p) {
    if (p.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "the visibility-graph oracle is 2D only");
    std::vector<State> nodes{p.start()};
    const std::size_t first_goal = nodes.size();
    for (const auto& g : p.goals()) nodes.push_back(g);
    for (const auto& box : p.obstacles()) {
        for (const double x : {box.min[0] - kCornerInflation, box.max[0] + kCornerInflation}) {
            for (const double y : {box.min[1] - kCornerInflation, box.max[1] + kCornerInflation}) {
                State c(2);
                c << x, y;
                if (point_in_free(p, c)) nodes.push_back(std::move(c));
            }
        }
    }

    const std::size_t n = nodes.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<char> done(n, 0);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[0] = 0.0;
    open.emplace(0.0, 0);
    while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (u >= first_goal && u < first_goal + p.goals().size()) return d;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double nd = d + distance(nodes[u], nodes[v]);
            if (!(nd < dist[v])) continue;
            if (!segment_valid(p, nodes[u], nodes[v])) continue;
            dist[v] = nd;
            open.emplace(nd, v);
        }
    }
    return inf;
}

}  // namespace g3t::bench
