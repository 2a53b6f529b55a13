#include "g3t/bench/rrt_connect.hpp"

#include <chrono>
#include <random>
#include <utility>

#include "g3t/error.hpp"

namespace g3t::bench {

namespace {

using Clock = std::chrono::steady_clock;

struct Tree {
    std::vector<State> nodes;
    std::vector<std::size_t> parent;

    explicit Tree(const State& root) : nodes{root}, parent{0} {}

    [[nodiscard]] std::size_t nearest(const State& q) const {
        std::size_t best = 0;
        double best_d = (nodes[0] - q).squaredNorm();
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const double d = (nodes[i] - q).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    // Root-to-node chain.
    [[nodiscard]] std::vector<State> chain(std::size_t i) const {
        std::vector<State> out;
        while (true) {
            out.push_back(nodes[i]);
            if (i == 0) break;
            i = parent[i];
        }
        return {out.rbegin(), out.rend()};
    }
};

enum class Extend { Trapped, Advanced, Reached };

class Search {
public:
    Search(const ProblemDef& p, double max_edge, const Budget& budget)
        : p_(p), max_edge_(max_edge), budget_(budget), t0_(Clock::now()) {}

    [[nodiscard]] bool out_of_budget() const {
        if (stats.full_checks >= budget_.max_full_checks || stats.iterations >= budget_.max_iterations) return true;
        return std::chrono::duration<double, std::milli>(Clock::now() - t0_).count() >= budget_.max_ms;
    }

    Extend extend(Tree& tree, const State& q) {
        ++stats.iterations;
        const std::size_t near = tree.nearest(q);
        const State& from = tree.nodes[near];
        const double d = distance(from, q);
        const bool reaches = d <= max_edge_;
        State to = reaches ? q : State(from + (q - from) * (max_edge_ / d));
        ++stats.full_checks;
        if (!point_in_free(p_, to) || !segment_valid(p_, from, to)) return Extend::Trapped;
        tree.nodes.push_back(std::move(to));
        tree.parent.push_back(near);
        return reaches ? Extend::Reached : Extend::Advanced;
    }

    Extend connect(Tree& tree, const State& q) {
        Extend r = Extend::Advanced;
        while (r == Extend::Advanced && !out_of_budget()) r = extend(tree, q);
        return r;
    }

    [[nodiscard]] double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - t0_).count();
    }

    PlannerStats stats;

private:
    const ProblemDef& p_;
    double max_edge_;
    const Budget& budget_;
    Clock::time_point t0_;
};

}  // namespace

double default_max_edge(std::size_t dim) {
    if (dim <= 2) return 0.5;
    if (dim <= 4) return 1.25;
    return 3.0;
}

PlanResult plan_rrt_connect(const ProblemDef& p, const RrtConfig& config, const Budget& budget, std::uint64_t seed,
                            EventLog* log) {
    if (!(config.goal_bias >= 0.0 && config.goal_bias <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "goal bias must lie in [0, 1]");
    }
    const double max_edge = config.max_edge.value_or(default_max_edge(p.dim()));
    if (!(max_edge > 0.0)) throw Error(ErrorCode::InvalidParameter, "max edge length must be positive");
    if (log != nullptr && log->wants("problem")) log->emit("problem", 0, nlohmann::json::parse(scene_to_json(p)));

    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Search search(p, max_edge, budget);
    Tree start_tree(p.start());
    Tree goal_tree(p.goals().front());
    Tree* a = &start_tree;
    Tree* b = &goal_tree;
    PlanResult result;

    while (!search.out_of_budget()) {
        // Goal bias pulls the active tree toward the other tree's root.
        State q = unit(rng) < config.goal_bias ? b->nodes.front() : sample_cube(p.dim(), rng);
        if (search.extend(*a, q) != Extend::Trapped) {
            const State& target = a->nodes.back();
            if (search.connect(*b, target) == Extend::Reached) {
                std::vector<State> from_start = start_tree.chain(start_tree.nodes.size() - 1);
                std::vector<State> from_goal = goal_tree.chain(goal_tree.nodes.size() - 1);
                // Both chains end at the shared connection state; keep it once.
                from_start.insert(from_start.end(), from_goal.rbegin() + 1, from_goal.rend());
                SolutionPath path = SolutionPath::from_vertices(std::move(from_start));
                SolutionRecord r;
                r.iteration = search.stats.iterations;
                r.full_checks = search.stats.full_checks;
                r.elapsed_ms = search.elapsed_ms();
                r.cost = path.cost;
                r.path = path;
                if (log != nullptr && log->wants("solution")) {
                    nlohmann::json verts = nlohmann::json::array();
                    for (const auto& s : path.vertices) verts.push_back(to_json(s));
                    log->emit("solution", r.iteration,
                              {{"cost", path.cost}, {"full_checks", r.full_checks}, {"vertices", std::move(verts)}});
                }
                result.trace.push_back(std::move(r));
                result.best = std::move(path);
                result.success = true;
                break;
            }
        }
        std::swap(a, b);
    }
    result.stats = search.stats;
    result.elapsed_ms = search.elapsed_ms();
    return result;
}

}  // namespace g3t::bench
