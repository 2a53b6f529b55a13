#include "g3t/guild.hpp"

#include <algorithm>
#include <limits>

#include "g3t/error.hpp"

namespace g3t {

namespace {

constexpr std::size_t kMaxAttemptsPerPoint = 100'000;

std::optional<ProlateHyperspheroid> make_side(const State& a, const State& b, double cost) {
    ProlateHyperspheroid phs(a, b, std::max(cost, distance(a, b)));
    if (phs.degenerate()) return std::nullopt;
    return phs;
}

}  // namespace

BeaconChoice select_beacon(const SolutionPath& path, std::size_t n) {
    const auto& v = path.vertices;
    if (v.size() < 3) throw Error(ErrorCode::NoInteriorVertex, "path has no interior vertex");
    const State& start = v.front();
    const State& goal = v.back();

    // prefix[i] = cost from start to v[i]; suffix[i] = cost from v[i] to goal.
    std::vector<double> prefix(v.size(), 0.0);
    std::vector<double> suffix(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i) prefix[i] = prefix[i - 1] + distance(v[i - 1], v[i]);
    for (std::size_t i = v.size() - 1; i-- > 0;) suffix[i] = suffix[i + 1] + distance(v[i], v[i + 1]);

    std::size_t best = 0;
    double best_measure = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double chord_f = distance(start, v[i]);
        const double chord_b = distance(v[i], goal);
        const double total = phs_measure(std::max(prefix[i], chord_f), chord_f, n) +
                             phs_measure(std::max(suffix[i], chord_b), chord_b, n);
        if (total < best_measure) {
            best_measure = total;
            best = i;
        }
    }

    BeaconChoice choice;
    choice.index = best;
    choice.beacon = v[best];
    choice.front_path.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    choice.back_path.assign(v.begin() + static_cast<std::ptrdiff_t>(best), v.end());
    choice.front_cost = prefix[best];
    choice.back_cost = suffix[best];
    choice.measure = best_measure;
    return choice;
}

GreedyCosts greedy_costs(const std::vector<State>& front_path, const std::vector<State>& back_path,
                         const State& beacon, const State& start, const State& goal) {
    GreedyCosts out;
    out.front_cost = -1.0;
    for (const auto& v : front_path) {
        const double d = distance(start, v) + distance(v, beacon);
        if (d > out.front_cost) {
            out.front_cost = d;
            out.front_vertex = v;
        }
    }
    out.back_cost = -1.0;
    for (const auto& v : back_path) {
        const double d = distance(beacon, v) + distance(v, goal);
        if (d > out.back_cost) {
            out.back_cost = d;
            out.back_vertex = v;
        }
    }
    if (front_path.empty()) out.front_cost = distance(start, beacon);
    if (back_path.empty()) out.back_cost = distance(beacon, goal);
    return out;
}

GuildSubsets::GuildSubsets(State start, State goal, BeaconChoice choice, GreedyCosts greedy)
    : start_(std::move(start)), goal_(std::move(goal)), choice_(std::move(choice)), greedy_(std::move(greedy)) {
    front_ = make_side(start_, choice_.beacon, greedy_.front_cost);
    back_ = make_side(choice_.beacon, goal_, greedy_.back_cost);
}

double GuildSubsets::front_measure() const { return front_ ? front_->measure() : 0.0; }
double GuildSubsets::back_measure() const { return back_ ? back_->measure() : 0.0; }

bool GuildSubsets::in_spheroids(const State& v) const {
    return (front_ && front_->contains(v)) || (back_ && back_->contains(v));
}

bool GuildSubsets::contains(const ProblemDef& p, const State& v) const {
    return in_spheroids(v) && point_in_free(p, v);
}

GuildSubsets build_g2(const SolutionPath& path, const ProblemDef& p) {
    BeaconChoice choice = select_beacon(path, p.dim());
    const State& start = path.vertices.front();
    const State& goal = path.vertices.back();
    GreedyCosts greedy = greedy_costs(choice.front_path, choice.back_path, choice.beacon, start, goal);
    return GuildSubsets(start, goal, std::move(choice), std::move(greedy));
}

std::vector<State> g2_sample(const GuildSubsets& g2, const ProblemDef& p, Rng& rng, std::size_t count,
                             G2DrawStats* stats) {
    std::vector<State> out;
    if (count == 0) return out;
    if (g2.empty()) throw Error(ErrorCode::SubsetSaturated, "both greedy subsets are degenerate");
    const double front = g2.front_measure();
    const double back = g2.back_measure();
    const double p_front = front / (front + back);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.reserve(count);
    while (out.size() < count) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < kMaxAttemptsPerPoint; ++attempt) {
            if (stats) ++stats->attempts;
            const bool use_front = unit(rng) < p_front;
            const ProlateHyperspheroid& side = use_front ? *g2.front() : *g2.back();
            State v = side.sample(rng);
            if (!point_in_free(p, v)) continue;
            if (stats) ++(use_front ? stats->front : stats->back);
            out.push_back(std::move(v));
            accepted = true;
            break;
        }
        if (!accepted) throw Error(ErrorCode::SubsetSaturated, "greedy subset rejection sampling exhausted");
    }
    return out;
}

}  // namespace g3t
