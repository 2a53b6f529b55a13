#pragma once

#include <initializer_list>
#include <vector>

#include "g3t/space.hpp"

namespace g3t::test {

inline State vec(std::initializer_list<double> xs) {
    State v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline AxisBox box(std::initializer_list<double> lo, std::initializer_list<double> hi) { return {vec(lo), vec(hi)}; }

inline ProblemDef world2(std::vector<AxisBox> boxes, State start = vec({0.1, 0.5}), State goal = vec({0.9, 0.5})) {
    return ProblemDef(2, std::move(boxes), std::move(start), {std::move(goal)});
}

/// Literal lazy check: endpoints plus the 2^level - 1 interior points a + (k / 2^level)(b - a).
inline bool sparse_by_points(const ProblemDef& p, const State& a, const State& b, int level) {
    if (!point_in_free(p, a) || !point_in_free(p, b)) return false;
    const long steps = 1L << level;
    for (long k = 1; k < steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps);
        if (!point_in_free(p, State(a + t * (b - a)))) return false;
    }
    return true;
}

}  // namespace g3t::test
