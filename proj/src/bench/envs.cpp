#include "g3t/bench/envs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "g3t/error.hpp"

namespace g3t::bench {

namespace {

constexpr std::uint64_t kWallSeedBase = 0x44573230'00000000ULL;
constexpr std::uint64_t kRectSeedBase = 0x52523230'00000000ULL;
constexpr std::size_t kMaxRedraws = 1000;
constexpr double kGapMargin = 0.05;  // gaps stay this far from the cube edge and from each other

State filled(std::size_t dim, double first, double second, double rest) {
    State v = State::Constant(static_cast<Eigen::Index>(dim), rest);
    v[0] = first;
    v[1] = second;
    return v;
}

AxisBox slab(std::size_t dim, double x0, double x1, double y0, double y1) {
    AxisBox box{State::Zero(static_cast<Eigen::Index>(dim)), State::Ones(static_cast<Eigen::Index>(dim))};
    box.min[0] = x0;
    box.max[0] = x1;
    box.min[1] = y0;
    box.max[1] = y1;
    return box;
}

void require_dim(std::size_t dim) {
    if (dim < 2) throw Error(ErrorCode::InvalidDimension, "benchmark worlds need dim >= 2");
}

}  // namespace

std::string EnvSpec::family() const {
    switch (kind) {
        case EnvKind::DividingWalls: return "dw";
        case EnvKind::RandomRects: return "rr";
        case EnvKind::SingleWall: return "wall";
        case EnvKind::File: return path;
    }
    return "unknown";
}

ProblemDef gen_dividing_walls(std::size_t dim, std::uint64_t variation) {
    require_dim(dim);
    Rng rng(kWallSeedBase + variation);
    std::uniform_real_distribution<double> height(kGapMin, kGapMax);
    std::vector<AxisBox> boxes;
    for (const double centre : {0.35, 0.65}) {
        const double x0 = centre - 0.5 * kWallThickness;
        const double x1 = centre + 0.5 * kWallThickness;
        std::array<std::pair<double, double>, 2> gaps{};
        while (true) {
            for (auto& gap : gaps) {
                const double h = height(rng);
                std::uniform_real_distribution<double> low(kGapMargin, 1.0 - kGapMargin - h);
                gap.first = low(rng);
                gap.second = gap.first + h;
            }
            std::sort(gaps.begin(), gaps.end());
            if (gaps[1].first - gaps[0].second >= kGapMargin) break;
        }
        // The wall is the complement of the two open gaps along y.
        boxes.push_back(slab(dim, x0, x1, 0.0, gaps[0].first));
        boxes.push_back(slab(dim, x0, x1, gaps[0].second, gaps[1].first));
        boxes.push_back(slab(dim, x0, x1, gaps[1].second, 1.0));
    }
    return ProblemDef(dim, std::move(boxes), filled(dim, 0.1, 0.5, 0.5), {filled(dim, 0.9, 0.5, 0.5)});
}

std::size_t default_rect_count(std::size_t dim) {
    if (dim <= 2) return 10;
    if (dim <= 4) return 40;
    if (dim <= 8) return 20;
    return 10;
}

ProblemDef gen_random_rects(std::size_t dim, std::uint64_t seed, std::optional<std::size_t> count) {
    require_dim(dim);
    const std::size_t n_boxes = count.value_or(default_rect_count(dim));
    const State start = filled(dim, 0.5, 0.4, 0.5);
    const State goal = State::Constant(static_cast<Eigen::Index>(dim), 0.9);
    Rng rng(kRectSeedBase + seed);
    std::uniform_real_distribution<double> side(0.05, 0.4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<AxisBox> boxes;
    boxes.reserve(n_boxes);
    const auto n = static_cast<Eigen::Index>(dim);
    for (std::size_t i = 0; i < n_boxes; ++i) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt <= kMaxRedraws && !placed; ++attempt) {
            AxisBox box{State(n), State(n)};
            for (Eigen::Index k = 0; k < n; ++k) {
                const double half = 0.5 * side(rng);
                const double c = unit(rng);
                box.min[k] = std::max(0.0, c - half);
                box.max[k] = std::min(1.0, c + half);
            }
            if (!box.contains(start) && !box.contains(goal)) {
                boxes.push_back(std::move(box));
                placed = true;
            }
        }
        if (!placed) throw Error(ErrorCode::GeneratorSaturated, "rectangle redraws exhausted");
    }
    return ProblemDef(dim, std::move(boxes), start, {goal});
}

ProblemDef gen_single_wall(std::uint64_t index) {
    const double h = 0.55 + 0.04 * static_cast<double>(index % kSingleWallInstances);
    const bool from_bottom = index % 2 == 0;
    AxisBox box = from_bottom ? slab(2, 0.45, 0.55, 0.0, h) : slab(2, 0.45, 0.55, 1.0 - h, 1.0);
    return ProblemDef(2, {box}, filled(2, 0.1, 0.5, 0.5), {filled(2, 0.9, 0.5, 0.5)});
}

ProblemDef make_problem(const EnvSpec& spec) {
    switch (spec.kind) {
        case EnvKind::DividingWalls: return gen_dividing_walls(spec.dim, spec.variation);
        case EnvKind::RandomRects: return gen_random_rects(spec.dim, spec.variation, spec.count);
        case EnvKind::SingleWall: return gen_single_wall(spec.variation);
        case EnvKind::File: return load_scene(spec.path);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown environment kind");
}

}  // namespace g3t::bench
