#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

#include "g3t/error.hpp"
#include "g3t/space.hpp"
#include "test_util.hpp"

using namespace g3t;
using g3t::test::box;
using g3t::test::vec;
using g3t::test::world2;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected g3t::Error";
    return ErrorCode::ParseError;
}

// Fine point sampling along a segment; a slab-test miss needs an
// intersection shorter than the step, which random boxes essentially never produce.
bool dense_segment_free(const ProblemDef& p, const State& a, const State& b) {
    constexpr int kSteps = 20000;
    for (int k = 0; k <= kSteps; ++k) {
        if (!point_in_free(p, State(a + (static_cast<double>(k) / kSteps) * (b - a)))) return false;
    }
    return true;
}

ProblemDef random_world(std::mt19937_64& rng, std::size_t dim, int boxes) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<AxisBox> obs;
    const State start = State::Constant(static_cast<Eigen::Index>(dim), 0.02);
    const State goal = State::Constant(static_cast<Eigen::Index>(dim), 0.98);
    while (static_cast<int>(obs.size()) < boxes) {
        AxisBox b{State(static_cast<Eigen::Index>(dim)), State(static_cast<Eigen::Index>(dim))};
        for (Eigen::Index i = 0; i < b.min.size(); ++i) {
            const double c = u(rng);
            const double h = 0.02 + 0.15 * u(rng);
            b.min[i] = c - h;
            b.max[i] = c + h;
        }
        if (b.contains(start) || b.contains(goal)) continue;
        obs.push_back(b);
    }
    return ProblemDef(dim, obs, start, {goal});
}

}  // namespace

TEST(PointInFree, InsideObstacleIsBlocked) {
    const auto p = world2({box({0.4, 0.4}, {0.6, 0.6})});
    EXPECT_FALSE(point_in_free(p, vec({0.5, 0.5})));
    EXPECT_TRUE(point_in_free(p, vec({0.2, 0.2})));
}

TEST(PointInFree, FaceContactIsCollision) {
    const auto p = world2({box({0.4, 0.4}, {0.6, 0.6})});
    EXPECT_FALSE(point_in_free(p, vec({0.4, 0.45})));
    EXPECT_FALSE(point_in_free(p, vec({0.6, 0.6})));
}

TEST(PointInFree, OutsideCubeIsBlocked) {
    const auto p = world2({});
    EXPECT_FALSE(point_in_free(p, vec({-1e-12, 0.5})));
    EXPECT_FALSE(point_in_free(p, vec({0.5, 1.0 + 1e-12})));
    EXPECT_TRUE(point_in_free(p, vec({0.0, 1.0})));
}

TEST(ProblemDef, RejectsBlockedEndpointsAndBadShapes) {
    EXPECT_EQ(code_of([] { (void)world2({box({0.0, 0.4}, {0.2, 0.6})}); }), ErrorCode::InvalidEndpoint);
    EXPECT_EQ(code_of([] { (void)ProblemDef(2, {}, vec({0.1, 0.5, 0.5}), {vec({0.9, 0.5})}); }),
              ErrorCode::DimensionError);
    EXPECT_EQ(code_of([] { (void)ProblemDef(2, {}, vec({0.1, 0.5}), {}); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { (void)ProblemDef(0, {}, State(0), {State(0)}); }), ErrorCode::InvalidDimension);
}

TEST(SegmentValid, DiagonalThroughCentralBox) {
    const auto p = ProblemDef(2, {box({0.4, 0.4}, {0.6, 0.6})}, vec({0.0, 0.0}), {vec({1.0, 1.0})});
    EXPECT_FALSE(segment_valid(p, vec({0.0, 0.0}), vec({1.0, 1.0})));
}

TEST(SegmentValid, DisjointRangesPass) {
    const auto p = ProblemDef(2, {box({0.4, 0.2}, {0.6, 0.3})}, vec({0.0, 0.0}), {vec({1.0, 0.0})});
    EXPECT_TRUE(segment_valid(p, vec({0.0, 0.0}), vec({1.0, 0.0})));
}

TEST(SegmentValid, SlabIntervalsDisjointNearCorner) {
    // x enters the box for t in [0.5, 1], y only for t in [0, 0.4167].
    const auto p = world2({box({0.45, 0.45}, {0.55, 0.55})}, vec({0.4, 0.5}), vec({0.9, 0.9}));
    EXPECT_TRUE(segment_valid(p, vec({0.4, 0.5}), vec({0.5, 0.62})));
}

TEST(SegmentValid, BlockedEndpointThrows) {
    const auto p = world2({box({0.4, 0.4}, {0.6, 0.6})});
    EXPECT_EQ(code_of([&] { (void)segment_valid(p, vec({0.5, 0.5}), vec({0.9, 0.5})); }), ErrorCode::InvalidEndpoint);
}

TEST(SegmentValid, MatchesDensePointSampling) {
    std::mt19937_64 rng(11);
    int disagreements = 0;
    for (int w = 0; w < 20; ++w) {
        const auto p = random_world(rng, 2 + static_cast<std::size_t>(w % 2), 6);
        for (int s = 0; s < 50; ++s) {
            const auto pts = sample_free_uniform(p, rng, 2);
            if (segment_valid(p, pts[0], pts[1]) != dense_segment_free(p, pts[0], pts[1])) ++disagreements;
        }
    }
    EXPECT_EQ(disagreements, 0);
}

TEST(SparseCheck, MidpointHitsThinWall) {
    const auto p = ProblemDef(2, {box({0.49, 0.0}, {0.51, 1.0})}, vec({0.0, 0.5}), {vec({1.0, 0.5})});
    EXPECT_FALSE(sparse_segment_check(p, vec({0.0, 0.5}), vec({1.0, 0.5}), 1));
}

TEST(SparseCheck, LazyFalsePositiveBetweenPoints) {
    const auto p = ProblemDef(2, {box({0.30, 0.0}, {0.32, 1.0})}, vec({0.0, 0.5}), {vec({1.0, 0.5})});
    EXPECT_TRUE(sparse_segment_check(p, vec({0.0, 0.5}), vec({1.0, 0.5}), 1));
    EXPECT_FALSE(segment_valid(p, vec({0.0, 0.5}), vec({1.0, 0.5})));
    // Level 3 points are multiples of 1/8 and still miss; 5/16 = 0.3125 at level 4 hits.
    EXPECT_TRUE(sparse_segment_check(p, vec({0.0, 0.5}), vec({1.0, 0.5}), 3));
    EXPECT_FALSE(sparse_segment_check(p, vec({0.0, 0.5}), vec({1.0, 0.5}), 4));
}

TEST(SparseCheck, LevelOutOfRangeThrows) {
    const auto p = world2({});
    EXPECT_EQ(code_of([&] { (void)sparse_segment_check(p, vec({0.1, 0.1}), vec({0.2, 0.2}), 0); }),
              ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([&] { (void)sparse_segment_check(p, vec({0.1, 0.1}), vec({0.2, 0.2}), 63); }),
              ErrorCode::InvalidParameter);
}

TEST(SparseCheck, AgreesWithLiteralPointEvaluation) {
    std::mt19937_64 rng(5);
    int mismatches = 0;
    int checked = 0;
    for (int w = 0; w < 20; ++w) {
        const auto p = random_world(rng, 2 + static_cast<std::size_t>(w % 3), 8);
        const auto pts = sample_free_uniform(p, rng, 80);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            for (int level = 1; level <= 10; ++level) {
                ++checked;
                if (sparse_segment_check(p, pts[i], pts[i + 1], level) !=
                    g3t::test::sparse_by_points(p, pts[i], pts[i + 1], level)) {
                    ++mismatches;
                }
            }
        }
    }
    EXPECT_GT(checked, 5000);
    EXPECT_EQ(mismatches, 0);
}

TEST(SparseCheck, OneSidedAgainstExactCheck) {
    std::mt19937_64 rng(8);
    for (int w = 0; w < 20; ++w) {
        const auto p = random_world(rng, 2 + static_cast<std::size_t>(w % 3), 8);
        const auto pts = sample_free_uniform(p, rng, 100);
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            const bool valid = segment_valid(p, pts[i], pts[i + 1]);
            for (int level = 1; level <= 12; ++level) {
                const bool lazy = sparse_segment_check(p, pts[i], pts[i + 1], level);
                if (valid) {
                    ASSERT_TRUE(lazy);
                }
                if (!lazy) {
                    ASSERT_FALSE(valid);
                }
            }
        }
    }
}

TEST(SparseCheck, RejectionsPersistAtHigherLevels) {
    std::mt19937_64 rng(21);
    const auto p = random_world(rng, 2, 10);
    const auto pts = sample_free_uniform(p, rng, 200);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        bool rejected = false;
        for (int level = 1; level <= 14; ++level) {
            const bool ok = sparse_segment_check(p, pts[i], pts[i + 1], level);
            if (rejected) {
                ASSERT_FALSE(ok);
            }
            rejected = rejected || !ok;
        }
    }
}

TEST(SampleFreeUniform, CountsAndSupport) {
    Rng rng(3);
    const auto empty = world2({});
    EXPECT_TRUE(sample_free_uniform(empty, rng, 0).empty());
    const auto pts = sample_free_uniform(empty, rng, 100);
    ASSERT_EQ(pts.size(), 100U);
    for (const auto& v : pts) EXPECT_TRUE((v.array() >= 0.0).all() && (v.array() <= 1.0).all());

    const auto half = ProblemDef(3, {box({0.0, 0.0, 0.0}, {0.5, 1.0, 1.0})}, vec({0.7, 0.5, 0.5}), {vec({0.9, 0.5, 0.5})});
    for (const auto& v : sample_free_uniform(half, rng, 1000)) EXPECT_GT(v[0], 0.5);
}

TEST(SampleFreeUniform, DeterministicForSeed) {
    const auto p = world2({box({0.2, 0.2}, {0.4, 0.9})});
    Rng a(77);
    Rng b(77);
    const auto xs = sample_free_uniform(p, a, 50);
    const auto ys = sample_free_uniform(p, b, 50);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(xs[i], ys[i]);
}

TEST(FreeSpaceMeasure, InclusionExclusionMatchesMonteCarlo) {
    const auto p = world2({box({0.2, 0.2}, {0.4, 0.6}), box({0.3, 0.5}, {0.5, 0.8}), box({0.7, 0.0}, {0.8, 0.3})});
    // 1 - (0.08 + 0.06 + 0.03) + 0.01 overlap
    EXPECT_NEAR(free_space_measure(p), 0.84, 1e-12);
    Rng rng(4);
    int free = 0;
    constexpr int kDraws = 200000;
    for (int i = 0; i < kDraws; ++i) free += point_in_free(p, sample_cube(2, rng)) ? 1 : 0;
    EXPECT_NEAR(static_cast<double>(free) / kDraws, 0.84, 0.005);
}

TEST(SolutionPath, CostAndRevalidation) {
    const auto p = world2({box({0.45, 0.3}, {0.55, 0.7})});
    const auto around = SolutionPath::from_vertices({vec({0.1, 0.5}), vec({0.45, 0.71}), vec({0.55, 0.71}), vec({0.9, 0.5})});
    EXPECT_NEAR(around.cost, path_cost(around.vertices), 1e-15);
    EXPECT_TRUE(path_is_valid(p, around));
    const auto through = SolutionPath::from_vertices({vec({0.1, 0.5}), vec({0.9, 0.5})});
    EXPECT_FALSE(path_is_valid(p, through));
    auto wrong_cost = around;
    wrong_cost.cost += 1e-6;
    EXPECT_FALSE(path_is_valid(p, wrong_cost));
    const auto wrong_goal = SolutionPath::from_vertices({vec({0.1, 0.5}), vec({0.2, 0.5})});
    EXPECT_FALSE(path_is_valid(p, wrong_goal));
}

TEST(Scene, JsonRoundTrip) {
    const ProblemDef p(3, {box({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6})}, vec({0.9, 0.9, 0.9}),
                       {vec({0.05, 0.05, 0.05}), vec({0.95, 0.05, 0.5})});
    EXPECT_EQ(parse_scene(scene_to_json(p)), p);
    const auto path = std::filesystem::temp_directory_path() / "g3t_scene_roundtrip.json";
    save_scene(p, path.string());
    EXPECT_EQ(load_scene(path.string()), p);
    std::filesystem::remove(path);
}

TEST(Scene, MalformedInputIsParseError) {
    EXPECT_EQ(code_of([] { (void)parse_scene("{not json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { (void)parse_scene(R"({"dim": 2, "start": [0.1, 0.5]})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { (void)load_scene("/nonexistent/scene.json"); }), ErrorCode::ParseError);
}

TEST(ProblemDef, HeuristicThroughUsesNearestGoal) {
    const ProblemDef p(2, {}, vec({0.0, 0.0}), {vec({1.0, 0.0}), vec({0.0, 0.5})});
    EXPECT_NEAR(p.min_goal_chord(), 0.5, 1e-15);
    EXPECT_NEAR(p.heuristic_through(vec({0.0, 0.25})), 0.5, 1e-15);
}
