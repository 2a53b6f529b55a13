#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "g3t/error.hpp"
#include "g3t/rgg.hpp"
#include "test_util.hpp"

using namespace g3t;
using g3t::test::vec;

namespace {

std::vector<State> random_states(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<State> out(n, State(static_cast<Eigen::Index>(dim)));
    for (auto& s : out) {
        for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = u(rng);
    }
    return out;
}

// Linear scan oracle with the same ordering contract.
std::vector<Neighbor> brute_neighbors(const SampleStore& store, const State& v, double r, VertexId self) {
    std::vector<Neighbor> out;
    for (VertexId id : store.ids()) {
        if (id == self) continue;
        const double d = (store.state(id) - v).norm();
        if (d <= r) out.push_back({id, d});
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    return out;
}

}  // namespace

TEST(RggRadius, HandValues) {
    RadiusParams params;
    params.eta = 1.001;
    params.dim = 2;
    params.measure_min = 1.0;
    params.rewire_factor = 1.0;
    const double gamma = 2.0 * 1.001 * std::sqrt(1.5) * std::sqrt(1.0 / std::numbers::pi);
    EXPECT_NEAR(rgg_gamma(params), gamma, 1e-12);
    EXPECT_NEAR(rgg_gamma(params), 1.3832, 5e-4);
    EXPECT_NEAR(rgg_radius(100, params), 0.2969, 1e-3);
    params.rewire_factor = 1.2;
    EXPECT_NEAR(rgg_radius(100, params), 0.3563, 1e-3);
    EXPECT_LT(rgg_radius(1000, params), rgg_radius(100, params));
}

TEST(RggRadius, MonotoneInSamplesAndMeasure) {
    for (std::size_t n = 1; n <= 8; ++n) {
        RadiusParams params;
        params.dim = n;
        double prev = rgg_radius(3, params);
        for (std::size_t m = 4; m < 5000; m += 7) {
            const double r = rgg_radius(m, params);
            ASSERT_LT(r, prev);
            prev = r;
        }
        RadiusParams small = params;
        small.measure_min = 0.3;
        EXPECT_LT(rgg_radius(500, small), rgg_radius(500, params));
    }
}

TEST(RggRadius, RejectsBadParameters) {
    RadiusParams params;
    EXPECT_THROW((void)rgg_radius(1, params), Error);
    params.eta = 1.0;
    EXPECT_THROW((void)rgg_radius(10, params), Error);
    params = {};
    params.rewire_factor = 0.9;
    EXPECT_THROW((void)rgg_radius(10, params), Error);
    params = {};
    params.measure_min = 0.0;
    EXPECT_THROW((void)rgg_radius(10, params), Error);
}

TEST(GammaStar, HandValuesAndRegime) {
    EXPECT_NEAR(gamma_star(1), 0.5, 1e-12);
    EXPECT_NEAR(gamma_star(2), 1.0 / std::sqrt(std::numbers::pi), 1e-12);
    RadiusParams params;
    EXPECT_GT(rgg_gamma(params), gamma_star(2));
}

TEST(SampleStore, EmptyAndSmallQueries) {
    SampleStore store(2);
    EXPECT_TRUE(store.neighbors(vec({0.0, 0.0}), 0.5).empty());
    store.add(vec({0.0, 0.0}));
    store.add(vec({0.1, 0.0}));
    EXPECT_TRUE(store.neighbors(vec({0.0, 0.0}), 0.05).empty());
}

TEST(SampleStore, HandDistances) {
    SampleStore store(2);
    const auto ids = store.add_batch(std::vector<State>{vec({0.5, 0.62}), vec({0.5, 0.70})});
    const auto nb = store.neighbors(vec({0.4, 0.5}), 0.2);
    ASSERT_EQ(nb.size(), 1U);
    EXPECT_EQ(nb[0].id, ids[0]);
    EXPECT_NEAR(nb[0].distance, std::sqrt(0.01 + 0.0144), 1e-12);
}

TEST(SampleStore, CommonNeighborsHandCase) {
    SampleStore store(2);
    const auto s = store.add(vec({0.4, 0.5}));
    const auto t = store.add(vec({0.6, 0.5}));
    const auto via = store.add(vec({0.5, 0.62}));
    store.add(vec({0.9, 0.9}));
    EXPECT_EQ(store.common_neighbors(s, t, 0.2), std::vector<VertexId>{via});
    EXPECT_EQ(store.common_neighbors(vec({0.4, 0.5}), vec({0.6, 0.5}), 0.2), (std::vector<VertexId>{via}));
    EXPECT_TRUE(store.common_neighbors(s, t, 0.1).empty());
}

TEST(SampleStore, NeighborsMatchLinearScan) {
    std::mt19937_64 rng(3);
    for (std::size_t dim : {2U, 4U, 8U}) {
        SampleStore store(dim);
        // Several batches so the index is rebuilt, plus removals.
        for (int b = 0; b < 4; ++b) store.add_batch(random_states(rng, 500, dim));
        std::vector<VertexId> drop;
        for (VertexId id = 0; id < 2000; id += 7) drop.push_back(id);
        store.remove(drop);
        const double r = dim == 2 ? 0.08 : (dim == 4 ? 0.3 : 0.7);
        std::uniform_int_distribution<VertexId> pick(0, 1999);
        for (int q = 0; q < 500; ++q) {
            VertexId id = pick(rng);
            if (!store.contains(id)) continue;
            const auto got = store.neighbors(id, r);
            const auto want = brute_neighbors(store, store.state(id), r, id);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                ASSERT_EQ(got[i].id, want[i].id);
                ASSERT_DOUBLE_EQ(got[i].distance, want[i].distance);
            }
        }
    }
}

TEST(SampleStore, CommonNeighborsMatchSetIntersection) {
    std::mt19937_64 rng(12);
    SampleStore store(2);
    store.add_batch(random_states(rng, 200, 2));
    for (VertexId s = 0; s < 40; ++s) {
        const VertexId t = s + 100;
        std::set<VertexId> ns;
        std::set<VertexId> nt;
        for (const auto& n : brute_neighbors(store, store.state(s), 0.25, s)) ns.insert(n.id);
        for (const auto& n : brute_neighbors(store, store.state(t), 0.25, t)) nt.insert(n.id);
        std::vector<VertexId> want;
        std::set_intersection(ns.begin(), ns.end(), nt.begin(), nt.end(), std::back_inserter(want));
        std::erase_if(want, [&](VertexId v) { return v == s || v == t; });
        EXPECT_EQ(store.common_neighbors(s, t, 0.25), want);
    }
}

TEST(SampleStore, IdsAreStableAndDuplicatesDistinct) {
    SampleStore store(2);
    const auto a = store.add_batch(std::vector<State>(100, vec({0.3, 0.3})));
    EXPECT_EQ(store.size(), 100U);
    EXPECT_EQ(a.front(), 0U);
    EXPECT_EQ(a.back(), 99U);
    const auto b = store.add(vec({0.3, 0.3}));
    EXPECT_EQ(b, 100U);
    // The query point coincides with every stored vertex; all are excluded.
    EXPECT_TRUE(store.neighbors(vec({0.3, 0.3}), 0.1).empty());
    EXPECT_EQ(store.neighbors(b, 0.1).size(), 100U);
    EXPECT_THROW(store.add(vec({0.3, 0.3, 0.3})), Error);
}

TEST(Prune, HandCases) {
    const ProblemDef p(2, {}, vec({0.0, 0.0}), {vec({1.0, 0.0})});
    SampleStore store(2);
    const auto start = store.add(p.start());
    const auto goal = store.add(p.goals()[0]);
    const auto far = store.add(vec({0.5, 0.5}));
    const auto on_chord = store.add(vec({0.5, 0.0}));
    const std::vector<VertexId> keep{start, goal};
    EXPECT_EQ(prune(store, p, std::numeric_limits<double>::infinity(), keep), 0U);
    EXPECT_EQ(prune(store, p, 1.2, keep), 1U);
    EXPECT_FALSE(store.contains(far));
    EXPECT_TRUE(store.contains(on_chord));
}

TEST(Prune, NeverRemovesInformedMembers) {
    std::mt19937_64 rng(30);
    const ProblemDef p(3, {}, vec({0.2, 0.2, 0.2}), {vec({0.8, 0.7, 0.6})});
    SampleStore store(3);
    store.add_batch(random_states(rng, 3000, 3));
    const double c = 1.1;
    std::vector<VertexId> inside;
    for (VertexId id : store.ids()) {
        if (p.heuristic_through(store.state(id)) < c) inside.push_back(id);
    }
    prune(store, p, c, {});
    for (VertexId id : inside) EXPECT_TRUE(store.contains(id));
    EXPECT_EQ(store.size(), inside.size());
}
