#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "g3t/error.hpp"
#include "g3t/spheroid.hpp"
#include "test_util.hpp"

using namespace g3t;
using g3t::test::box;
using g3t::test::vec;

namespace {

// Independent closed forms for the unit-ball volume: V_1 = 2, V_2 = pi,
// V_n = 2 pi / n * V_{n-2}.
double ball_by_recurrence(std::size_t n) {
    if (n == 1) return 2.0;
    if (n == 2) return std::numbers::pi;
    return 2.0 * std::numbers::pi / static_cast<double>(n) * ball_by_recurrence(n - 2);
}

// Fraction of the spheroid's bounding box inside the spheroid, times the box volume.
double monte_carlo_measure(double c, double c_min, std::size_t n, std::uint64_t seed, int draws) {
    const double a = 0.5 * c;
    const double b = 0.5 * std::sqrt(c * c - c_min * c_min);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-a, a);
    std::uniform_real_distribution<double> uy(-b, b);
    Eigen::VectorXd f1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd f2 = f1;
    f1[0] = -0.5 * c_min;
    f2[0] = 0.5 * c_min;
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    long inside = 0;
    for (int i = 0; i < draws; ++i) {
        v[0] = ux(rng);
        for (Eigen::Index k = 1; k < v.size(); ++k) v[k] = uy(rng);
        if ((v - f1).norm() + (v - f2).norm() < c) ++inside;
    }
    return static_cast<double>(inside) / draws * (2.0 * a) * std::pow(2.0 * b, static_cast<double>(n - 1));
}

}  // namespace

TEST(UnitBall, MatchesRecurrence) {
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_NEAR(unit_ball_measure(n), ball_by_recurrence(n), 1e-12) << n;
    EXPECT_NEAR(unit_ball_measure(4), std::numbers::pi * std::numbers::pi / 2.0, 1e-12);
}

TEST(PhsMeasure, HandValues) {
    EXPECT_EQ(phs_measure(1.0, 1.0, 2), 0.0);
    // Ellipse with semi-axes 0.5 and 0.3.
    EXPECT_NEAR(phs_measure(1.0, 0.8, 2), std::numbers::pi * 0.5 * 0.3, 1e-12);
    EXPECT_NEAR(phs_measure(1.0, 0.8, 2), 0.4712, 1e-4);
    EXPECT_NEAR(phs_measure(2.0, 1.0, 3), std::numbers::pi, 1e-12);
}

TEST(PhsMeasure, AgreesWithMonteCarlo) {
    for (std::size_t n : {2U, 3U, 4U}) {
        const double exact = phs_measure(1.3, 1.0, n);
        EXPECT_NEAR(monte_carlo_measure(1.3, 1.0, n, 17 + n, 1'000'000) / exact, 1.0, 0.01) << n;
    }
}

TEST(PhsMeasure, MonotoneInTransverseCost) {
    for (std::size_t n = 1; n <= 6; ++n) {
        double prev = phs_measure(1.0, 1.0, n);
        EXPECT_EQ(prev, 0.0);
        for (double c = 1.01; c < 3.0; c += 0.01) {
            const double m = phs_measure(c, 1.0, n);
            EXPECT_GT(m, prev);
            prev = m;
        }
    }
}

TEST(PhsMeasure, BelowFocalDistanceThrows) {
    try {
        (void)phs_measure(0.9, 1.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSpheroid);
    }
}

TEST(Spheroid, StrictContainment) {
    const ProlateHyperspheroid phs(vec({0.0, 0.0}), vec({1.0, 0.0}), 1.2);
    EXPECT_TRUE(phs.contains(vec({0.0, 0.0})));
    EXPECT_TRUE(phs.contains(vec({0.5, 0.3})));
    // Focal sum exactly c on the transverse axis tip (-0.1, 0).
    EXPECT_FALSE(phs.contains(vec({-0.1, 0.0})));
    EXPECT_NEAR(phs.conjugate_semi_axis(), 0.5 * std::sqrt(1.44 - 1.0), 1e-15);
    EXPECT_THROW((void)phs.contains(vec({0.0, 0.0, 0.0})), Error);
}

TEST(Spheroid, SamplesStayInsideAndCentre) {
    const ProlateHyperspheroid phs(vec({0.0, 0.0}), vec({1.0, 0.0}), 1.5);
    Rng rng(9);
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
        const State v = phs.sample(rng);
        ASSERT_TRUE(phs.contains(v));
        mean += v;
    }
    mean /= kDraws;
    EXPECT_NEAR(mean[0], 0.5, 0.01);
    EXPECT_NEAR(mean[1], 0.0, 0.01);
}

TEST(Spheroid, SamplingIsUniformOverVolume) {
    // Fraction of draws inside the inner half-scaled copy of the ellipse is 1/4 in 2D.
    const ProlateHyperspheroid phs(vec({0.2, 0.3}), vec({0.7, 0.6}), 0.9);
    const Eigen::MatrixXd basis = phs.basis();
    Rng rng(10);
    int inner = 0;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
        const Eigen::VectorXd local = basis.transpose() * (phs.sample(rng) - phs.center());
        const double r = std::pow(local[0] / phs.transverse_semi_axis(), 2) + std::pow(local[1] / phs.conjugate_semi_axis(), 2);
        if (r < 0.25) ++inner;
    }
    EXPECT_NEAR(static_cast<double>(inner) / kDraws, 0.25, 0.01);
}

TEST(Spheroid, SeedDeterminism) {
    const ProlateHyperspheroid phs(vec({0.1, 0.1, 0.1}), vec({0.9, 0.8, 0.2}), 1.4);
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(phs.sample(a), phs.sample(b));
}

TEST(Spheroid, DegenerateCases) {
    EXPECT_THROW(ProlateHyperspheroid(vec({0.0, 0.0}), vec({1.0, 0.0}), 0.9), Error);
    const ProlateHyperspheroid flat(vec({0.0, 0.0}), vec({1.0, 0.0}), 1.0);
    EXPECT_TRUE(flat.degenerate());
    EXPECT_EQ(flat.measure(), 0.0);
    Rng rng(1);
    EXPECT_THROW((void)flat.sample(rng), Error);
}

TEST(FocalBasis, AxisAlignedAndOrthonormal) {
    EXPECT_TRUE(focal_basis(vec({0.0, 0.0}), vec({1.0, 0.0})).isApprox(Eigen::Matrix2d::Identity()));
    const Eigen::MatrixXd swap = focal_basis(vec({0.0, 0.0}), vec({0.0, 1.0}));
    EXPECT_TRUE(swap.col(0).isApprox(Eigen::Vector2d(0.0, 1.0)));
    EXPECT_NEAR((swap.transpose() * swap - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-12);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        State a(4);
        State b(4);
        for (int i = 0; i < 4; ++i) {
            a[i] = u(rng);
            b[i] = u(rng);
        }
        const Eigen::MatrixXd m = focal_basis(a, b);
        EXPECT_LT((m.transpose() * m - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_TRUE(m.col(0).isApprox((b - a).normalized()));
    }
    try {
        (void)focal_basis(vec({0.3, 0.3}), vec({0.3, 0.3}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateAxis);
    }
}

TEST(InformedSet, MembersSatisfyHeuristicBoundAndFreedom) {
    const ProblemDef p(2, {box({0.45, 0.3}, {0.55, 0.7})}, vec({0.1, 0.5}), {vec({0.9, 0.5})});
    const InformedSet set(p, 1.0);
    Rng rng(6);
    for (int i = 0; i < 5000; ++i) {
        const State v = set.sample(rng, 100000);
        ASSERT_TRUE(point_in_free(p, v));
        ASSERT_LT(p.heuristic_through(v), 1.0);
    }
    EXPECT_NEAR(set.measure_bound(), phs_measure(1.0, 0.8, 2), 1e-15);
}

TEST(InformedSet, MultiGoalUsesRejection) {
    const ProblemDef p(2, {}, vec({0.5, 0.5}), {vec({0.1, 0.1}), vec({0.9, 0.9})});
    const InformedSet set(p, 0.7);
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) ASSERT_LT(p.heuristic_through(set.sample(rng, 100000)), 0.7);
    EXPECT_EQ(set.measure_bound(), 1.0);
}
