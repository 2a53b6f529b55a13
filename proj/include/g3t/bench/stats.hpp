#pragma once
//
// Order-statistic summaries and the sign test used for planner comparisons.

#include <cstddef>
#include <span>
#include <utility>

namespace g3t::bench {

struct MedianCI {
    double lower = 0.0;
    double median = 0.0;
    double upper = 0.0;
};

/// 1-based order-statistic indices (j, k) of the nonparametric 99% median CI:
/// j is one past the largest i with Binomial(n, 1/2) CDF(i) <= 0.005 and
/// k = n + 1 - j. Falls back to (1, n) when n is too small.
[[nodiscard]] std::pair<std::size_t, std::size_t> median_ci99_indices(std::size_t n);

/// Median (mean of the middle pair for even n) and CI bounds; infinite
/// samples sort last. Empty input yields NaNs.
[[nodiscard]] MedianCI median_ci99(std::span<const double> samples);

/// P(X <= k) for X ~ Binomial(n, 1/2).
[[nodiscard]] double binomial_half_cdf(std::size_t k, std::size_t n);

/// One-sided sign test p-value for "wins beats losses": P(X >= wins) with
/// X ~ Binomial(wins + losses, 1/2). Ties must be dropped by the caller.
[[nodiscard]] double sign_test_p(std::size_t wins, std::size_t losses);

}  // namespace g3t::bench
