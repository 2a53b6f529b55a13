#include "g3t/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace g3t::bench {

namespace {

constexpr double kTailMass = 0.005;

// log C(n, i) - n log 2, summed in log space to stay finite for large n.
double log_half_pmf(std::size_t i, std::size_t n) {
    const double nd = static_cast<double>(n);
    const double id = static_cast<double>(i);
    return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) - nd * std::log(2.0);
}

}  // namespace

double binomial_half_cdf(std::size_t k, std::size_t n) {
    if (k >= n) return 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i <= k; ++i) total += std::exp(log_half_pmf(i, n));
    return std::min(total, 1.0);
}

std::pair<std::size_t, std::size_t> median_ci99_indices(std::size_t n) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (binomial_half_cdf(i, n) <= kTailMass) {
            j = i + 1;
        } else {
            break;
        }
    }
    if (j == 0) return {1, n};
    return {j, n + 1 - j};
}

MedianCI median_ci99(std::span<const double> samples) {
    if (samples.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, nan};
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    MedianCI out;
    if (n % 2 == 1) {
        out.median = sorted[n / 2];
    } else {
        const double lo = sorted[n / 2 - 1];
        const double hi = sorted[n / 2];
        out.median = lo == hi ? lo : 0.5 * (lo + hi);
    }
    const auto [j, k] = median_ci99_indices(n);
    out.lower = sorted[j - 1];
    out.upper = sorted[k - 1];
    return out;
}

double sign_test_p(std::size_t wins, std::size_t losses) {
    const std::size_t n = wins + losses;
    if (wins == 0) return 1.0;
    return 1.0 - binomial_half_cdf(wins - 1, n);
}

}  // namespace g3t::bench
