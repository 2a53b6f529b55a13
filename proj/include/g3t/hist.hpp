#pragma once
//
// Historical distributed sampling: splits each batch between the greedy
// GuILD subsets and the informed set based on the current (CCI) and
// historical (HCI) relative cost improvements.

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "g3t/guild.hpp"
#include "g3t/space.hpp"

namespace g3t {

enum class AllocationMode {
    /// Greedy share shrinks as (1 - level / theta) under marginal improvements.
    Prose,
    /// Greedy share grows as level / theta (rational reading of the pseudocode).
    LiteralRational,
};

[[nodiscard]] AllocationMode parse_allocation_mode(std::string_view name);
[[nodiscard]] std::string_view to_string(AllocationMode mode) noexcept;

enum class SamplingBranch { NoPath, FirstPath, Improved, Unchanged, InformedOnly };

[[nodiscard]] std::string_view to_string(SamplingBranch branch) noexcept;

struct Allocation {
    SamplingBranch branch = SamplingBranch::NoPath;
    std::size_t m_g2 = 0;
    /// Informed-set share; with no solution the informed set is all of X_free.
    std::size_t m_informed = 0;
    int level = 0;
    double cci = 0.0;
    double hci = 0.0;
};

/// (c_prev - c_curr) / c_prev. Throws NotAnImprovement when c_curr > c_prev.
[[nodiscard]] double cci(double c_prev, double c_curr);

class ImprovementTracker {
public:
    ImprovementTracker(int theta = 3, std::size_t batch_size = 100, AllocationMode mode = AllocationMode::Prose);

    /// Records one improvement ratio; returns the new running mean.
    double hci_update(double cci_value);
    [[nodiscard]] double hci() const noexcept { return n_imp_ > 0 ? cci_sum_ / static_cast<double>(n_imp_) : 0.0; }
    [[nodiscard]] std::size_t improvements() const noexcept { return n_imp_; }
    [[nodiscard]] double last_cci() const noexcept { return last_cci_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] int theta() const noexcept { return theta_; }
    [[nodiscard]] std::size_t batch_size() const noexcept { return batch_size_; }
    [[nodiscard]] AllocationMode mode() const noexcept { return mode_; }

    /// Split of the next batch after the latest hci_update. Substantial
    /// improvements (CCI >= HCI) reset the level and send the whole batch to
    /// X_G2; marginal ones raise the level.
    Allocation allocate();

    [[nodiscard]] double c_prev() const noexcept { return c_prev_; }
    [[nodiscard]] double c_curr() const noexcept { return c_curr_; }
    void set_costs(double c_prev, double c_curr) noexcept {
        c_prev_ = c_prev;
        c_curr_ = c_curr;
    }
    [[nodiscard]] const Allocation& last_allocation() const noexcept { return last_; }
    void remember(const Allocation& a) noexcept { last_ = a; }

private:
    int theta_;
    std::size_t batch_size_;
    AllocationMode mode_;
    std::size_t n_imp_ = 0;
    double cci_sum_ = 0.0;
    double last_cci_ = 0.0;
    int level_ = 0;
    double c_prev_ = std::numeric_limits<double>::infinity();
    double c_curr_ = std::numeric_limits<double>::infinity();
    Allocation last_;
};

struct SamplingContext {
    double c_prev = std::numeric_limits<double>::infinity();
    double c_curr = std::numeric_limits<double>::infinity();
    const GuildSubsets* g2 = nullptr;  ///< null when no greedy subsets exist for the current solution
    const ProblemDef* problem = nullptr;
    Rng* rng = nullptr;
};

struct SamplingResult {
    std::vector<State> samples;
    Allocation allocation;
    /// Draws that fell back to a larger region after a saturated sampler.
    std::size_t fallback = 0;
};

/// One batch of batch_size states; updates the tracker's statistics and costs.
[[nodiscard]] SamplingResult historical_sampling(ImprovementTracker& t, const SamplingContext& ctx);

/// Baseline sampler without greedy subsets: X_free before a solution, the
/// informed set afterwards.
[[nodiscard]] SamplingResult informed_sampling(std::size_t batch_size, const SamplingContext& ctx);

}  // namespace g3t
