#include "g3t/hist.hpp"

#include <algorithm>
#include <cmath>

#include "g3t/error.hpp"
#include "g3t/spheroid.hpp"

namespace g3t {

namespace {

constexpr std::size_t kMaxAttemptsPerPoint = 100'000;

// Free states from the informed set, falling back to X_free when the informed
// set cannot be sampled (e.g. the solution already matches the chord).
std::vector<State> draw_informed(const ProblemDef& p, double cost, Rng& rng, std::size_t count,
                                 const GuildSubsets* exclude, std::size_t& fallback) {
    std::vector<State> out;
    out.reserve(count);
    if (count == 0) return out;
    if (!std::isfinite(cost)) return sample_free_uniform(p, rng, count);
    const InformedSet informed(p, cost);
    for (std::size_t i = 0; i < count; ++i) {
        try {
            if (exclude != nullptr) {
                bool placed = false;
                for (std::size_t attempt = 0; attempt < kMaxAttemptsPerPoint && !placed; ++attempt) {
                    auto v = informed.propose(rng);
                    if (v && !exclude->in_spheroids(*v)) {
                        out.push_back(std::move(*v));
                        placed = true;
                    }
                }
                if (placed) continue;
                ++fallback;
            }
            out.push_back(informed.sample(rng, kMaxAttemptsPerPoint));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SubsetSaturated) throw;
            ++fallback;
            auto extra = sample_free_uniform(p, rng, 1);
            out.push_back(std::move(extra.front()));
        }
    }
    return out;
}

std::vector<State> draw_g2(const SamplingContext& ctx, std::size_t count, std::size_t& fallback) {
    if (count == 0) return {};
    if (ctx.g2 != nullptr && !ctx.g2->empty()) {
        try {
            return g2_sample(*ctx.g2, *ctx.problem, *ctx.rng, count);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SubsetSaturated) throw;
        }
    }
    fallback += count;
    return draw_informed(*ctx.problem, ctx.c_curr, *ctx.rng, count, nullptr, fallback);
}

void require_context(const SamplingContext& ctx) {
    if (ctx.problem == nullptr || ctx.rng == nullptr) {
        throw Error(ErrorCode::InvalidParameter, "sampling context needs a problem and a generator");
    }
}

}  // namespace

AllocationMode parse_allocation_mode(std::string_view name) {
    if (name == "prose") return AllocationMode::Prose;
    if (name == "literal-rational") return AllocationMode::LiteralRational;
    throw Error(ErrorCode::InvalidParameter, "unknown allocation mode: " + std::string(name));
}

std::string_view to_string(AllocationMode mode) noexcept {
    return mode == AllocationMode::Prose ? "prose" : "literal-rational";
}

std::string_view to_string(SamplingBranch branch) noexcept {
    switch (branch) {
        case SamplingBranch::NoPath: return "no-path";
        case SamplingBranch::FirstPath: return "first-path";
        case SamplingBranch::Improved: return "improved";
        case SamplingBranch::Unchanged: return "unchanged";
        case SamplingBranch::InformedOnly: return "informed-only";
    }
    return "unknown";
}

double cci(double c_prev, double c_curr) {
    if (!(c_curr > 0.0) || !std::isfinite(c_prev)) {
        throw Error(ErrorCode::InvalidParameter, "CCI needs finite positive costs");
    }
    if (c_curr > c_prev) throw Error(ErrorCode::NotAnImprovement, "current cost exceeds previous cost");
    return (c_prev - c_curr) / c_prev;
}

ImprovementTracker::ImprovementTracker(int theta, std::size_t batch_size, AllocationMode mode)
    : theta_(theta), batch_size_(batch_size), mode_(mode) {
    if (theta < 1) throw Error(ErrorCode::InvalidParameter, "level-up threshold must be >= 1");
    if (batch_size == 0) throw Error(ErrorCode::InvalidParameter, "batch size must be > 0");
}

double ImprovementTracker::hci_update(double cci_value) {
    ++n_imp_;
    cci_sum_ += cci_value;
    last_cci_ = cci_value;
    return hci();
}

Allocation ImprovementTracker::allocate() {
    Allocation a;
    a.branch = SamplingBranch::Improved;
    a.cci = last_cci_;
    a.hci = hci();
    const auto m = batch_size_;
    const auto theta = static_cast<std::size_t>(theta_);
    if (last_cci_ < a.hci) {
        ++level_;
        const auto capped = std::min(static_cast<std::size_t>(level_), theta);
        a.m_g2 = mode_ == AllocationMode::Prose ? ((theta - capped) * m) / theta : (capped * m) / theta;
    } else {
        level_ = 0;
        a.m_g2 = m;
    }
    a.m_informed = m - a.m_g2;
    a.level = level_;
    return a;
}

SamplingResult historical_sampling(ImprovementTracker& t, const SamplingContext& ctx) {
    require_context(ctx);
    const ProblemDef& p = *ctx.problem;
    const std::size_t m = t.batch_size();
    SamplingResult result;
    t.set_costs(ctx.c_prev, ctx.c_curr);

    const bool had_path = std::isfinite(ctx.c_prev);
    const bool has_path = std::isfinite(ctx.c_curr);
    Allocation a;
    if (!has_path) {
        a.branch = SamplingBranch::NoPath;
        a.m_informed = m;
        a.level = t.level();
        result.samples = sample_free_uniform(p, *ctx.rng, m);
    } else {
        if (!had_path) {
            a.branch = SamplingBranch::FirstPath;
            a.m_g2 = m;
            a.level = t.level();
        } else if (ctx.c_curr < ctx.c_prev) {
            t.hci_update(cci(ctx.c_prev, ctx.c_curr));
            a = t.allocate();
        } else {
            a = t.last_allocation();
            a.branch = SamplingBranch::Unchanged;
        }
        a.hci = t.hci();
        result.samples = draw_g2(ctx, a.m_g2, result.fallback);
        auto informed = draw_informed(p, ctx.c_curr, *ctx.rng, a.m_informed, ctx.g2, result.fallback);
        std::move(informed.begin(), informed.end(), std::back_inserter(result.samples));
    }
    result.allocation = a;
    t.remember(a);
    return result;
}

SamplingResult informed_sampling(std::size_t batch_size, const SamplingContext& ctx) {
    require_context(ctx);
    SamplingResult result;
    result.allocation.branch = std::isfinite(ctx.c_curr) ? SamplingBranch::InformedOnly : SamplingBranch::NoPath;
    result.allocation.m_informed = batch_size;
    result.samples = draw_informed(*ctx.problem, ctx.c_curr, *ctx.rng, batch_size, nullptr, result.fallback);
    return result;
}

}  // namespace g3t
