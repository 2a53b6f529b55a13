#pragma once
//
// Benchmark trials: planner variants, per-trial records, aggregation, and CSV.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g3t/bench/envs.hpp"
#include "g3t/bench/stats.hpp"
#include "g3t/search.hpp"

namespace g3t::bench {

enum class PlannerKind { G3T, NoGraft, InformedOnly, RrtConnect };

[[nodiscard]] PlannerKind parse_planner(std::string_view name);
[[nodiscard]] std::string_view to_string(PlannerKind kind) noexcept;
[[nodiscard]] const std::vector<PlannerKind>& all_planners();

/// Planner configuration with the variant's ablation flags applied.
[[nodiscard]] PlannerConfig configure(PlannerKind kind, PlannerConfig base);

struct TracePoint {
    double elapsed_ms = 0.0;
    std::uint64_t iteration = 0;
    std::uint64_t full_checks = 0;
    double cost = 0.0;
};

struct TrialRecord {
    std::string env;
    std::size_t dim = 0;
    std::uint64_t variation = 0;
    std::string planner;
    std::uint64_t seed = 0;
    bool success = false;
    /// Full checks when the first solution was found; the whole budget spent on failure.
    std::uint64_t init_checks = 0;
    std::uint64_t init_iteration = 0;
    double init_cost = 0.0;   ///< infinity on failure
    double final_cost = 0.0;  ///< infinity on failure
    std::uint64_t graft_attempts = 0;
    std::uint64_t graft_successes = 0;
    double wall_ms = 0.0;

    // Not serialized to CSV.
    std::vector<TracePoint> trace;
    std::uint64_t full_checks = 0;
    std::uint64_t sparse_checks = 0;
    std::uint64_t batches = 0;
    /// Every emitted solution passed the independent re-check.
    bool revalidated = true;
    /// Every batch satisfied m_g2 + m_informed = batch size.
    bool allocations_consistent = true;
    std::string event_log;  ///< JSONL, only when logs are captured
    std::optional<SolutionPath> best;
};

struct TrialSpec {
    EnvSpec env;
    PlannerKind planner = PlannerKind::G3T;
    std::uint64_t seed = 0;
};

struct BenchOptions {
    PlannerConfig base;
    Budget budget;
    /// Record wall-clock times; disable for byte-reproducible output.
    bool wall_time = true;
    bool capture_logs = false;
    unsigned threads = 1;
};

/// Planner RNG seed for a (trial seed, variation) pair.
[[nodiscard]] std::uint64_t trial_rng_seed(std::uint64_t seed, std::uint64_t variation) noexcept;

[[nodiscard]] TrialRecord run_trial(const TrialSpec& spec, const ProblemDef& problem, const BenchOptions& options);

/// Runs every trial (in parallel when threads > 1); output order matches input order.
[[nodiscard]] std::vector<TrialRecord> run_trials(const std::vector<TrialSpec>& trials, const BenchOptions& options);

/// Cartesian product of environments, planners, and seeds 0..trials-1.
[[nodiscard]] std::vector<TrialSpec> make_trials(const std::vector<EnvSpec>& envs,
                                                 const std::vector<PlannerKind>& planners, std::size_t trials);

/// Suite names: dw2, dw4, dw8, rr2, rr4, rr8 (any dimension after the prefix).
/// Each suite expands to the 10 canonical variations.
[[nodiscard]] std::vector<EnvSpec> parse_suite(std::string_view suite);

struct SummaryRow {
    std::string env;
    std::size_t dim = 0;
    std::string planner;
    std::size_t trials = 0;
    double success_rate = 0.0;
    MedianCI init_checks;
    MedianCI init_cost;
    MedianCI final_cost;
};

/// Groups by (env, dim, planner) in sorted order, independent of record order.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
[[nodiscard]] std::string format_summary(const std::vector<SummaryRow>& rows);

inline constexpr std::string_view kCsvHeader =
    "env,dim,variation,planner,seed,success,init_checks,init_cost,final_cost,graft_attempts,graft_successes,wall_ms";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
[[nodiscard]] std::string to_csv(const std::vector<TrialRecord>& records);
/// Inverse of write_csv for the CSV columns.
[[nodiscard]] std::vector<TrialRecord> parse_csv(std::istream& in);

/// Trial summary as JSON (used by the plan command).
[[nodiscard]] std::string trial_to_json(const TrialRecord& record);

}  // namespace g3t::bench
