#include "g3t/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "g3t/bench/rrt_connect.hpp"
#include "g3t/error.hpp"

namespace g3t::bench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "bad number in CSV: " + std::string(s));
    }
    return v;
}

std::uint64_t parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, "bad integer in CSV: " + std::string(s));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = line.find(sep, begin);
        out.push_back(line.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
        if (end == std::string_view::npos) break;
        begin = end + 1;
    }
    return out;
}

}  // namespace

PlannerKind parse_planner(std::string_view name) {
    if (name == "g3t") return PlannerKind::G3T;
    if (name == "g3t-nograft") return PlannerKind::NoGraft;
    if (name == "g3t-informed-only") return PlannerKind::InformedOnly;
    if (name == "rrt-connect") return PlannerKind::RrtConnect;
    throw Error(ErrorCode::InvalidParameter, "unknown planner: " + std::string(name));
}

std::string_view to_string(PlannerKind kind) noexcept {
    switch (kind) {
        case PlannerKind::G3T: return "g3t";
        case PlannerKind::NoGraft: return "g3t-nograft";
        case PlannerKind::InformedOnly: return "g3t-informed-only";
        case PlannerKind::RrtConnect: return "rrt-connect";
    }
    return "unknown";
}

const std::vector<PlannerKind>& all_planners() {
    static const std::vector<PlannerKind> kinds{PlannerKind::G3T, PlannerKind::NoGraft, PlannerKind::InformedOnly,
                                                PlannerKind::RrtConnect};
    return kinds;
}

PlannerConfig configure(PlannerKind kind, PlannerConfig base) {
    switch (kind) {
        case PlannerKind::G3T:
            base.grafting = true;
            base.guild = true;
            break;
        case PlannerKind::NoGraft:
            base.grafting = false;
            base.guild = true;
            break;
        case PlannerKind::InformedOnly:
            base.grafting = true;
            base.guild = false;
            break;
        case PlannerKind::RrtConnect:
            break;
    }
    return base;
}

std::uint64_t trial_rng_seed(std::uint64_t seed, std::uint64_t variation) noexcept {
    return seed * 0x9E3779B97F4A7C15ULL + variation * 0xBF58476D1CE4E5B9ULL + 1;
}

TrialRecord run_trial(const TrialSpec& spec, const ProblemDef& problem, const BenchOptions& options) {
    TrialRecord rec;
    rec.env = spec.env.family();
    rec.dim = problem.dim();
    rec.variation = spec.env.variation;
    rec.planner = std::string(to_string(spec.planner));
    rec.seed = spec.seed;

    EventLog log;
    EventLog* log_ptr = options.capture_logs ? &log : nullptr;
    const std::uint64_t rng_seed = trial_rng_seed(spec.seed, spec.env.variation);
    PlanResult result;
    if (spec.planner == PlannerKind::RrtConnect) {
        result = plan_rrt_connect(problem, RrtConfig{}, options.budget, rng_seed, log_ptr);
    } else {
        const PlannerConfig config = configure(spec.planner, options.base);
        result = plan(problem, config, options.budget, rng_seed, log_ptr);
        for (const auto& a : result.allocations) {
            if (a.m_g2 + a.m_informed != config.batch_size) rec.allocations_consistent = false;
        }
    }

    rec.success = result.success;
    rec.full_checks = result.stats.full_checks;
    rec.sparse_checks = result.stats.sparse_checks;
    rec.batches = result.stats.batches;
    rec.graft_attempts = result.stats.graft_attempts;
    rec.graft_successes = result.stats.graft_successes;
    rec.wall_ms = options.wall_time ? result.elapsed_ms : 0.0;
    for (const auto& s : result.trace) {
        rec.trace.push_back({options.wall_time ? s.elapsed_ms : 0.0, s.iteration, s.full_checks, s.cost});
        if (!path_is_valid(problem, s.path)) rec.revalidated = false;
    }
    if (result.success && !result.trace.empty()) {
        rec.init_checks = result.trace.front().full_checks;
        rec.init_iteration = result.trace.front().iteration;
        rec.init_cost = result.trace.front().cost;
        rec.final_cost = result.trace.back().cost;
    } else {
        rec.init_checks = result.stats.full_checks;
        rec.init_iteration = result.stats.iterations;
        rec.init_cost = kInf;
        rec.final_cost = kInf;
    }
    if (options.capture_logs) rec.event_log = log.to_jsonl();
    rec.best = std::move(result.best);
    return rec;
}

std::vector<TrialRecord> run_trials(const std::vector<TrialSpec>& trials, const BenchOptions& options) {
    std::vector<TrialRecord> out(trials.size());
    // Problems are generated once per distinct environment.
    std::map<std::tuple<int, std::size_t, std::uint64_t, std::size_t, std::string>, ProblemDef> problems;
    std::vector<const ProblemDef*> problem_of(trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const EnvSpec& e = trials[i].env;
        const auto key = std::tuple{static_cast<int>(e.kind), e.dim, e.variation, e.count.value_or(0), e.path};
        auto it = problems.find(key);
        if (it == problems.end()) it = problems.emplace(key, make_problem(e)).first;
        problem_of[i] = &it->second;
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (std::size_t i = next++; i < trials.size(); i = next++) {
            out[i] = run_trial(trials[i], *problem_of[i], options);
        }
    };
    const unsigned n_threads = std::max(1U, options.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

std::vector<TrialSpec> make_trials(const std::vector<EnvSpec>& envs, const std::vector<PlannerKind>& planners,
                                   std::size_t trials) {
    std::vector<TrialSpec> out;
    for (const auto& env : envs) {
        for (PlannerKind planner : planners) {
            for (std::size_t s = 0; s < trials; ++s) out.push_back(TrialSpec{env, planner, s});
        }
    }
    return out;
}

std::vector<EnvSpec> parse_suite(std::string_view suite) {
    EnvKind kind;
    if (suite.substr(0, 2) == "dw") {
        kind = EnvKind::DividingWalls;
    } else if (suite.substr(0, 2) == "rr") {
        kind = EnvKind::RandomRects;
    } else {
        throw Error(ErrorCode::InvalidParameter, "unknown suite: " + std::string(suite));
    }
    const std::size_t dim = parse_uint(suite.substr(2));
    if (dim < 2) throw Error(ErrorCode::InvalidDimension, "suite dimension must be >= 2");
    std::vector<EnvSpec> envs;
    for (std::uint64_t v = 0; v < kDividingWallVariations; ++v) {
        EnvSpec e;
        e.kind = kind;
        e.dim = dim;
        e.variation = v;
        envs.push_back(e);
    }
    return envs;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    struct Bucket {
        std::size_t successes = 0;
        std::vector<double> init_checks;
        std::vector<double> init_cost;
        std::vector<double> final_cost;
    };
    std::map<std::tuple<std::string, std::size_t, std::string>, Bucket> groups;
    for (const auto& r : records) {
        auto& b = groups[{r.env, r.dim, r.planner}];
        b.successes += r.success ? 1 : 0;
        b.init_checks.push_back(r.success ? static_cast<double>(r.init_checks) : kInf);
        b.init_cost.push_back(r.init_cost);
        b.final_cost.push_back(r.final_cost);
    }
    std::vector<SummaryRow> rows;
    for (const auto& [key, b] : groups) {
        SummaryRow row;
        std::tie(row.env, row.dim, row.planner) = key;
        row.trials = b.init_cost.size();
        row.success_rate = static_cast<double>(b.successes) / static_cast<double>(row.trials);
        row.init_checks = median_ci99(b.init_checks);
        row.init_cost = median_ci99(b.init_cost);
        row.final_cost = median_ci99(b.final_cost);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(6) << "env" << std::setw(5) << "dim" << std::setw(20) << "planner" << std::setw(8)
        << "trials" << std::setw(9) << "success" << std::setw(30) << "init_checks [99% CI]" << std::setw(30)
        << "init_cost [99% CI]"
        << "final_cost [99% CI]\n";
    const auto ci = [](const MedianCI& m, int precision) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(precision) << m.median << " [" << m.lower << ", " << m.upper << "]";
        return s.str();
    };
    for (const auto& r : rows) {
        out << std::left << std::setw(6) << r.env << std::setw(5) << r.dim << std::setw(20) << r.planner
            << std::setw(8) << r.trials << std::setw(9) << std::fixed << std::setprecision(2) << r.success_rate
            << std::setw(30) << ci(r.init_checks, 0) << std::setw(30) << ci(r.init_cost, 4) << ci(r.final_cost, 4)
            << '\n';
    }
    return out.str();
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.env << ',' << r.dim << ',' << r.variation << ',' << r.planner << ',' << r.seed << ','
            << (r.success ? 1 : 0) << ',' << r.init_checks << ',' << format_double(r.init_cost) << ','
            << format_double(r.final_cost) << ',' << r.graft_attempts << ',' << r.graft_successes << ','
            << format_double(r.wall_ms) << '\n';
    }
}

std::string to_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    write_csv(out, records);
    return out.str();
}

std::vector<TrialRecord> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorCode::ParseError, "missing CSV header");
    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw Error(ErrorCode::ParseError, "expected 12 CSV fields: " + line);
        TrialRecord r;
        r.env = std::string(f[0]);
        r.dim = parse_uint(f[1]);
        r.variation = parse_uint(f[2]);
        r.planner = std::string(f[3]);
        r.seed = parse_uint(f[4]);
        r.success = parse_uint(f[5]) != 0;
        r.init_checks = parse_uint(f[6]);
        r.init_cost = parse_double(f[7]);
        r.final_cost = parse_double(f[8]);
        r.graft_attempts = parse_uint(f[9]);
        r.graft_successes = parse_uint(f[10]);
        r.wall_ms = parse_double(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string trial_to_json(const TrialRecord& r) {
    const auto num = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::json j;
    j["env"] = r.env;
    j["dim"] = r.dim;
    j["variation"] = r.variation;
    j["planner"] = r.planner;
    j["seed"] = r.seed;
    j["success"] = r.success;
    j["init_checks"] = r.init_checks;
    j["init_iteration"] = r.init_iteration;
    j["init_cost"] = num(r.init_cost);
    j["final_cost"] = num(r.final_cost);
    j["full_checks"] = r.full_checks;
    j["sparse_checks"] = r.sparse_checks;
    j["batches"] = r.batches;
    j["graft_attempts"] = r.graft_attempts;
    j["graft_successes"] = r.graft_successes;
    j["wall_ms"] = r.wall_ms;
    j["revalidated"] = r.revalidated;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"elapsed_ms", t.elapsed_ms},
                         {"iteration", t.iteration},
                         {"full_checks", t.full_checks},
                         {"cost", t.cost}});
    }
    j["trace"] = std::move(trace);
    if (r.best) {
        nlohmann::json verts = nlohmann::json::array();
        for (const auto& v : r.best->vertices) verts.push_back(to_json(v));
        j["path"] = std::move(verts);
    } else {
        j["path"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace g3t::bench
