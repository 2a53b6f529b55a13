// g3t command-line front end: plan, bench, oracle, render.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "g3t/bench/envs.hpp"
#include "g3t/bench/oracle.hpp"
#include "g3t/bench/render.hpp"
#include "g3t/bench/runner.hpp"
#include "g3t/error.hpp"
#include "g3t/events.hpp"
#include "g3t/hist.hpp"

namespace {

using namespace g3t;
using namespace g3t::bench;

struct PlanArgs {
    std::string env;
    std::size_t dim = 2;
    std::uint64_t seed = 0;
    std::uint64_t variation = 0;
    std::string planner = "g3t";
    std::uint64_t budget_checks = 0;
    double budget_ms = 0.0;
    std::size_t batch = 100;
    int theta = 3;
    double eta = 1.001;
    double rewire = 1.2;
    std::string allocation = "prose";
    std::string out;
    std::string log;
};

struct BenchArgs {
    std::string suite = "dw2,dw4,dw8,rr2,rr4,rr8";
    std::string planners = "g3t,g3t-nograft,g3t-informed-only,rrt-connect";
    std::size_t trials = 100;
    std::uint64_t budget_checks = 10'000;
    double budget_ms = 0.0;
    unsigned threads = 1;
    bool no_wall_time = false;
    std::string out;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

EnvSpec env_from_args(const PlanArgs& a) {
    EnvSpec spec;
    spec.dim = a.dim;
    spec.variation = a.variation;
    if (a.env == "dw") {
        spec.kind = EnvKind::DividingWalls;
    } else if (a.env == "rr") {
        spec.kind = EnvKind::RandomRects;
    } else {
        spec.kind = EnvKind::File;
        spec.path = a.env;
    }
    return spec;
}

Budget budget_from(std::uint64_t checks, double ms) {
    Budget b;
    if (checks > 0) b.max_full_checks = checks;
    if (ms > 0.0) b.max_ms = ms;
    return b;
}

int run_plan(const PlanArgs& a) {
    const EnvSpec env = env_from_args(a);
    const ProblemDef problem = make_problem(env);
    BenchOptions options;
    options.base.batch_size = a.batch;
    options.base.theta = a.theta;
    options.base.eta = a.eta;
    options.base.rewire_factor = a.rewire;
    options.base.allocation = parse_allocation_mode(a.allocation);
    options.budget = budget_from(a.budget_checks, a.budget_ms);
    options.capture_logs = !a.log.empty();
    const TrialSpec spec{env, parse_planner(a.planner), a.seed};
    const TrialRecord rec = run_trial(spec, problem, options);
    if (!a.log.empty()) {
        std::ofstream out(a.log);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + a.log);
        out << rec.event_log;
    }
    const std::string json = trial_to_json(rec);
    if (a.out.empty() || a.out == "-") {
        std::cout << json << '\n';
    } else {
        std::ofstream out(a.out);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + a.out);
        out << json << '\n';
        std::cout << (rec.success ? "solved" : "no solution") << " cost=" << rec.final_cost
                  << " checks=" << rec.full_checks << '\n';
    }
    return 0;
}

int run_bench(const BenchArgs& a) {
    std::vector<EnvSpec> envs;
    for (const auto& s : split_list(a.suite)) {
        auto part = parse_suite(s);
        envs.insert(envs.end(), part.begin(), part.end());
    }
    std::vector<PlannerKind> planners;
    for (const auto& p : split_list(a.planners)) planners.push_back(parse_planner(p));
    BenchOptions options;
    options.budget = budget_from(a.budget_checks, a.budget_ms);
    options.wall_time = !a.no_wall_time;
    options.threads = a.threads;
    const auto records = run_trials(make_trials(envs, planners, a.trials), options);
    if (a.out.empty() || a.out == "-") {
        write_csv(std::cout, records);
    } else {
        std::ofstream out(a.out);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + a.out);
        write_csv(out, records);
    }
    std::cerr << format_summary(summarize(records));
    return 0;
}

int run_oracle(const std::string& env) {
    const double cost = shortest_path_oracle_2d(load_scene(env));
    if (std::isfinite(cost)) {
        std::printf("%.12g\n", cost);
    } else {
        std::printf("inf\n");
    }
    return 0;
}

int run_render(const std::string& log_path, const std::string& out, const std::string& scene,
               const std::string& project) {
    const EventLog log = EventLog::load(log_path);
    RenderOptions options;
    if (!project.empty()) {
        const auto axes = split_list(project);
        if (axes.size() != 2) throw Error(ErrorCode::InvalidParameter, "--project expects two axes, e.g. 0,1");
        options.project = std::array<std::size_t, 2>{std::stoul(axes[0]), std::stoul(axes[1])};
    }
    const std::string svg = scene.empty() ? render_svg(log, options) : render_svg(log, load_scene(scene), options);
    std::ofstream file(out);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write " + out);
    file << svg;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G3T* anytime sampling-based planner and benchmark harness"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "Run one planner on one problem");
    plan_cmd->add_option("--env", plan_args.env, "Scene file, 'dw' or 'rr'")->required();
    plan_cmd->add_option("--dim", plan_args.dim, "Dimension for generated worlds")->check(CLI::Range(2, 64));
    plan_cmd->add_option("--seed", plan_args.seed, "Planner seed");
    plan_cmd->add_option("--variation", plan_args.variation, "World variation (dw) or generator seed (rr)");
    plan_cmd->add_option("--planner", plan_args.planner, "Planner variant")
        ->check(CLI::IsMember({"g3t", "g3t-nograft", "g3t-informed-only", "rrt-connect"}));
    plan_cmd->add_option("--budget-checks", plan_args.budget_checks, "Full collision-check budget")->required();
    plan_cmd->add_option("--budget-ms", plan_args.budget_ms, "Wall-clock budget in milliseconds");
    plan_cmd->add_option("--batch", plan_args.batch, "Samples per batch")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--theta", plan_args.theta, "Level-up threshold")->check(CLI::PositiveNumber);
    plan_cmd->add_option("--eta", plan_args.eta, "RGG tuning constant (> 1)");
    plan_cmd->add_option("--rewire", plan_args.rewire, "RGG rewire factor (>= 1)");
    plan_cmd->add_option("--allocation", plan_args.allocation, "Batch split rule")
        ->check(CLI::IsMember({"prose", "literal-rational"}));
    plan_cmd->add_option("--out", plan_args.out, "Trial JSON output ('-' for stdout)");
    plan_cmd->add_option("--log", plan_args.log, "Event log output (JSONL)");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run benchmark suites and write per-trial CSV");
    bench_cmd->add_option("--suite", bench_args.suite, "Comma list of dw<N>/rr<N>");
    bench_cmd->add_option("--planners", bench_args.planners, "Comma list of planner variants");
    bench_cmd->add_option("--trials", bench_args.trials, "Seeds per variation")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--budget-checks", bench_args.budget_checks, "Full collision-check budget per trial");
    bench_cmd->add_option("--budget-ms", bench_args.budget_ms, "Wall-clock budget per trial");
    bench_cmd->add_option("--threads", bench_args.threads, "Worker threads");
    bench_cmd->add_flag("--no-wall-time", bench_args.no_wall_time, "Write wall_ms = 0 for reproducible CSV");
    bench_cmd->add_option("--out", bench_args.out, "CSV output ('-' for stdout)");

    std::string oracle_env;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact 2D optimum of a scene file");
    oracle_cmd->add_option("--env", oracle_env, "Scene file")->required();

    std::string render_log;
    std::string render_out;
    std::string render_scene;
    std::string render_project;
    auto* render_cmd = app.add_subcommand("render", "Render an event log to SVG");
    render_cmd->add_option("--log", render_log, "Event log (JSONL)")->required();
    render_cmd->add_option("--out", render_out, "SVG output")->required();
    render_cmd->add_option("--scene", render_scene, "Scene file (default: the log's problem record)");
    render_cmd->add_option("--project", render_project, "Axes to draw for dim > 2, e.g. 0,1");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*plan_cmd) return run_plan(plan_args);
        if (*bench_cmd) return run_bench(bench_args);
        if (*oracle_cmd) return run_oracle(oracle_env);
        if (*render_cmd) return run_render(render_log, render_out, render_scene, render_project);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
