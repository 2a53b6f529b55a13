#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "g3t/bench/runner.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(G3T_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("g3t_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, PlanPrintsTrialJson) {
    const auto r = run("plan --env dw --dim 2 --variation 1 --seed 3 --budget-checks 2000");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("planner"), "g3t");
    EXPECT_TRUE(j.at("success").get<bool>());
    EXPECT_TRUE(j.at("revalidated").get<bool>());
    EXPECT_GE(j.at("final_cost").get<double>(), 0.8);
    EXPECT_LE(j.at("full_checks").get<std::uint64_t>(), 2000U);
}

TEST_F(Cli, PlanLogRendersToSvg) {
    const std::string scene = path("scene.json");
    std::ofstream(scene) << g3t::scene_to_json(g3t::test::world2({g3t::test::box({0.45, 0.3}, {0.55, 0.7})}));
    const auto planned = run("plan --env " + scene + " --budget-checks 1500 --log " + path("log.jsonl") + " --out " +
                             path("trial.json"));
    ASSERT_EQ(planned.status, 0);
    EXPECT_EQ(planned.out.rfind("solved", 0), 0U);
    ASSERT_EQ(run("render --log " + path("log.jsonl") + " --out " + path("scene.svg")).status, 0);
    const std::string svg = slurp(path("scene.svg"));
    EXPECT_EQ(svg.rfind("<svg", 0), 0U);
    EXPECT_NE(svg.find("class=\"obstacle\""), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, OracleOnSceneFile) {
    const std::string scene = path("box.json");
    std::ofstream(scene) << g3t::scene_to_json(g3t::test::world2({g3t::test::box({0.45, 0.3}, {0.55, 0.7})}));
    const auto r = run("oracle --env " + scene);
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(std::stod(r.out), 0.90623, 1e-5);
    const std::string blocked = path("blocked.json");
    std::ofstream(blocked) << g3t::scene_to_json(g3t::test::world2({g3t::test::box({0.45, 0.0}, {0.55, 1.0})}));
    EXPECT_EQ(run("oracle --env " + blocked).out, "inf\n");
}

TEST_F(Cli, BenchCsvIsReproducible) {
    const std::string args = "bench --suite dw2 --planners g3t,rrt-connect --trials 1 --budget-checks 300 --no-wall-time";
    const auto a = run(args + " --out " + path("a.csv"));
    const auto b = run(args + " --out -");
    ASSERT_EQ(a.status, 0);
    ASSERT_EQ(b.status, 0);
    const std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv, b.out);
    EXPECT_EQ(csv.substr(0, g3t::bench::kCsvHeader.size()), g3t::bench::kCsvHeader);
    std::istringstream in(csv);
    EXPECT_EQ(g3t::bench::parse_csv(in).size(), 20U);
}

TEST_F(Cli, ErrorsGiveNonZeroStatus) {
    EXPECT_NE(run("plan --env dw").status, 0);
    EXPECT_EQ(run("plan --env " + path("missing.json") + " --budget-checks 10").status, 2);
    EXPECT_NE(run("plan --env dw --budget-checks 10 --planner nope").status, 0);
    EXPECT_EQ(run("oracle --env " + path("missing.json")).status, 2);
    EXPECT_NE(run("").status, 0);
}
