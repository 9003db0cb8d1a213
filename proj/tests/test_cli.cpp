#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "helpers.hpp"

using namespace sssched;
using namespace sssched::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sssched_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string put(const std::string& name, const std::string& text) {
        const std::string path = (dir_ / name).string();
        std::ofstream(path) << text;
        return path;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SolveWorkedCommonWindow) {
    const std::string in = put("cw.json", write_instance(common_window_abc()));
    const Result r = run({"solve", in, "-o", path("cw.sol.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "variant=common-window preemptive=false n=3 m=2 energy=16 lb=16 ratio=1 bound=2.25\n");
    const Result v = run({"validate", in, path("cw.sol.json"), "--nonpreemptive"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "ok\n");
}

TEST_F(CliTest, SolveToStdoutPutsSummaryOnStderr) {
    const std::string in = put("cr.json", write_instance(common_release_pair()));
    const Result r = run({"solve", in, "--preemptive"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NO_THROW(parse_solution(r.out));
    EXPECT_NE(r.err.find("ratio=1.5625"), std::string::npos);
}

TEST_F(CliTest, SolveErrors) {
    const std::string general =
        put("g.json", write_instance(make_instance(2, 3.0, {{1, 1, 1, 1, 2}, {2, 1, 1, 0, 3}})));
    const Result r = run({"solve", general});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("common-release"), std::string::npos);
    EXPECT_EQ(run({"solve", put("bad.json", "{\"m\": ")}).code, 1);
    EXPECT_EQ(run({"solve", path("missing.json")}).code, 1);
    EXPECT_EQ(run({"solve"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST_F(CliTest, ValidateRejectsCorruptedSolution) {
    const Instance inst = make_instance(2, 3.0, {{1, 1, 1, 0, 2}, {2, 1, 1, 0, 2}});
    const std::string in = put("i.json", write_instance(inst));
    SolutionFile file = to_solution_file(solve(inst, false), inst);
    file.schedule.jobs[0].procs = {0};
    file.schedule.jobs[1].procs = {0};
    file.schedule.jobs[1].segments = {{0.5, 1.5, 1.0}};
    file.schedule.jobs[0].segments = {{0.0, 1.0, 1.0}};
    const Result r = run({"validate", in, put("s.json", write_solution(file))});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("processor-conflict"), std::string::npos);
}

TEST_F(CliTest, ValidateNonPreemptiveFlag) {
    const Instance inst = make_instance(1, 3.0, {{1, 2, 1, 0, 3}});
    SolutionFile file;
    file.m = 1;
    file.schedule.jobs.push_back({1, {0}, {{0.0, 1.0, 1.0}, {2.0, 3.0, 1.0}}});
    const std::string in = put("i.json", write_instance(inst));
    const std::string sol = put("s.json", write_solution(file));
    EXPECT_EQ(run({"validate", in, sol}).code, 0);
    const Result r = run({"validate", in, sol, "--nonpreemptive"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("preemption-forbidden"), std::string::npos);
}

TEST_F(CliTest, GenDeterministicAndShaped) {
    const Result a = run({"gen", "--seed", "1", "--n", "12", "--variant", "common-release"});
    const Result b = run({"gen", "--seed", "1", "--n", "12", "--variant", "common-release"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const Instance inst = parse_instance(a.out);
    EXPECT_EQ(inst.jobs.size(), 12u);
    for (const auto& j : inst.jobs) EXPECT_EQ(j.release, 0.0);
    EXPECT_TRUE(parse_instance(run({"gen", "--n", "0"}).out).jobs.empty());
}

TEST_F(CliTest, GenNonPreemptiveRestrictsSizes) {
    const Result r = run({"gen", "--n", "30", "--m", "6", "--variant", "common-deadline", "--nonpreemptive"});
    for (const auto& j : parse_instance(r.out).jobs) EXPECT_LE(2 * j.size, 6);
}

TEST_F(CliTest, GenFlagErrors) {
    EXPECT_EQ(run({"gen", "--n", "-3"}).code, 1);
    EXPECT_EQ(run({"gen", "--variant", "general"}).code, 1);
    EXPECT_EQ(run({"gen", "--size-dist", "huge"}).code, 1);
    EXPECT_EQ(run({"gen", "--work-range", "5", "1"}).code, 1);
    EXPECT_EQ(run({"gen", "--n", "abc"}).code, 1);
}

TEST_F(CliTest, EnvironmentVariables) {
    ::setenv("SSSCHED_N", "3", 1);
    ::setenv("SSSCHED_SEED", "9", 1);
    ::setenv("SSSCHED_WORK_RANGE", "2,3", 1);
    const Result r = run({"gen"});
    ::unsetenv("SSSCHED_N");
    ::unsetenv("SSSCHED_SEED");
    ::unsetenv("SSSCHED_WORK_RANGE");
    EXPECT_EQ(parse_instance(r.out).jobs.size(), 3u);
    EXPECT_EQ(r.out, run({"gen", "--n", "3", "--seed", "9", "--work-range", "2", "3"}).out);
    for (const auto& j : parse_instance(r.out).jobs) EXPECT_GE(j.work, 2.0);
}

TEST_F(CliTest, BenchReport) {
    const Result r = run({"bench", "--count", "200", "--m", "16", "--m-min", "2", "--n", "20", "--n-min", "1",
                          "--alpha", "3", "--no-timing"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("worst_ratio="), std::string::npos);
    EXPECT_NE(r.out.find(" bound="), std::string::npos);
    EXPECT_EQ(r.out, run({"bench", "--count", "200", "--m", "16", "--m-min", "2", "--n", "20", "--n-min", "1",
                          "--alpha", "3", "--no-timing"})
                         .out);
    for (const char* variant : {"common-release", "common-deadline"}) {
        EXPECT_EQ(run({"bench", "--count", "50", "--variant", variant, "--preemptive", "--no-timing"}).code, 0);
        EXPECT_EQ(run({"bench", "--count", "50", "--variant", variant, "--no-timing"}).code, 0);
    }
}

TEST_F(CliTest, BenchEmpty) {
    const Result r = run({"bench", "--count", "0", "--no-timing"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "instances=0 variant=common-window preemptive=false\n");
}

TEST_F(CliTest, Gantt) {
    const Instance inst = common_release_pair();
    const std::string in = put("cr.json", write_instance(inst));
    ASSERT_EQ(run({"solve", in, "--preemptive", "-o", path("cr.sol.json")}).code, 0);
    ASSERT_EQ(run({"gantt", path("cr.sol.json"), "-o", path("a.svg")}).code, 0);
    const Result again = run({"gantt", path("cr.sol.json")});
    std::ifstream f(path("a.svg"));
    std::stringstream buf;
    buf << f.rdbuf();
    EXPECT_EQ(buf.str(), again.out);
    EXPECT_NE(again.out.find("<svg"), std::string::npos);
    EXPECT_EQ(run({"gantt", put("bad.json", "[]")}).code, 1);
}

TEST_F(CliTest, Oracle) {
    const Result r = run({"oracle", put("cw.json", write_instance(common_window_abc())), "--slots", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "lb=16 oracle=16 alg=16 ok\n");

    GenConfig cfg;
    cfg.n = 6;
    cfg.m = 2;
    const Result guard = run({"oracle", put("big.json", write_instance(generate_instance(cfg)))});
    EXPECT_EQ(guard.code, 2);
    EXPECT_NE(guard.err.find("oracle guard"), std::string::npos);

    const Instance tight = make_instance(2, 3.0, {{1, 1, 2, 0, 1}, {2, 1, 2, 0, 1}});
    const Result inf = run({"oracle", put("tight.json", write_instance(tight)), "--slots", "1"});
    EXPECT_EQ(inf.code, 3);
    EXPECT_NE(inf.err.find("infeasible"), std::string::npos);
}

TEST_F(CliTest, Help) { EXPECT_EQ(run({"--help"}).code, 0); }
