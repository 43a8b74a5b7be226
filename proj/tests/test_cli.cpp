#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairdiv/bench.hpp"
#include "fairdiv/cli.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/json_io.hpp"

using namespace fairdiv;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fairdiv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST(Json, InstanceRoundTrip) {
    const Instance inst = random_piecewise_instance(3, 4);
    EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
    const Json doc = Json::parse(R"({"n": 1, "agents": [{"breakpoints": ["0","1/3","1"], "densities": ["3/2","3/4"]}]})");
    const Instance one = instance_from_json(doc);
    EXPECT_EQ(one[0].eval(Interval(0, Rational(2, 3))), Rational(3, 4));
}

TEST(Json, RejectsBadInstances) {
    EXPECT_THROW(instance_from_json(Json::parse(R"({"n": 1, "agents": [{"breakpoints": ["0","1"], "densities": ["2"]}]})")),
                 FormatError);
    EXPECT_THROW(instance_from_json(Json::parse(R"({"n": 2, "agents": [{"breakpoints": ["0","1"], "densities": ["1"]}]})")),
                 FormatError);
    EXPECT_THROW(instance_from_json(Json::parse(R"({"agents": 3})")), FormatError);
}

TEST(Json, AllocationRoundTrip) {
    const Json doc = Json::parse(R"({"pieces": [[["0","1/3"]], [["1/3","1"]]]})");
    const Allocation a = allocation_from_json(doc);
    ASSERT_EQ(a.n(), 2u);
    EXPECT_EQ(a[1], Piece{Interval(Rational(1, 3), 1)});
    EXPECT_EQ(allocation_from_json(allocation_to_json(a)), a);
}

TEST(Bench, CsvRoundTrip) {
    BenchmarkSpec spec;
    spec.protocol = "even-paz";
    spec.ladder = {2, 4};
    spec.seeds = {1, 2};
    const auto records = run_benchmark(spec);
    ASSERT_EQ(records.size(), 4u);
    for (const auto& r : records) {
        EXPECT_EQ(r.total_queries, r.eval + r.cut);
        EXPECT_TRUE(r.ok());
    }
    std::stringstream ss;
    write_csv(ss, records);
    const auto back = read_csv(ss);
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        EXPECT_EQ(back[k].protocol, records[k].protocol);
        EXPECT_EQ(back[k].n, records[k].n);
        EXPECT_EQ(back[k].seed, records[k].seed);
        EXPECT_EQ(back[k].total_queries, records[k].total_queries);
        EXPECT_EQ(back[k].cuts_produced, records[k].cuts_produced);
        EXPECT_EQ(back[k].status, records[k].status);
    }
}

TEST(Bench, FailuresAreRecordedPerRow) {
    BenchmarkSpec spec;
    spec.protocol = "cut-choose";
    spec.ladder = {2, 3};
    spec.seeds = {1};
    const auto records = run_benchmark(spec);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_TRUE(records[0].ok());
    EXPECT_FALSE(records[1].ok());
}

TEST(Bench, LadderSlopes) {
    BenchmarkSpec spec;
    spec.protocol = "even-paz";
    spec.ladder = {2, 4, 8, 16, 32, 64, 128, 256};
    spec.seeds = {1};
    // Even-Paz: queries stay within a constant band of n log2 n.
    for (const auto& [n, q] : median_queries(run_benchmark(spec))) {
        const double ratio = q / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
        EXPECT_GE(ratio, 1.0) << "n=" << n;
        EXPECT_LE(ratio, 2.0) << "n=" << n;
    }
    spec.protocol = "alg1";
    spec.ladder = {4, 8, 16};
    EXPECT_LE(fit_loglog_slope(run_benchmark(spec)), 4.5);
}

TEST_F(CliTest, GenIsDeterministic) {
    ASSERT_EQ(cli({"gen", "--n", "4", "--kind", "random-piecewise", "--seed", "9", "--out", path("a.json")}).code, 0);
    ASSERT_EQ(cli({"gen", "--n", "4", "--kind", "random-piecewise", "--seed", "9", "--out", path("b.json")}).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const Instance inst = instance_from_json(read_json_file(path("a.json")));
    EXPECT_EQ(inst.n(), 4u);
}

TEST_F(CliTest, GenKinds) {
    const CliRun u = cli({"gen", "--n", "4", "--kind", "uniform"});
    ASSERT_EQ(u.code, 0);
    EXPECT_EQ(instance_from_json(Json::parse(u.out)), uniform_instance(4));

    ASSERT_EQ(cli({"gen", "--n", "2", "--kind", "matrix", "--matrix", "identity", "--out", path("m.json"),
                   "--allocation-out", path("ma.json")})
                  .code,
              0);
    const Instance m = instance_from_json(read_json_file(path("m.json")));
    EXPECT_EQ(m[0].eval(Interval(0, Rational(1, 2))), Rational(1));

    ASSERT_EQ(cli({"gen", "--n", "5", "--kind", "clb2-hard", "--seed", "3", "--out", path("h.json")}).code, 0);
    const Instance h = instance_from_json(read_json_file(path("h.json")));
    EXPECT_EQ(h[0], h[1]);

    EXPECT_EQ(cli({"gen", "--n", "3", "--kind", "lumpy"}).code, kExitUsage);
    EXPECT_EQ(cli({"gen", "--kind", "uniform"}).code, kExitUsage);
}

TEST_F(CliTest, RunThenCheck) {
    ASSERT_EQ(cli({"gen", "--n", "3", "--kind", "random-piecewise", "--seed", "2", "--out", path("i.json")}).code, 0);
    const CliRun r = cli({"run", "--protocol", "alg2", "--instance", path("i.json"), "--eps", "1/10", "--out",
                       path("out")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"allocation.json", "ledger.json", "trace.json"}) EXPECT_TRUE(fs::exists(path("out/") + f));
    const Json ledger = read_json_file(path("out/ledger.json"));
    EXPECT_GT(ledger["totals"]["actual"].get<std::uint64_t>(), 0u);

    const CliRun c = cli({"check", "--allocation", path("out/allocation.json"), "--instance", path("i.json"), "--notion",
                       "delta-clb", "--k", "3", "--delta", "3/10", "--out", path("report.json")});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(read_json_file(path("report.json"))["verdict"], "pass");

    EXPECT_EQ(cli({"check", "--allocation", path("out/allocation.json"), "--instance", path("i.json"), "--notion",
                   "eps-perfect", "--eps", "1/10"})
                  .code,
              0);
}

TEST_F(CliTest, CheckFailureHasWitnessAndExitOne) {
    ASSERT_EQ(cli({"hierarchy", "--n", "4", "--case", "chb-not-ef", "--out", path("h")}).code, 0);
    const CliRun c = cli({"check", "--allocation", path("h/allocation.json"), "--instance", path("h/instance.json"),
                       "--notion", "envy-free"});
    EXPECT_EQ(c.code, kExitFail);
    const Json rep = Json::parse(c.out);
    EXPECT_EQ(rep["verdict"], "fail");
    EXPECT_TRUE(rep.contains("witness"));
}

TEST_F(CliTest, HierarchyReport) {
    const CliRun r = cli({"hierarchy", "--n", "5", "--case", "chb-strict", "--k", "2", "--out", path("h")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json rep = read_json_file(path("h/report.json"));
    EXPECT_EQ(rep["case"], "chb-strict");
    EXPECT_NE(r.out.find("chb-2: pass"), std::string::npos);
    EXPECT_NE(r.out.find("chb-3: fail"), std::string::npos);
    EXPECT_EQ(cli({"hierarchy", "--n", "4", "--case", "chb-strict", "--k", "9", "--out", path("x")}).code, kExitUsage);
}

TEST_F(CliTest, HardnessDemos) {
    const CliRun a = cli({"hardness", "--demo", "adversary", "--n", "4", "--protocol", "even-paz", "--out", path("adv")});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_TRUE(fs::exists(path("adv/growth.json")));
    const CliRun c = cli({"hardness", "--demo", "clb2", "--n", "3", "--protocol", "alg2", "--eps", "1/5", "--seeds", "2",
                       "--out", path("clb2")});
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(fs::exists(path("clb2/clb2_table.json")));
}

TEST_F(CliTest, BenchWritesCsvAndSvg) {
    const CliRun b = cli({"bench", "--protocol", "even-paz", "--ladder", "2,4,8", "--seeds", "2", "--out",
                       path("b/bench.csv"), "--svg", path("b/bench.svg")});
    ASSERT_EQ(b.code, 0) << b.err;
    std::ifstream f(path("b/bench.csv"));
    EXPECT_EQ(read_csv(f).size(), 6u);
    EXPECT_NE(slurp(path("b/bench.svg")).find("<svg"), std::string::npos);
    EXPECT_NE(b.out.find("slope"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
    EXPECT_EQ(cli({"run", "--protocol", "alg1", "--instance", path("missing.json"), "--out", path("o")}).code,
              kExitUsage);
    ASSERT_EQ(cli({"gen", "--n", "3", "--kind", "uniform", "--out", path("u3.json")}).code, 0);
    // Cut and choose only takes two agents.
    EXPECT_EQ(cli({"run", "--protocol", "cut-choose", "--instance", path("u3.json"), "--out", path("o")}).code,
              kExitUsage);
    EXPECT_EQ(cli({"run", "--protocol", "alg2", "--instance", path("u3.json"), "--eps", "2", "--out", path("o")}).code,
              kExitUsage);
}
