#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "support.hpp"

using namespace stp12;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "stp12");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stp12-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const Instance& inst) {
    auto p = dir_ / name;
    write_stp_file(inst, p.string(), name);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveSixPhaseOnP3) {
  auto r = run({"solve", "--alg", "six-phase", file("p3.stp", stp12::testing::path_instance(2))});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("six-phase  cost 2"), std::string::npos) << r.out;
}

TEST_F(Cli, SolveAllWritesAReport) {
  auto r = run({"solve", "--alg", "all", "--witness", "--out", path("solve.json"),
                file("comet.stp", stp12::testing::comet13_instance())});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(slurp(path("solve.json")));
  EXPECT_EQ(doc["schema"], "stp12.solve-report");
  const Json& results = doc["instances"][0]["results"];
  ASSERT_EQ(results.size(), 3u);
  for (const auto& res : results) EXPECT_EQ(res["cost"], 6);
  EXPECT_EQ(results[2]["method"], "dreyfus-wagner");
  EXPECT_NE(r.out.find("witness 1-2"), std::string::npos);
}

TEST_F(Cli, ExactOverCapExitsThree) {
  auto r = run({"solve", "--alg", "exact", "--family", "random-gnp", "-n", "30", "-r", "25"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
}

TEST_F(Cli, CheapestNeverWorseThanStrict) {
  for (const char* mode : {"cheapest", "strict-paper"}) {
    auto r = run({"solve", "--alg", "rs", "--finishing", mode, "--family", "random-gnp", "-n", "12", "-r", "6",
                  "--instances", "40", "--seed", "5", "--out", path(std::string(mode) + ".json")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  Json cheap = Json::parse(slurp(path("cheapest.json")));
  Json strict = Json::parse(slurp(path("strict-paper.json")));
  ASSERT_EQ(cheap["instances"].size(), 40u);
  for (std::size_t i = 0; i < 40; ++i)
    EXPECT_LE(cheap["instances"][i]["results"][0]["cost"].get<Cost>(),
              strict["instances"][i]["results"][0]["cost"].get<Cost>());
}

TEST_F(Cli, ParseErrorsExitTwo) {
  std::ofstream(path("bad.stp")) << "SECTION Graph\nNodes 2\nE 1 2 3\nEND\n";
  auto r = run({"solve", path("bad.stp")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_EQ(run({"solve", "--alg", "nope", path("bad.stp")}).code, 2);
  EXPECT_EQ(run({"solve", path("missing.stp")}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve", "--family", "random-gnp", "-p", "7/5"}).code, 2);
  EXPECT_EQ(run({"solve", "--family", "random-gnp", "-n", "3", "-r", "5"}).code, 2);
  EXPECT_EQ(run({"solve", "--family", "random-gnp", "-r", "0"}).code, 2);
  EXPECT_EQ(run({"compare", "--alg", "exact", "--family", "random-gnp"}).code, 2);
  EXPECT_EQ(run({"audit", "--family", "random-gnp", "--instances", "2"}).code, 2);
  EXPECT_EQ(run({"solve", "--family", "random-gnp", file("p3.stp", stp12::testing::path_instance(2))}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, DensityAcceptsFractionsAndDecimals) {
  EXPECT_EQ(cli::parse_ratio("3/10"), Ratio(3, 10));
  EXPECT_EQ(cli::parse_ratio("0.25"), Ratio(1, 4));
  EXPECT_EQ(cli::parse_ratio("1"), Ratio(1));
  EXPECT_EQ(cli::parse_ratio(".5"), Ratio(1, 2));
  for (const char* bad : {"", "x", "1/0", "-1/2", "1.5", "0.1.2", "3/"}) EXPECT_THROW(cli::parse_ratio(bad), InputError) << bad;
}

TEST_F(Cli, CompareStarClustersAreOptimal) {
  auto r = run({"compare", "--family", "star-cluster", "-k", "4", "-m", "3", "--bridges", "2", "--out",
                path("stars.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(slurp(path("stars.json")));
  ASSERT_EQ(doc["summary"].size(), 2u);
  for (const auto& s : doc["summary"]) {
    EXPECT_EQ(s["max_ratio"]["num"], 1);
    EXPECT_EQ(s["max_ratio"]["den"], 1);
  }
}

TEST_F(Cli, CompareAdversarialSweep) {
  auto r = run({"compare", "--alg", "rs", "--family", "bp-adversarial", "--depth", "9", "--out", path("bp.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(slurp(path("bp.json")));
  Ratio max(doc["summary"][0]["max_ratio"]["num"].get<std::int64_t>(),
            doc["summary"][0]["max_ratio"]["den"].get<std::int64_t>());
  EXPECT_GE(max, Ratio(13, 10));
  EXPECT_EQ(doc["reports"][0]["opt_method"], "brute-force");
}

TEST_F(Cli, CompareIsByteIdenticalAcrossRunsAndJobCounts) {
  std::vector<std::string> base{"compare", "--family", "random-gnp", "-n", "11", "-r", "5", "-p", "2/5",
                                "--instances", "60", "--seed", "42"};
  auto first = base, second = base;
  first.insert(first.end(), {"--out", path("a.json"), "--jobs", "1"});
  second.insert(second.end(), {"--out", path("b.json"), "--jobs", "4"});
  ASSERT_EQ(run(first).code, 0);
  ASSERT_EQ(run(second).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(slurp(path("a.json")).empty());
}

TEST_F(Cli, CompareSkipsInstancesOverTheCaps) {
  auto r = run({"compare", "--family", "random-gnp", "-n", "40", "-r", "20", "--out", path("skip.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(slurp(path("skip.json")));
  EXPECT_EQ(doc["skipped"].size(), 1u);
  EXPECT_TRUE(doc["reports"].empty());
}

TEST_F(Cli, AuditExamples) {
  auto p3 = run({"audit", "--out", path("p3.json"), file("p3.stp", stp12::testing::path_instance(2))});
  ASSERT_EQ(p3.code, 0) << p3.err;
  Json doc = Json::parse(slurp(path("p3.json")));
  EXPECT_EQ(doc["schema"], "stp12.audit-report");
  EXPECT_TRUE(doc["trace"].empty());

  // a long path is never optimal: the single non-edge wins and nothing moves
  auto path6 = run({"audit", "--out", path("path.json"), file("path.stp", stp12::testing::path_instance(6))});
  ASSERT_EQ(path6.code, 0);
  Json long_path = Json::parse(slurp(path("path.json")));
  EXPECT_EQ(long_path["opt"], 2);
  EXPECT_TRUE(long_path["trace"].empty());

  // frozen: this optimum hangs two terminals off a Steiner node, then runs a Steiner path
  auto gnp = run({"audit", "--family", "random-gnp", "-n", "8", "-r", "4", "-p", "1/4", "--seed", "4", "--out",
                  path("gnp.json")});
  ASSERT_EQ(gnp.code, 0) << gnp.err;
  Json g = Json::parse(slurp(path("gnp.json")));
  EXPECT_EQ(g["opt"], 6);
  EXPECT_EQ(g["final_cost"], 6);
  ASSERT_EQ(g["trace"].size(), 2u);
  EXPECT_EQ(g["trace"][0]["kind"], "detach");
  EXPECT_EQ(g["trace"][1]["kind"], "path");
  for (const auto& step : g["trace"]) EXPECT_EQ(step["cost_delta"], 0);

  auto comet = run({"audit", "--mode", "s4", "--family", "comet-chain", "-a", "1", "-b", "3", "--count", "2",
                    "--out", path("comet.json")});
  ASSERT_EQ(comet.code, 0);
  Json c = Json::parse(slurp(path("comet.json")));
  EXPECT_EQ(c["mode"], "s4");
  EXPECT_EQ(c["classification"]["comet(1,3)"], 2);

  EXPECT_EQ(run({"audit", "--family", "random-gnp", "-n", "30", "-r", "25"}).code, 3);
}

TEST_F(Cli, GenWritesParseableFiles) {
  auto r = run({"gen", "--family", "bp-adversarial", "--depth", "3", "--instances", "2", "--shuffle", "--out",
                path("bp.stp")});
  ASSERT_EQ(r.code, 0) << r.err;
  Instance a = read_stp_file(path("bp-1.stp"));
  Instance b = read_stp_file(path("bp-2.stp"));
  EXPECT_EQ(a.node_count(), 9u);
  EXPECT_EQ(b.terminals().size(), 6u);
  auto single = run({"gen", "--family", "comet-chain"});
  EXPECT_EQ(parse_stp(single.out), stp12::testing::comet13_instance());
  EXPECT_EQ(run({"gen", file("p3.stp", stp12::testing::path_instance(2))}).code, 2);
}
