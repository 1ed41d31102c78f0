#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "flipwide/cli.hpp"
#include "flipwide/generators.hpp"
#include "flipwide/graph.hpp"
#include "flipwide/io.hpp"

namespace flipwide {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::initializer_list<std::string> args, const std::string& input = "") {
  std::vector<std::string> owned{"flipwide"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("flipwide_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string slurp(const std::string& name) const {
    std::ifstream f(path(name));
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  void dump(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

 private:
  fs::path dir_;
};

TEST_F(CliTest, GenerateWritesEdgeList) {
  const auto r = run_cli({"generate", "clique", "4"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  ASSERT_EQ(run_cli({"generate", "random_bounded_degree", "30", "3", "--seed", "5", "-o", path("g")}).code, 0);
  EXPECT_EQ(slurp("g"), to_edge_list(generate({Family::RandomBoundedDegree, 30, 3, 5})));
}

TEST_F(CliTest, FlipWidenPipelineAndVerifyRoundTrip) {
  const std::string graph = run_cli({"generate", "clique", "50"}).out;
  const auto fw = run_cli({"flip-widen", "-A", "all", "-r", "3", "-m", "8", "-o", path("res.json")}, graph);
  ASSERT_EQ(fw.code, cli::kOk) << fw.err;
  const json report = json::parse(fw.out);
  EXPECT_TRUE(report["verified"].get<bool>());
  EXPECT_EQ(report["graph_digest"].get<std::string>().size(), 16u);
  EXPECT_GE(report["result"]["b_set"].size(), 8u);
  EXPECT_EQ(report["result"]["radius"], 3);

  const json saved = json::parse(slurp("res.json"));
  EXPECT_EQ(saved, report["result"]);
  dump("g.edges", graph);
  const auto ver = run_cli({"verify", "-g", path("g.edges"), "--result", path("res.json")});
  EXPECT_EQ(ver.code, cli::kOk) << ver.err;
  EXPECT_EQ(json::parse(ver.out)["verified"], saved["verified"]);

  // Same inputs, same bytes.
  EXPECT_EQ(run_cli({"flip-widen", "-A", "all", "-r", "3", "-m", "8", "-o", path("res.json")}, graph).out, fw.out);
}

TEST_F(CliTest, VerifyReportsTheViolatingPair) {
  const std::string graph = run_cli({"generate", "clique", "20"}).out;
  dump("g.edges", graph);
  ASSERT_EQ(run_cli({"flip-widen", "-g", path("g.edges"), "-A", "all", "-r", "2", "-o", path("res.json")}).code, 0);
  json res = json::parse(slurp("res.json"));
  ASSERT_FALSE(res["flips"].empty());
  res["flips"].erase(0);
  dump("bad.json", res.dump());
  const auto ver = run_cli({"verify", "-g", path("g.edges"), "--result", path("bad.json")});
  EXPECT_EQ(ver.code, cli::kVerificationFailed);
  const json report = json::parse(ver.out);
  EXPECT_FALSE(report["verified"].get<bool>());
  ASSERT_TRUE(report.contains("violating_pair"));
  EXPECT_EQ(report["violating_pair"].size(), 2u);
  EXPECT_NE(ver.err.find("pair"), std::string::npos);
}

TEST_F(CliTest, DiagnoseFindsTheHalfGraphOrder) {
  const std::string graph = run_cli({"generate", "half_graph", "6"}).out;
  const auto d = run_cli({"diagnose", "--order", "6"}, graph);
  ASSERT_EQ(d.code, cli::kOk) << d.err;
  const json report = json::parse(d.out);
  EXPECT_TRUE(report["order"]["found"].get<bool>());
  EXPECT_TRUE(report["order"]["valid"].get<bool>());
  EXPECT_EQ(report["order"]["a"].size(), 6u);

  const auto none = run_cli({"diagnose", "--order", "3"}, run_cli({"generate", "clique", "5"}).out);
  ASSERT_EQ(none.code, cli::kOk);
  EXPECT_FALSE(json::parse(none.out)["order"]["found"].get<bool>());
  EXPECT_EQ(json::parse(none.out)["order"]["mode"], "exhaustive");
}

TEST_F(CliTest, DiagnoseAlternationRank) {
  dump("seq", "0\n1\n2\n3\n");
  const auto d = run_cli({"diagnose", "--alt-rank", "--seq", path("seq")}, run_cli({"generate", "matching", "4"}).out);
  ASSERT_EQ(d.code, cli::kOk) << d.err;
  const json report = json::parse(d.out);
  EXPECT_EQ(report["alternation"]["rank"], 2);
  EXPECT_EQ(report["exception"]["rank"], 1);
}

TEST_F(CliTest, ExtractReportsAnIndiscernibleSubsequence) {
  const auto e = run_cli({"extract", "--phi", "edge", "--k", "3", "-m", "2", "--seq", "all"},
                         run_cli({"generate", "path", "30"}).out);
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  const json report = json::parse(e.out);
  EXPECT_TRUE(report["indiscernible"].get<bool>());
  EXPECT_GE(report["length"].get<std::size_t>(), 2u);

  const auto eq = run_cli({"extract", "--phi", "eq", "--constants", "0,1", "--k", "2", "--seq", "all"},
                          run_cli({"generate", "star_forest", "6", "3"}).out);
  EXPECT_EQ(eq.code, cli::kOk) << eq.err;

  const std::string path12 = run_cli({"generate", "path", "12"}).out;
  const auto greedy = run_cli({"extract", "--k", "3", "--seq", "all"}, path12);
  const auto best = run_cli({"extract", "--k", "3", "--seq", "all", "--strategy", "maximum"}, path12);
  ASSERT_EQ(best.code, cli::kOk) << best.err;
  EXPECT_EQ(json::parse(greedy.out)["strategy"], "greedy");
  EXPECT_EQ(json::parse(best.out)["strategy"], "maximum");
  EXPECT_GE(json::parse(best.out)["length"].get<std::size_t>(), json::parse(greedy.out)["length"].get<std::size_t>());
}

TEST_F(CliTest, ApplyFlipsMakesBIndependent) {
  const std::string graph = run_cli({"generate", "clique", "12"}).out;
  dump("g.edges", graph);
  ASSERT_EQ(run_cli({"flip-widen", "-g", path("g.edges"), "-A", "all", "-r", "1", "-o", path("res.json")}).code, 0);
  const auto ap = run_cli({"apply-flips", "-g", path("g.edges"), "--flips", path("res.json")});
  ASSERT_EQ(ap.code, cli::kOk) << ap.err;
  std::istringstream flipped(ap.out);
  const Graph h = read_edge_list(flipped);
  const json res = json::parse(slurp("res.json"));
  std::vector<Vertex> b = res["b_set"].get<std::vector<Vertex>>();
  EXPECT_TRUE(is_distance_r_independent(h, VertexSet(b), 1));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"generate", "petersen", "3"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"generate", "grid", "3"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"verify", "-g", path("missing"), "--result", path("missing.json")}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"flip-widen", "-A", "all", "-r", "1"}, "3 1\n0 0\n").code, cli::kUsage);
  dump("junk.json", "{\"b_set\": [1, 2");
  const std::string graph = run_cli({"generate", "path", "4"}).out;
  EXPECT_EQ(run_cli({"verify", "--result", path("junk.json")}, graph).code, cli::kUsage);

  const auto shortfall = run_cli({"flip-widen", "-A", "all", "-r", "2", "-m", "500"},
                                 run_cli({"generate", "star_forest", "5", "3"}).out);
  EXPECT_EQ(shortfall.code, cli::kBudget);
  const json report = json::parse(shortfall.out);
  EXPECT_TRUE(report["shortfall"].get<bool>());
  EXPECT_TRUE(report["verified"].get<bool>());
}

}  // namespace
}  // namespace flipwide
