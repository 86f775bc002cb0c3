#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "antistoch/graph.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using antistoch::cli::run;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("antistoch_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_F(CliTest, GenThenDecideDegIsDeterministic) {
  const auto g = path("g.asg");
  ASSERT_EQ(call({"gen", "--n", "200", "--seed", "7", "--out", g}).status, 0);
  EXPECT_EQ(antistoch::parse(slurp(g)), antistoch::random_graph(200, {7, 0}));
  const auto a = call({"decide-deg", "--in", g});
  const auto b = call({"decide-deg", "--in", g});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = json::parse(a.out);
  EXPECT_TRUE(doc["in_a"].is_boolean());
  EXPECT_EQ(doc["config"]["codes_down_len"], 5);
}

TEST_F(CliTest, AttackDegRoundTrip) {
  const auto g = path("g.asg");
  const auto g2 = path("g2.asg");
  for (int seed = 0; seed < 5; ++seed) {
    ASSERT_EQ(call({"gen", "--n", "500", "--seed", std::to_string(seed), "--out", g}).status, 0);
    const auto r = call({"attack-deg", "--in", g, "--out", g2});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto doc = json::parse(r.out);
    const auto before = antistoch::parse(slurp(g));
    const auto after = antistoch::parse(slurp(g2));
    EXPECT_LE(antistoch::slot_distance(before, after), 1u);
    const auto verdict = json::parse(call({"decide-deg", "--in", g2}).out);
    if (doc["success"].get<bool>()) EXPECT_TRUE(verdict["in_a"].get<bool>());
  }
}

TEST_F(CliTest, QkCommands) {
  const auto g = path("g.asg");
  const auto sched = path("sched.txt");
  std::ofstream(sched) << "# N_k k\n100 13\n";
  ASSERT_EQ(call({"gen", "--n", "150", "--seed", "3", "--out", g}).status, 0);
  const auto d = call({"decide-qk", "--in", g, "--schedule", sched});
  ASSERT_EQ(d.status, 0) << d.err;
  const auto doc = json::parse(d.out);
  EXPECT_EQ(doc["k"], 13);
  EXPECT_EQ(doc["config"]["schedule"], json::parse("[[100,13]]"));
  EXPECT_EQ(call({"decide-qk", "--in", g}).status, 1);
  EXPECT_EQ(call({"decide-qk", "--in", g, "--k", "12"}).status, 1);
  const auto a = call({"attack-qk", "--in", g, "--k", "13", "--out", path("h.asg")});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_LE(json::parse(a.out)["slot_distance"].get<int>(), 1);
}

TEST_F(CliTest, CodeSubcommand) {
  const auto c = json::parse(call({"code", "--check", "--len", "7"}).out);
  EXPECT_TRUE(c["covering"].get<bool>());
  EXPECT_DOUBLE_EQ(c["density"].get<double>(), 0.125);
  EXPECT_EQ(c["codewords"], 16);
  const auto f = json::parse(call({"code", "--flip", "--word", "1000000"}).out);
  EXPECT_EQ(f["flip_index"], 1);
  EXPECT_EQ(f["flipped_word"], "0000000");
  const auto d = json::parse(call({"code", "--density", "--len", "100"}).out);
  EXPECT_EQ(d["order"], 6);
  EXPECT_EQ(call({"code", "--len", "7"}).status, 1);
  EXPECT_EQ(call({"code", "--check", "--len", "30"}).status, 1);
}

TEST_F(CliTest, SimulateJsonKeyOrderAndCsv) {
  const auto r = call({"simulate", "--experiment", "prob_a", "--n", "500", "--trials", "50", "--seed", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  const std::vector<std::string> expected{"experiment", "n",         "k",       "m",       "trials",
                                          "seed",       "successes", "frequency", "ci_low", "ci_high",
                                          "elapsed_s",  "notes",     "config",  "extras"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(doc["config"]["seed"], 2);
  const auto csv = call({"simulate", "--experiment", "prob_a", "--n", "500", "--trials", "50", "--seed", "2", "--csv"});
  std::istringstream lines(csv.out);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header, "experiment,n,k,m,trials,seed,successes,frequency,ci_low,ci_high,elapsed_s,notes");
  EXPECT_EQ(row.rfind("prob_a,500,,,50,2,", 0), 0u);
}

TEST_F(CliTest, SimulateJobsDoNotChangeOutput) {
  auto strip = [](std::string s) {
    auto doc = json::parse(s);
    doc.erase("elapsed_s");
    return doc.dump();
  };
  const std::vector<std::string> base{"simulate", "--experiment", "mod_uniformity", "--n", "200", "--m", "3",
                                      "--trials", "300", "--seed", "5"};
  auto one = base, four = base;
  one.insert(one.end(), {"--jobs", "1"});
  four.insert(four.end(), {"--jobs", "4"});
  EXPECT_EQ(strip(call(one).out), strip(call(four).out));
}

TEST_F(CliTest, Stats) {
  const auto r = call({"stats", "--n", "1000", "--seed", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["P"].size(), 4u);
  EXPECT_EQ(doc["degree_range"].size(), 5u);
  EXPECT_EQ(call({"stats", "--n", "300"}).status, 1);
  EXPECT_EQ(call({"stats"}).status, 1);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({}).status, 2);
  EXPECT_EQ(call({"frobnicate"}).status, 2);
  EXPECT_EQ(call({"gen", "--n", "abc", "--out", path("x")}).status, 2);
  EXPECT_EQ(call({"decide-deg", "--in", path("missing.asg")}).status, 2);
  std::ofstream(path("bad.asg")) << "n=3\nzz\n";
  EXPECT_EQ(call({"decide-deg", "--in", path("bad.asg")}).status, 2);
  ASSERT_EQ(call({"gen", "--n", "50", "--out", path("small.asg")}).status, 0);
  EXPECT_EQ(call({"decide-deg", "--in", path("small.asg")}).status, 1);
  EXPECT_EQ(call({"simulate", "--experiment", "mod_uniformity", "--n", "200", "--m", "4", "--trials", "3"}).status, 1);
  EXPECT_EQ(call({"simulate", "--experiment", "bogus", "--n", "200", "--trials", "3"}).status, 1);
  EXPECT_EQ(call({"--help"}).status, 0);
}
