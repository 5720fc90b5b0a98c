#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "memdyn/dynamics.hpp"
#include "memdyn/io.hpp"

namespace memdyn::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Point2 pt(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

std::string repeat_lines(const std::string& key, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) s += key + "\n";
  return s;
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("memdyn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(CliPredict, BWinsExample) {
  const Result r = call({"predict", "--a", "1.2,2.4", "--b", "1.8,2.1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["case"], "b_wins");
  EXPECT_EQ(pt(j["limit"]), (Point2{1.8, 2.1}));
}

TEST(CliBetacore, PdSegments) {
  const Result r = call({"betacore", "--game", "pd"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["segments"].size(), 2u);
  EXPECT_EQ(pt(j["segments"][0][0]), (Point2{1, 2.5}));
  EXPECT_EQ(pt(j["segments"][0][1]), (Point2{2, 2}));
  EXPECT_EQ(pt(j["segments"][1][1]), (Point2{2.5, 1}));
}

TEST(CliSimulate, GoodPairReachesMutualCooperation) {
  const Result r = call({"simulate", "--p1", "good:eps=0.1", "--p2", "good:eps=0.1", "--x0", "1,1", "--steps",
                         "1000000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(distance(pt(j["estimate"]["limit"]), {2, 2}), 0.02);
  EXPECT_FALSE(j.contains("predicted"));
}

TEST(CliSimulate, EgoistPairSettlesAtThePrediction) {
  const Result r = call({"simulate", "--p1", "semicoop:v=2.25,1.5:eps=0.1", "--p2",
                         "semicoop:v=1.5,2.25:eps=0.1", "--x0", "1.5,1.5", "--steps", "1000000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["predicted"]["case"], "y_point");
  const Point2 y = pt(j["predicted"]["limit"]);
  EXPECT_LE(distance(pt(j["estimate"]["limit"]), y), 0.05);
  EXPECT_LE(j["distance_to_predicted"].get<double>(), 0.05);
  // Egoists end up much closer to mutual defection than to (2,2).
  EXPECT_LT(distance(y, {1, 1}), distance(y, {2, 2}));
}

TEST(CliSimulate, ConstantDefectionClosedForm) {
  const Result r = call({"simulate", "--steps", "10", "--p1", "const:D", "--p2", "const:D", "--x0", "3,0",
                         "--csv", "-", "--summary", "-"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream is(r.out.substr(0, r.out.find('{')));
  const Trajectory tr = read_trajectory_csv(is);
  ASSERT_EQ(tr.size(), 10u);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double t = static_cast<double>(k + 1);
    // (3, 0) followed by t - 1 payoffs of (1, 1).
    EXPECT_NEAR(tr.points[k].x1, (3.0 + (t - 1)) / t, 1e-15);
    EXPECT_NEAR(tr.points[k].x2, (t - 1) / t, 1e-15);
  }
}

TEST_F(CliFiles, SimulateCsvSatisfiesTheRecurrence) {
  const Result r = call({"simulate", "--p1", "semicoop:v=1.5,2.25:eps=0.1", "--p2", "good:eps=0.05", "--x0",
                         "0.5,2", "--t0", "3", "--steps", "5000", "--csv", path("traj.csv"), "--summary",
                         path("summary.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream f(path("traj.csv"));
  const Trajectory tr = read_trajectory_csv(f);
  ASSERT_EQ(tr.t0, 3);
  ASSERT_EQ(tr.t_end(), 5000);
  for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
    // Averages are accumulated in extended precision, so allow a few ulps.
    ASSERT_LE(distance(tr.points[k + 1], beta_step(tr.t_at(k), tr.points[k], tr.payoffs[k])), 1e-14) << k;
  }
  const json s = json::parse(slurp(path("summary.json")));
  EXPECT_EQ(pt(s["run"]["final"]), tr.back());
}

TEST_F(CliFiles, OutputsAreByteIdentical) {
  const std::vector<std::string> base{"simulate", "--p1", "good:eps=0.1", "--p2", "simple:p=-1,q=1,r=0",
                                      "--steps", "3000"};
  auto a = base;
  a.insert(a.end(), {"--csv", path("a.csv"), "--summary", path("a.json")});
  auto b = base;
  b.insert(b.end(), {"--csv", path("b.csv"), "--summary", path("b.json")});
  ASSERT_EQ(call(a).code, kExitOk);
  ASSERT_EQ(call(b).code, kExitOk);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliFiles, OutDirFromEnvironment) {
  ASSERT_EQ(::setenv(kOutDirEnv, path("env").c_str(), 1), 0);
  const Result r = call({"predict", "--a", "2,2", "--b", "2,2", "--out", "p.json"});
  ::unsetenv(kOutDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(slurp(path("env/p.json")))["case"], "same_a");
  // Absolute paths ignore the output directory.
  ASSERT_EQ(call({"--out-dir", path("flag"), "predict", "--a", "2,2", "--b", "2,2", "--out", path("abs.json")}).code,
            kExitOk);
  EXPECT_TRUE(fs::exists(path("abs.json")));
  EXPECT_FALSE(fs::exists(path("flag")));
}

TEST(CliErrors, UsageErrorsExitOne) {
  struct Case {
    std::vector<std::string> args;
    std::string message;
  };
  const std::vector<Case> cases{
      {{}, "subcommand"},
      {{"simulate", "--p2", "good:eps=0.1"}, "--p1"},
      {{"simulate", "--p1", "good:eps=abc", "--p2", "good:eps=0.1"}, "column 10"},
      {{"simulate", "--p1", "good:eps=0.1", "--p2", "good:eps=0.1", "--x0", "1;1"}, "--x0"},
      {{"simulate", "--p1", "good:eps=0.1", "--p2", "good:eps=0.1", "--steps", "1"}, "--steps"},
      {{"simulate", "--p1", "good:eps=0.1", "--p2", "good:eps=0.1", "--game", "/nonexistent.json"}, "--game"},
      {{"metagame", "--mode", "guess"}, "--mode"},
      {{"verify", "--only", "11"}, "--only"},
      {{"plot", "/nonexistent.csv"}, "cannot read"},
  };
  for (const Case& c : cases) {
    const Result r = call(c.args);
    EXPECT_EQ(r.code, kExitUsage) << c.message;
    EXPECT_NE(r.err.find(c.message), std::string::npos) << r.err;
  }
}

TEST(CliErrors, HelpExitsZero) {
  const Result r = call({"simulate", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--p1"), std::string::npos);
}

TEST(CliMetagame, PredictedMatrixIsSwapSymmetric) {
  const Result r = call({"metagame", "--n", "5", "--mode", "predicted"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["cells"].size(), 25u);
  std::vector<std::vector<Point2>> u(5, std::vector<Point2>(5));
  for (const json& c : j["cells"]) u[c["i"].get<std::size_t>()][c["j"].get<std::size_t>()] = pt(c["payoff"]);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_LE(distance(u[i][k], swapped(u[4 - k][4 - i])), 1e-12) << i << "," << k;
    }
  }
  EXPECT_NE(std::find(j["pure_nash"].begin(), j["pure_nash"].end(), json::array({2, 2})), j["pure_nash"].end());
}

TEST(CliVerify, ExitCodeFollowsTheCriteria) {
  const Result ok = call({"verify", "--only", "7", "--steps", "20000"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("PASS criterion 7"), std::string::npos) << ok.out;
  // Criterion 6 fails on its own terms (see the acceptance notes in the README).
  const Result bad = call({"verify", "--only", "6", "--steps", "20000"});
  EXPECT_EQ(bad.code, kExitVerification) << bad.out;
  EXPECT_NE(bad.out.find("FAIL criterion 6"), std::string::npos) << bad.out;
}

json play_transcript(const std::vector<std::string>& extra, const std::string& input, const fs::path& file,
                     Result* result = nullptr) {
  std::vector<std::string> args{"play", "--transcript", file.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  const Result r = call(args, input);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  if (result) *result = r;
  return json::parse(slurp(file));
}

TEST_F(CliFiles, PlayHumanAlwaysDefects) {
  const json t = play_transcript({"--machine", "good:eps=0.1"}, repeat_lines("d", 400), path("t.json"));
  EXPECT_EQ(t["rounds"].size(), 400u);
  const json& rep = t["report"];
  EXPECT_EQ(rep["status"], "ok");
  EXPECT_GE(rep["liminf_x1"].get<double>(), 1.0 - 0.02);
}

TEST_F(CliFiles, PlayHumanAlwaysCooperates) {
  const json t = play_transcript({"--machine", "good:eps=0.1"}, repeat_lines("c", 400), path("t.json"));
  const json& rep = t["report"];
  EXPECT_EQ(rep["status"], "ok");
  EXPECT_LE(rep["limsup_x2"].get<double>(), 2.0 + 0.02);
  EXPECT_LE(distance(pt(t["final"]), {2, 2}), 0.05);
}

TEST_F(CliFiles, PlaySemicoopCapsTheHuman) {
  const json t = play_transcript({"--machine", "semicoop:v=2.25,1.5:eps=0.1"}, repeat_lines("c", 300),
                                 path("t.json"));
  EXPECT_EQ(t["report"]["cap"].get<double>(), 1.5);
  EXPECT_LE(t["report"]["limsup_x2"].get<double>(), 1.5 + 0.02);
}

TEST_F(CliFiles, PlayQuitAtOnce) {
  const json t = play_transcript({}, "q\n", path("t.json"));
  EXPECT_TRUE(t["rounds"].empty());
  EXPECT_TRUE(t["final"].is_null());
  EXPECT_EQ(t["report"]["status"], "insufficient_rounds");
}

TEST_F(CliFiles, PlayRepromptsOnInvalidKeys) {
  Result r;
  const json t = play_transcript({}, "x\n\nC\nmaybe\n d \nq\n", path("t.json"), &r);
  ASSERT_EQ(t["rounds"].size(), 2u);
  EXPECT_EQ(t["rounds"][0]["a2"], "C");
  EXPECT_EQ(t["rounds"][1]["a2"], "D");
  std::size_t reprompts = 0;
  for (std::size_t pos = 0; (pos = r.out.find("invalid input", pos)) != std::string::npos; ++pos) ++reprompts;
  EXPECT_EQ(reprompts, 3u);
}

TEST_F(CliFiles, PlayRoundCap) {
  const json t = play_transcript({"--max-rounds", "5"}, repeat_lines("c", 10), path("t.json"));
  EXPECT_EQ(t["rounds"].size(), 5u);
  EXPECT_EQ(call({"play", "--max-rounds", "1000001"}, "").code, kExitUsage);
  EXPECT_EQ(call({"play", "--machine", "const:C"}, "").code, kExitUsage);
}

TEST_F(CliFiles, ReplayDetectsTampering) {
  const json t = play_transcript({}, repeat_lines("d", 150) + repeat_lines("c", 100), path("t.json"));
  const Result ok = call({"play", "--replay", path("t.json")});
  ASSERT_EQ(ok.code, kExitOk) << ok.err << ok.out;
  EXPECT_TRUE(json::parse(ok.out)["consistent"].get<bool>());

  json bad = t;
  bad["rounds"][40]["a1"] = bad["rounds"][40]["a1"] == "C" ? "D" : "C";
  std::ofstream(path("bad.json")) << bad.dump();
  const Result r = call({"play", "--replay", path("bad.json")});
  EXPECT_EQ(r.code, kExitVerification);
  EXPECT_FALSE(json::parse(r.out)["consistent"].get<bool>());

  std::ofstream(path("junk.json")) << "{\"machine\": 3}";
  EXPECT_EQ(call({"play", "--replay", path("junk.json")}).code, kExitUsage);
}

TEST_F(CliFiles, PlotGoodPairMarksMutualCooperation) {
  ASSERT_EQ(call({"simulate", "--p1", "good:eps=0.1", "--p2", "good:eps=0.1", "--x0", "0.5,2.5", "--steps",
                  "20000", "--csv", path("g.csv"), "--summary", path("g.json")})
                .code,
            kExitOk);
  const Result a = call({"plot", path("g.csv"), "--p1", "good:eps=0.1", "--p2", "good:eps=0.1"});
  const Result b = call({"plot", path("g.csv"), "--p1", "good:eps=0.1", "--p2", "good:eps=0.1"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  for (const char* id : {"id=\"polytope\"", "id=\"region-p1\"", "id=\"region-p2\"", "id=\"trajectory\"",
                         "id=\"limit\""}) {
    EXPECT_NE(a.out.find(id), std::string::npos) << id;
  }
  EXPECT_NE(a.out.find(">(2,2)</text>"), std::string::npos);
  // 640 px frame over [-0.25, 3.25]: (2, 2) sits at (404.57, 235.43); the run ends within a pixel of it.
  const auto at = a.out.find("<circle id=\"end\" cx=\"");
  ASSERT_NE(at, std::string::npos);
  double cx = 0;
  double cy = 0;
  ASSERT_EQ(std::sscanf(a.out.c_str() + at, "<circle id=\"end\" cx=\"%lf\" cy=\"%lf\"", &cx, &cy), 2);
  EXPECT_NEAR(cx, 404.57, 1.0);
  EXPECT_NEAR(cy, 235.43, 1.0);
}

TEST_F(CliFiles, PlotEgoistPairMarksY) {
  const std::vector<std::string> specs{"--p1", "semicoop:v=2.25,1.5:eps=0.1", "--p2", "semicoop:v=1.5,2.25:eps=0.1"};
  std::vector<std::string> sim{"simulate", "--steps", "20000", "--csv", path("e.csv"), "--summary", path("e.json")};
  sim.insert(sim.end(), specs.begin(), specs.end());
  ASSERT_EQ(call(sim).code, kExitOk);
  std::vector<std::string> plot{"plot", path("e.csv"), "--out", path("e.svg")};
  plot.insert(plot.end(), specs.begin(), specs.end());
  ASSERT_EQ(call(plot).code, kExitOk);
  const std::string svg = slurp(path("e.svg"));
  EXPECT_NE(svg.find(">y</text>"), std::string::npos);
}

TEST_F(CliFiles, PlotRejectsMalformedCsv) {
  std::ofstream(path("bad.csv")) << "t,x1,x2\n1,2\n";
  const Result r = call({"plot", path("bad.csv")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace memdyn::cli
