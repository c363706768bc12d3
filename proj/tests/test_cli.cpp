#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qapbound/cli.hpp"
#include "qapbound/results.hpp"

using namespace qapbound;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(QAPBOUND_FIXTURES) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("qapbound_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, SolveJson) {
  const auto r = run({"solve", "--method", "hung-ri", "--input", fixture("toy.dd"), "--max-iters", "10", "--output", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["method"], "hung-ri");
  EXPECT_LE(j["iterations"].get<int>(), 10);
  EXPECT_GE(j["final_bound"].get<double>(), j["initial_bound"].get<double>());
  for (const char* key : {"instance", "offset", "stop_reason", "wall_time"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(j.contains("trajectory"));
}

TEST(Cli, SolveTrajectoryAndCsv) {
  const auto r = run({"solve", "--method", "bca", "--input", fixture("toy2.dd"), "--max-iters", "4", "--no-early-stop",
                      "--trajectory"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["trajectory"].size(), 4u);
  EXPECT_EQ(j["iterations"], 4);
  EXPECT_EQ(j["stop_reason"], "iterations");

  const auto csv = run({"solve", "--input", fixture("toy2.dd"), "--max-iters", "4", "--output", "csv"});
  ASSERT_EQ(csv.code, kExitOk);
  EXPECT_EQ(csv.out.rfind("instance,method,initial_bound,final_bound,offset,iterations,stop_reason,wall_time\n", 0), 0u);
}

TEST(Cli, SolveQaplibCarriesOffset) {
  const auto r = run({"solve", "--input", fixture("small.dat"), "--qaplib", "--max-iters", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_GT(json::parse(r.out)["offset"].get<double>(), 0.0);
}

TEST(Cli, LapDegenerate5) {
  const auto r = run({"lap", "--input", fixture("degenerate5.lap")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["kind"], "lap");
  EXPECT_EQ(j["value"], 24.0);
  EXPECT_EQ(j["dual_objective"], 24.0);
  EXPECT_EQ(j["relative_interior"], true);
}

TEST(Cli, LapIlapUsesNullForDummy) {
  const auto path = write_temp("two.lap", "p ilap 2 1\na 0 0 1\na 1 0 2\nd 0 3\nd 1 5\n");
  const auto r = run({"lap", "--input", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["value"], 5.0);
  EXPECT_TRUE(j["assignment"][0].is_null());
  EXPECT_EQ(j["assignment"][1], 0);
  std::filesystem::remove(path);
}

TEST(Cli, Verify) {
  auto r = run({"verify", "--input", fixture("degenerate5.lap")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  r = run({"verify", "--input", fixture("toy.dd")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  r = run({"verify", "--input", fixture("asym.dat"), "--qaplib"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
}

TEST(Cli, VerifySkipsLargeInstances) {
  std::ostringstream text;
  text << "p lap 10\n";
  for (int v = 0; v < 10; ++v)
    for (int l = 0; l < 10; ++l) text << "a " << v << ' ' << l << ' ' << (v * l) % 7 << '\n';
  const auto path = write_temp("big.lap", text.str());
  const auto r = run({"verify", "--input", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("skipped", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, BatchMarksBestBounds) {
  const auto r = run({"batch", "--manifest", fixture("synthetic.json"), "--output", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 15u);
  for (std::size_t i = 0; i < 15; i += 3) {
    double max = -1e300;
    for (std::size_t k = i; k < i + 3; ++k) max = std::max(max, j["rows"][k]["final_bound"].get<double>());
    for (std::size_t k = i; k < i + 3; ++k) {
      const double b = j["rows"][k]["final_bound"];
      // The rule written out independently of is_best_bound.
      const bool best = max < 0 ? b >= (1 + 1e-10) * max : b >= (1 - 1e-10) * max;
      EXPECT_EQ(j["rows"][k]["best"].get<bool>(), best);
    }
  }
  ASSERT_EQ(j["groups"].size(), 2u);
  EXPECT_EQ(j["groups"][0]["group"], "vision");
  EXPECT_EQ(j["groups"][0]["instances"], 3);
}

TEST(Cli, BatchText) {
  const auto r = run({"batch", "--manifest", fixture("synthetic.json"), "--workers", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("vision"), std::string::npos);
  EXPECT_NE(r.out.find("hung-ri"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"solve"}).code, kExitInputError);
  EXPECT_EQ(run({"solve", "--input", "/nonexistent.dd"}).code, kExitInputError);
  EXPECT_EQ(run({"solve", "--input", fixture("toy.dd"), "--method", "simplex"}).code, kExitInputError);
  EXPECT_EQ(run({"solve", "--input", fixture("toy.dd"), "--bogus"}).code, kExitInputError);
  EXPECT_EQ(run({"solve", "--input", fixture("degenerate5.lap")}).code, kExitInputError);
  EXPECT_EQ(run({"lap", "--input", fixture("toy.dd")}).code, kExitInputError);
  EXPECT_EQ(run({"batch", "--manifest", "/nonexistent.json"}).code, kExitInputError);
  const auto bad = run({"solve", "--input", fixture("toy.dd"), "--max-iters", "x"});
  EXPECT_EQ(bad.code, kExitInputError);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, SolveIsDeterministic) {
  auto strip = [](const std::string& text) {
    auto j = json::parse(text);
    j.erase("wall_time");
    return j.dump();
  };
  for (const char* method : {"bca", "hung", "hung-ri"}) {
    const std::vector<std::string> args = {"solve", "--method", method, "--input", fixture("toy3.dd"), "--max-iters",
                                           "15", "--trajectory"};
    const auto first = strip(run(args).out);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(strip(run(args).out), first);
  }
}
