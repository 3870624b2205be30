#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  for (auto& a : args) {
    if (a.rfind("@", 0) == 0) a = std::string(INVLIM_DATA_DIR) + "/" + a.substr(1);
  }
  const int code = invlim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, ValidatePoset) {
  auto r = run({"validate", "@wedge.poset"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "valid"));
}

TEST(Cli, LimitOfConstantSystem) {
  auto r = run({"limit", "@const01.system"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "threads: 2")) << r.out;
}

TEST(Cli, DerivedWedge) {
  auto r = run({"derived", "--n", "1", "@wedgeZ.system"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "lim^1 invariants: free rank 1")) << r.out;
  auto all = run({"derived", "@wedgeZ.system"});
  EXPECT_TRUE(contains(all.out, "lim^0 invariants: free rank 0, torsion []")) << all.out;
}

TEST(Cli, SurjectivityVerdicts) {
  EXPECT_EQ(run({"surjective", "@const01.system"}).code, 0);
  auto r = run({"surjective", "@shrinking.tower"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "surjective: no")) << r.out;
}

TEST(Cli, MittagLefflerAndHorizon) {
  auto r = run({"ml", "@clipdec.tower"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "unstable at horizon 10")) << r.out;
  auto shrinking = run({"ml", "@shrinking.tower"});
  EXPECT_TRUE(contains(shrinking.out, "settles at the horizon")) << shrinking.out;
  auto longer = run({"ml", "--horizon", "20", "@clipdec.tower", "--json"});
  auto j = nlohmann::json::parse(longer.out);
  EXPECT_EQ(j["result"]["horizon"], 20);
}

TEST(Cli, UniversalImages) {
  auto r = run({"images", "@clipdec.tower"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "X'_0 = { 0 }")) << r.out;
}

TEST(Cli, Exactness) {
  auto r = run({"exactness", "@times_two.sequence"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "passes: yes"));
  EXPECT_TRUE(contains(r.out, "lim C: free rank 0, torsion [2]"));
}

TEST(Cli, ScdOnCrown) {
  auto r = run({"scd", "@crown.poset", "--trials", "3", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "scd lower bound: 1")) << r.out;
}

TEST(Cli, Henkin) {
  auto e = run({"henkin", "eps", "--poset", "@chain3.poset", "--alpha", "1", "--beta", "2", "--tuple", "2,3"});
  EXPECT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(contains(e.out, "= (1,3)")) << e.out;
  auto n = run({"henkin", "enumerate", "--poset", "@chain3.poset", "--level", "1", "--maxlen", "2"});
  EXPECT_EQ(n.code, 0) << n.err;
  EXPECT_TRUE(contains(n.out, "tuples: 3")) << n.out;
  auto bad = run({"henkin", "eps", "--poset", "@chain3.poset", "--alpha", "2", "--beta", "1", "--tuple", "1,2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(contains(bad.err, "NotComparable")) << bad.err;
}

TEST(Cli, BergmanDemo) {
  auto r = run({"bergman", "demo", "--n", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "all identities hold: yes")) << r.out;
}

TEST(Cli, JsonIsDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"scd", "@crown.poset", "--trials", "4", "--seed", "3", "--json"},
           {"bergman", "demo", "--n", "4", "--seed", "9", "--json"},
           {"limit", "@const01.system", "--json"}}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_FALSE(j.contains("elapsed_ms"));
  }
  auto j = nlohmann::json::parse(run({"limit", "@const01.system", "--json"}).out);
  EXPECT_EQ(j["result"]["threads"], 2);
  EXPECT_EQ(j["inputs"][0]["digest"].get<std::string>().size(), 16u);
  auto timed = nlohmann::json::parse(run({"limit", "@const01.system", "--json", "--timing"}).out);
  EXPECT_TRUE(timed.contains("elapsed_ms"));
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"validate", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"derived", "@wedge.poset"}).code, 2);
  auto budget = run({"limit", "--budget", "1", "@const01.system"});
  EXPECT_EQ(budget.code, 2);
  EXPECT_TRUE(contains(budget.err, "BudgetExceeded")) << budget.err;
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Digest) {
  EXPECT_EQ(invlim::cli::digest(""), "cbf29ce484222325");
  EXPECT_EQ(invlim::cli::digest("a"), "af63dc4c8601ec8c");
}
