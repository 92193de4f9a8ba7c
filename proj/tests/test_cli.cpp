#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AUTOBID_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(AUTOBID_DATA) + "/" + name; }

}  // namespace

TEST(Cli, EquilibriaOnWorkedInstance) {
  auto r = run("equilibria --instance " + data("e1.json") + " --targets 1,1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["ks"], nlohmann::json::parse("[1,2]"));
  r = run("equilibria --instance " + data("e1.json") + " --targets 1/2,1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["ks"], nlohmann::json::parse("[0,1]"));
}

TEST(Cli, ThreeBiddersIsUsageError) {
  EXPECT_EQ(run("equilibria --instance " + data("three_bidders.json") + " --targets 1,1,1").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("gen --bidders 1").code, 2);
  EXPECT_EQ(run("equilibria --instance /nonexistent.json --targets 1,1").code, 2);
  EXPECT_EQ(run("equilibria --instance " + data("e1.json") + " --targets 1,x").code, 2);
  EXPECT_EQ(run("audit-raic --instance " + data("e1.json") + " --targets 1 --true-target 1 --grid 2").code, 2);
}

TEST(Cli, GenIsDeterministic) {
  const auto a = run("gen --seed 7 --bidders 2 --queries 4 --max-value 20");
  const auto b = run("gen --seed 7 --bidders 2 --queries 4 --max-value 20");
  const auto c = run("gen --seed 8 --bidders 2 --queries 4 --max-value 20");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["queries"].size(), 4u);
}

TEST(Cli, AuditsPass) {
  const auto base = " --instance " + data("e1.json") + " --true-target 1 --targets 1 --grid 1/2,1";
  auto r = run("audit-raic" + base + " --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "report,ks,min_lw,max_lw\n1/2,0;1,0,4\n1,1;2,4,5\n");
  r = run("audit-oaic" + base);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["oaic"], "pass");
}

TEST(Cli, OracleVerify) {
  auto r = run("oracle-verify --instance " + data("e1.json") + " --targets 1,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["agree"].get<bool>());
  r = run("oracle-verify --random 20 --seed 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 20);
}

TEST(Cli, ConstructLowerAndHigher) {
  auto r = run("construct --instance " + data("e1.json") + " --targets 1,1 --bids " + data("e1_n2_bids.json") +
               " --new-target 1/2");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["bids"], nlohmann::json::parse(R"([["+inf","1/2"],["1","+inf"]])"));
  EXPECT_TRUE(j["verdict"]["equilibrium"].get<bool>());
  r = run("construct --instance " + data("e1.json") + " --targets 1/2,1 --bids " + data("e1_reported_bids.json") +
          " --new-target 1 --direction higher");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["outcome"]["winners"], nlohmann::json::parse("[1,2]"));
}

TEST(Cli, CheckExitCodes) {
  const auto e1 = " --instance " + data("e1.json") + " --targets 1,1";
  EXPECT_EQ(run("check" + e1 + " --k 2 --multipliers 3,1").code, 0);
  EXPECT_EQ(run("check" + e1 + " --k 0 --multipliers 1,1").code, 1);
  EXPECT_EQ(run("check" + e1 + " --bids " + data("e1_n2_bids.json")).code, 0);
  EXPECT_EQ(run("check" + e1).code, 2);
}

TEST(Cli, CapFromEnvironment) {
  EXPECT_EQ(run("check --instance " + data("e1.json") + " --targets 1,1 --bids " + data("e1_n2_bids.json") +
                " --cap 1")
                .code,
            2);
  const std::string env = "AUTOBID_EQ_CAP=1 ";
  const std::string cmd = env + AUTOBID_CLI + " check --instance " + data("e1.json") + " --targets 1,1 --bids " +
                          data("e1_n2_bids.json") + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

TEST(Cli, FeasibleRegion) {
  const auto r = run("feasible-region --instance " + data("e1.json") + " --targets 1,1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_FALSE(j["rows"][0]["raw_feasible"].get<bool>());
  EXPECT_EQ(j["rows"][1]["certificate"]["c1"], "19/3");
}
