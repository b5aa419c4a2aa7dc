#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + FACTORIX_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string example(const std::string& name) { return std::string("\"") + FACTORIX_EXAMPLES + "/" + name + ".json\""; }

}  // namespace

TEST(Cli, Davenport) {
  auto r = run("davenport '[3,3]' --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["rows"][0]["D"], 5);
}

TEST(Cli, PredictSingleComponent) {
  auto r = run("predict " + example("k1") + " --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NE(r.out.find("3/2"), std::string::npos);
  EXPECT_FALSE(j["rows"].empty());
}

TEST(Cli, FactorizeIdentity) {
  auto r = run("factorize " + example("k1") + " '{}' --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto row = nlohmann::json::parse(r.out)["rows"][0];
  EXPECT_EQ(row["L"], nlohmann::json::array({0}));
  EXPECT_EQ(row["rho"], "1");
}

TEST(Cli, InvariantsJsonl) {
  auto r = run("invariants " + example("k1") + " --cap 5 --format jsonl");
  ASSERT_EQ(r.code, 0) << r.out;
  auto row = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(row["c"], 3);
  EXPECT_FALSE(row["digest"].get<std::string>().empty());
}

TEST(Cli, AtomsAgreeWithClosedForm) {
  auto r = run("atoms " + example("k2") + " --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["closed_form"], "agree");
}

TEST(Cli, MalformedInputExitsTwo) {
  EXPECT_EQ(run("davenport '[3,'").code, 2);
  EXPECT_EQ(run("factorize " + example("k1") + " '{\"free\": {\"1\": 1}}'").code, 2);
  EXPECT_EQ(run("predict /nonexistent/instance.json").code, 2);
  EXPECT_EQ(run("invariants " + example("k1") + " --cap 0").code, 2);
  EXPECT_EQ(run("nosuchcommand").code, 2);
}

TEST(Cli, ResourceCapExitsThree) { EXPECT_EQ(run("davenport '[2000,2000]'").code, 3); }
