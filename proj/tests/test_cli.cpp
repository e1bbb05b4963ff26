#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = std::string(SURFHOM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, VerifyAllPasses) {
  CliResult r = run("verify all");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("remark45H"), std::string::npos);
}

TEST(Cli, JsonReportsAreByteIdentical) {
  CliResult a = run("verify all --json"), b = run("verify all --json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j.size(), 7u);
  EXPECT_EQ(j[0]["example"], "example1");
  EXPECT_EQ(j[6]["example"], "remark45H");
}

TEST(Cli, ClaimFailureExitsOne) { EXPECT_EQ(run("verify example2H --modulus 2").code, 1); }

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("verify example9").code, 2);
  EXPECT_EQ(run("verify all --modulus 6").code, 2);
  EXPECT_EQ(run("export example1 --format svg").code, 2);
  EXPECT_EQ(run("minima example4 --procedure III --bound 1").code, 2);
  EXPECT_EQ(run("minima example4 --procedure I --bound x/y").code, 2);
  EXPECT_EQ(run("minima example2G --procedure I --bound 1/2").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, ExportFormats) {
  CliResult dot = run("export example2G --format dot");
  EXPECT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("graph", 0), 0u);
  CliResult json = run("export example3 --format json");
  EXPECT_EQ(json.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(json.out).contains("hyperbolic"));
}

TEST(Cli, MinimaTrace) {
  CliResult r = run("minima example4 --procedure II --modulus 0 --bound 13/12");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["events"].size(), 10u);
  EXPECT_EQ(j["events"][7]["cycle"], "u8");
  EXPECT_EQ(j["events"][7]["decision"], "rejected");
  EXPECT_EQ(j["events"][9]["length"], "21/20");
  EXPECT_TRUE(j["complete"]);
}
