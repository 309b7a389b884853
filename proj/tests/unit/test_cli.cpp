#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(SEGSPEC_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SEGSPEC_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, VerifyReferenceCandidate) {
  const CliRun r = cli("verify " + data("t0_antidiagonal.json") + " --window 20");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("orthogonality").at("ok").get<bool>());
  EXPECT_TRUE(j.at("identity").at("consistent").get<bool>());
}

TEST(Cli, VerifyExactWindowAndFailure) {
  EXPECT_EQ(cli("verify " + data("t0_window.json")).code, 0);
  const CliRun bad = cli("verify " + data("t0_bad_window.json"));
  EXPECT_EQ(bad.code, 1) << bad.out;
  EXPECT_FALSE(nlohmann::json::parse(bad.out).at("orthogonality").at("ok").get<bool>());
}

TEST(Cli, TileDecisions) {
  const CliRun no = cli("tile " + data("nontile_union.json"));
  ASSERT_EQ(no.code, 0) << no.out;
  EXPECT_EQ(nlohmann::json::parse(no.out).at("decision").at("status"), "does_not_tile");
  const CliRun yes = cli("tile " + data("tile_union.json"));
  ASSERT_EQ(yes.code, 0) << yes.out;
  EXPECT_EQ(nlohmann::json::parse(yes.out).at("decision").at("status"), "tiles");
}

TEST(Cli, ProjectReportsNonTilingSupport) {
  const CliRun r = cli("project --t 1/4");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("constant").get<bool>());
  EXPECT_EQ(j.at("construction").at("reason"), "support-does-not-tile");
}

TEST(Cli, ProjectConstructsForHalf) {
  const CliRun r = cli("project --t 1/2");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("construction").at("reason"), "constructed");
  EXPECT_TRUE(j.at("construction").at("orthogonality").at("ok").get<bool>());
}

TEST(Cli, ProjectThreeSegmentFile) {
  const CliRun r = cli("project --segments " + data("three_segments.json") + " --direction 1,0");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(nlohmann::json::parse(r.out).at("constant").get<bool>());
}

TEST(Cli, PlusSpaceIsAUsageError) {
  const CliRun r = cli("zeroset --t -1/2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("zero-set/PlusSpace"), std::string::npos) << r.out;
}

TEST(Cli, ZerosetCsv) {
  const CliRun r = cli("zeroset --t 0 --window 2 --k-min 1 --k-max 1 --format csv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("k,x,y,abs_rho_hat,tangential", 0), 0u) << r.out;
}

TEST(Cli, PackIsByteDeterministic) {
  const CliRun a = cli("pack --t 1/3 --window 4");
  const CliRun b = cli("pack --t 1/3 --window 4");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DiagnoseIntersectingRegime) {
  const CliRun r = cli("diagnose --t -1/4 --window 10");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("periodicity_certificate").is_null());
  EXPECT_EQ(j.at("defect_series").size(), 1u);
}

TEST(Cli, BadArgumentsExitTwo) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("pack --window -1").code, 2);
  EXPECT_EQ(cli("pack --format xml").code, 2);
  EXPECT_EQ(cli("pack --t banana").code, 2);
  EXPECT_EQ(cli("verify /nonexistent.json").code, 2);
}
