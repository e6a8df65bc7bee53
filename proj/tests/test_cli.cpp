// Runs the built CLI as a subprocess.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LWCS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(run("frobnicate").rc, 2);
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("gauss").rc, 2);  // missing --p
  EXPECT_EQ(run("charsum-scan --out xml").rc, 2);
}

TEST(Cli, ConductorsExample) {
  auto r = run(R"(conductors --spec '{"r":1,"finite":[{"q":7,"case":"case3"}]}')");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["results"][0]["C_3"].get<double>(), 343);
  EXPECT_EQ(j["spec"]["finite"][0]["q"], 7);
  EXPECT_TRUE(j["violations"].empty());
  EXPECT_EQ(j["version"].get<std::string>().rfind("0.1.0+", 0), 0u);
  EXPECT_EQ(run(R"(conductors --spec '{"r":1,"oops":2}')").rc, 2);
}

TEST(Cli, GaussCsv) {
  auto r = run("gauss --p 3 --f 2");
  ASSERT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.rfind("# lwcs ", 0), 0u);
  EXPECT_NE(r.out.find("\nk,re_tau,im_tau,abs_tau\n"), std::string::npos);
  size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 2u + 8u);
  EXPECT_NE(r.out.find(",3\n"), std::string::npos);  // |tau| = 3 printed exactly
}

TEST(Cli, CharsumScanRows) {
  auto r = run("charsum-scan --qmin 3 --qmax 11 --out json");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 5u);
  for (const auto& row : j["results"]) {
    EXPECT_LE(row["abs_S_over_q"].get<double>(), 1000);
    for (const char* k : {"q", "chi_k", "eta_k", "rho_k", "re_S", "im_S"}) EXPECT_TRUE(row.contains(k));
  }
  // one thread or many, same bytes
  EXPECT_EQ(run("charsum-scan --qmin 3 --qmax 11 --jobs 1").out, run("charsum-scan --qmin 3 --qmax 11 --jobs 4").out);
}

TEST(Cli, LocalReportsOracleMismatch) {
  auto ok = run("local --case case1 --q 3 --s 0.1,0 --oracle 6");
  ASSERT_EQ(ok.rc, 0);
  json j = json::parse(ok.out);
  EXPECT_LE(j["results"][0]["abs_diff"].get<double>(), j["results"][0]["tail_bound"].get<double>());
  // the non-split closed form disagrees with the oracle, so this is a violation
  EXPECT_EQ(run("local --case case2ns --q 3 --oracle 6").rc, 1);
}

TEST(Cli, DegenerateNeedsStub) {
  const std::string spec = R"(--spec '{"r":1,"finite":[{"q":3,"case":"case1"}]}')";
  EXPECT_EQ(run("degenerate " + spec).rc, 3);
  auto r = run("degenerate " + spec + " --arch-stub unit");
  ASSERT_EQ(r.rc, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["results"][0]["d3"]["order"], -1);
  EXPECT_EQ(j["results"][0]["d4"]["places"].size(), 2u);
  EXPECT_EQ(j["spec"]["arch_stub"], "unit");
}
