#include "json.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SUBDEP_EXE) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("subdep_cli_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Cli, MuReportAndDeterminism) {
  const auto csv = temp_file("mu.csv", "x,y,z\n1,5,0\n1,7,1\n2,7,0\nNA,1,1\n");
  const auto a = run("mu --input " + csv + " --cols x,y --dump-subcopula");
  ASSERT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["command"], "mu");
  EXPECT_EQ(j["results"]["mu_exact"], "1");
  EXPECT_EQ(j["results"]["d_s_exact"], "1/9");
  EXPECT_TRUE(j["results"].contains("subcopula"));
  EXPECT_EQ(run("mu --input " + csv + " --cols x,y --dump-subcopula").out, a.out);
}

TEST(Cli, DumpedSubcopulaValidates) {
  const auto csv = temp_file("dump.csv", "x,y\n1,3\n2,1\n3,3\n4,2\n");
  const auto dump = run("mu --input " + csv + " --dump-subcopula");
  ASSERT_EQ(dump.code, 0);
  const auto json = temp_file("dump.json", dump.out);
  const auto v = run("validate --input " + json);
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(nlohmann::json::parse(v.out)["results"]["valid"], true);
}

TEST(Cli, InvalidSubcopulaIsReportedNotFatal) {
  const auto bad = temp_file("bad.csv", "# d1\n0,1/2,1\n# d2\n0,1/2,1\n# values\n0,0,0\n0,1,1/2\n0,1/2,1\n");
  const auto v = run("validate --input " + bad);
  EXPECT_EQ(v.code, 0);
  const auto j = nlohmann::json::parse(v.out);
  EXPECT_EQ(j["results"]["valid"], false);
  EXPECT_FALSE(j["results"]["violations"].empty());
}

TEST(Cli, InputErrorsExitTwo) {
  const auto csv = temp_file("err.csv", "x,y\n1,2\n");
  EXPECT_EQ(run("mu --input " + csv + " --cols x,nope").code, 2);
  EXPECT_EQ(run("mu --input /nonexistent.csv").code, 2);
  EXPECT_EQ(run("bernoulli --theta1 0.3 --theta2 0.6 --alpha 0.4").code, 2);
  EXPECT_EQ(run("mu --input " + csv + " --format xml").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, BernoulliAndCsvFormat) {
  const auto r = run("bernoulli --theta1 3/10 --theta2 0.6 --alpha 0.3");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["agree"], true);
  EXPECT_EQ(j["results"]["mu_closed_exact"], "1");
  const auto c = run("bernoulli --theta1 3/10 --theta2 0.6 --alpha 0.3 --format csv");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("agree,true"), std::string::npos);
}

TEST(Cli, MatrixAndCurve) {
  const auto csv = temp_file("mx.csv", "a,b,c\n1,2,9\n2,4,8\n3,6,7\n4,8,6\n");
  const auto m = run("matrix --input " + csv);
  ASSERT_EQ(m.code, 0);
  const auto j = nlohmann::json::parse(m.out);
  EXPECT_EQ(j["results"]["mu"][0][2], -1.0);
  const auto c = run("clayton-curve --theta-min -1 --theta-max 2 --steps 4 --resolution 64 --format csv");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("theta,mu,tau,rho,precision_flag,theta_zero", 0), 0u);
}
