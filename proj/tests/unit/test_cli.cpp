#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "nssol/io.hpp"

namespace nssol::cli {
namespace {

using nlohmann::json;

RunConfig power_law(double m, double n) {
  RunConfig c;
  c.model.N = 3;
  c.model.gamma = 5.0 / 3.0;
  c.model.theta = 1.0;
  c.family = PowerLawFamily{m, n, 1, 1};
  c.grid = {0.0, 0.5, 6, 0.1, 2.0, 5};
  c.profile.samples = 11;
  c.profile.z_max = 2;
  return c;
}

RunConfig polytropic() {
  RunConfig c;
  c.model.N = 1;
  c.model.gamma = 2;
  c.model.theta = 2;
  c.family = PolytropicFamily{1, 1, 0.5};
  c.grid = {0.0, 0.3, 4, 0.1, 2.0, 3};
  c.verify.window = {0.1, 0.3, 0.1, 2};
  c.verify.lattice = 9;
  return c;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cmd(const std::string& cmd, const RunConfig& c, Options opt = {}) {
  std::ostringstream out, err;
  const int code = run(cmd, c, opt, out, err);
  return {code, out.str(), err.str()};
}

TEST(Describe, ReportsDerivedExponent) {
  const auto r = run_cmd("describe", power_law(1, 1));
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["s"].get<double>(), 0.5);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_TRUE(j["vanishing_time"].is_null());
}

TEST(Describe, VanishingTimeIsRootOfLinearFactor) {
  const auto r = run_cmd("describe", power_law(-1, 2));
  ASSERT_EQ(r.code, kOk);
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["vanishing_time"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j["vanishing_time_alternative"].get<double>(), 0.5);
}

TEST(Describe, InvalidFamilyExitsTwo) {
  RunConfig c = polytropic();
  c.model.theta = 3;
  const auto r = run_cmd("describe", c);
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("theta = gamma > 1"), std::string::npos);
}

TEST(Profile, CsvColumns) {
  const auto r = run_cmd("profile", power_law(-1, 1));
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z,y,dy");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 11);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Scale, CsvWithStatusRecord) {
  const auto r = run_cmd("scale", polytropic());
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("t,a,adot\n", 0), 0u);
  const json status = json::parse(r.err);
  EXPECT_EQ(status["status"], "completed");
  EXPECT_TRUE(status["vanishing_time"].is_null());
}

TEST(Field, RejectsZeroRadius) {
  RunConfig c = polytropic();
  c.grid.r_min = 0;
  const auto r = run_cmd("field", c);
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("r_min must be > 0"), std::string::npos);
}

TEST(Field, GridRows) {
  const auto r = run_cmd("field", polytropic());
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,r,rho,u");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

TEST(Verify, ReportJson) {
  Options opt;
  opt.quiet = true;
  const auto r = run_cmd("verify", polytropic(), opt);
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LT(j["mass_linf"].get<double>(), 1e-5);
  EXPECT_LT(j["mom_linf"].get<double>(), 1e-5);
  EXPECT_EQ(j["levels"].size(), 2u);
  EXPECT_TRUE(r.err.empty());
}

TEST(Verify, RuntimeFailureExitsThree) {
  RunConfig c = power_law(-1, 1);
  c.verify.window = {0.5, 1.5, 0.1, 2};
  const auto r = run_cmd("verify", c);
  EXPECT_EQ(r.code, kRuntimeError);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["error"], "stencil_out_of_domain");
}

TEST(Blowup, GrowingPowerLawHasNone) {
  const auto r = run_cmd("blowup", power_law(1, 2));
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(json::parse(r.out)["vanishing_time"].is_null());
}

TEST(Blowup, IntegratedCollapse) {
  RunConfig c = polytropic();
  c.family = PolytropicFamily{1, 1, -1};
  c.grid.t_max = 1.0;
  const auto r = run_cmd("blowup", c);
  ASSERT_EQ(r.code, kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "vanished");
  EXPECT_NEAR(j["vanishing_time"].get<double>(), 0.2848579436, 1e-8);
}

TEST(Run, UnknownCommand) { EXPECT_EQ(run_cmd("plot", polytropic()).code, kConfigError); }

TEST(Run, OutputIsDeterministic) {
  for (const char* cmd : {"profile", "scale", "field", "verify", "blowup", "describe"}) {
    const auto a = run_cmd(cmd, polytropic());
    const auto b = run_cmd(cmd, polytropic());
    EXPECT_EQ(a.out, b.out) << cmd;
  }
}

// End-to-end through the installed binary.
class Binary : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("nssol_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write_config(const json& doc) {
    const auto path = dir_ / "config.json";
    std::ofstream(path) << doc.dump();
    return path.string();
  }

  Result exec(const std::string& args) {
    const auto out_path = dir_ / "stdout.txt";
    const auto err_path = dir_ / "stderr.txt";
    const std::string cmd = std::string(NSSOL_CLI_PATH) + " " + args + " >" + out_path.string() + " 2>" +
                            err_path.string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::stringstream o, e;
    o << std::ifstream(out_path).rdbuf();
    e << std::ifstream(err_path).rdbuf();
    r.out = o.str();
    r.err = e.str();
    return r;
  }

  std::filesystem::path dir_;
};

TEST_F(Binary, DescribeAndExitCodes) {
  const std::string cfg = write_config(to_json(power_law(-1, 2)));
  auto r = exec("describe --quiet --config " + cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(r.out)["vanishing_time"].get<double>(), 2.0);

  json bad = to_json(power_law(-1, 2));
  bad["model"]["gamm"] = 1;
  r = exec("describe --config " + write_config(bad));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "config");

  r = exec("describe");
  EXPECT_EQ(r.code, 2);
}

TEST_F(Binary, OutFileAndFormat) {
  const std::string cfg = write_config(to_json(polytropic()));
  const auto target = dir_ / "a.json";
  auto r = exec("scale --format json --out " + target.string() + " --config " + cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  std::stringstream text;
  text << std::ifstream(target).rdbuf();
  const json doc = json::parse(text.str());
  EXPECT_EQ(doc["samples"].size(), 4u);
  EXPECT_EQ(doc["status"], "completed");
}

TEST_F(Binary, FieldCsvToStdout) {
  RunConfig c = polytropic();
  c.grid.r_min = -1;
  auto r = exec("field --config " + write_config(to_json(c)));
  EXPECT_EQ(r.code, 2);
  r = exec("field --config " + write_config(to_json(polytropic())));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,r,rho,u\n", 0), 0u);
}

}  // namespace
}  // namespace nssol::cli
