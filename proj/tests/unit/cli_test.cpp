#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace hwalg::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hwalg");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("HWALG_FORMAT"); }
  void TearDown() override { unsetenv("HWALG_FORMAT"); }
};

TEST_F(CliTest, VerifyAlgebraEmitsOneJsonDocument) {
  const auto r = invoke({"verify-algebra", "--regime", "ur", "--format", "json"});
  EXPECT_EQ(r.code, kPass) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.is_object());
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify-algebra", "--regime", "nr", "--format", "json"},
           {"derive", "--regime", "carroll", "--format", "json"},
           {"check-solution", "--case", "dispersion", "--format", "json"}}) {
    const auto a = invoke(args), b = invoke(args);
    EXPECT_EQ(a.code, kPass) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, FormatFromEnvironment) {
  setenv("HWALG_FORMAT", "json", 1);
  const auto r = invoke({"derive", "--regime", "kg"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_TRUE(nlohmann::json::accept(r.out));
  const auto text = invoke({"derive", "--regime", "kg", "--format", "text"});
  EXPECT_FALSE(nlohmann::json::accept(text.out));
}

TEST_F(CliTest, ZeroHbarWarnsButPasses) {
  const auto r = invoke({"verify-algebra", "--regime", "ur", "--set", "hbar=0"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"verify-algebra", "--regime", "bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"verify-algebra", "--regime", "ur", "--set", "hbar=0.5"}).code, kUsage);
  EXPECT_EQ(invoke({"check-solution", "--case", "kernel", "--xmin=-1", "--xmax=1"}).code, kUsage);
  EXPECT_EQ(invoke({"check-solution", "--case", "kernel", "--set", "m=1"}).code, kPass);
  EXPECT_EQ(invoke({"derive", "--regime", "kg", "--format", "yaml"}).code, kUsage);
  EXPECT_EQ(invoke({"gauge", "--regime", "kg"}).code, kUsage);
}

TEST_F(CliTest, CheckSolutionCases) {
  EXPECT_EQ(invoke({"check-solution", "--case", "dispersion", "--k", "0,0,2"}).code, kPass);
  EXPECT_EQ(invoke({"check-solution", "--case", "helicity", "--k", "1,2,3"}).code, kPass);
  EXPECT_EQ(invoke({"check-solution", "--case", "schrodinger", "--k", "1,1/2,0"}).code, kPass);
  const auto strict = invoke({"check-solution", "--case", "kernel", "--richardson", "0", "--tolerance", "1e-12"});
  EXPECT_EQ(strict.code, kFailure);
}

TEST_F(CliTest, GaugeAndLatex) {
  const auto r = invoke({"gauge", "--regime", "pauli", "--format", "latex"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_FALSE(r.out.empty());
}

}  // namespace
}  // namespace hwalg::cli
