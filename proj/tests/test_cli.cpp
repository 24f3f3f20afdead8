#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ulmext/cli/app.hpp"
#include "ulmext/cli/json_io.hpp"

using namespace ulmext::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "ulmext");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, in);
  return {code, out.str(), err.str()};
}

const std::string kPruferOverSum = "prime 3 { C = Z(p^inf); A = sum_{n>=1} Z/p^n; }";
const std::string kSigma2 = "prime 2 { C = layers { 0: tail(1); 1: Z/p }; A = sum_{n>=1} Z/p^n; }";

}  // namespace

TEST(Cli, ClassifyPrintsClassAndBenchmark) {
  auto r = run({"classify", "-"}, kPruferOverSum);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "Π⁰₃ (reducible to E0^omega, not to E0)\n");
  r = run({"classify", "-"}, "");
  EXPECT_EQ(r.out, "Π⁰₁ (smooth)\n");
  r = run({"benchmark", "-"}, kSigma2);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "bireducible with E0\n");
}

TEST(Cli, ExplainShowsTheTrace) {
  const auto r = run({"classify", "--explain", "-"}, kPruferOverSum);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("case main-4a"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("mu = 2, lambda = 0, n = 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("P_mu = {3}"), std::string::npos) << r.out;
  EXPECT_EQ(run({"explain", "-"}, kPruferOverSum).out, r.out);
}

TEST(Cli, JsonReport) {
  const auto r = run({"classify", "--json", "--explain", "-"}, kPruferOverSum);
  ASSERT_EQ(r.code, kExitOk);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["class"]["shape"], "Pi");
  EXPECT_EQ(j["class"]["level"], "3");
  EXPECT_EQ(j["benchmark"]["tag"], "ReducibleE0OmegaNotE0");
  EXPECT_EQ(j["case"], "main-4a");
  EXPECT_EQ(j["trace"]["W"], "inf");
  EXPECT_EQ(j["trace"]["primes"][0]["mu_p"], "2");
}

TEST(Cli, InputErrorsExitWithTwo) {
  auto r = run({"classify", "-"}, "prime 4 { C = 0; A = 0; }");
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("1:7"), std::string::npos) << r.err;
  EXPECT_EQ(run({"classify", "/nonexistent/spec.ulm"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"oracle", "--suite", "bogus"}).code, kExitInputError);
  EXPECT_EQ(run({"oracle", "--suite", "ext3way", "--max-order", "100"}).code, kExitInputError);
  EXPECT_EQ(run({"oracle", "--seed", "x"}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ValidateCanonicalRoundTrips) {
  const auto first = run({"validate", "--canonical", "-"}, kSigma2 + "\nfamily primes > 5 { C = Z/p; A = Z/p^2 + Z/p; }");
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_EQ(run({"validate", "--canonical", "-"}, first.out).out, first.out);
  const auto json = run({"validate", "--json", "-"}, first.out);
  EXPECT_EQ(run({"validate", "--canonical", "-"}, json.out).out, first.out);
}

TEST(Cli, OracleRunsSelectedSuitesDeterministically) {
  const std::vector<std::string> args{"oracle", "--suite", "snf,gadget", "--seed", "7", "--trials", "50", "--json"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  EXPECT_EQ(j["seed"], 7);
  ASSERT_EQ(j["suites"].size(), 2u);
  EXPECT_EQ(j["suites"][0]["suite"], "snf");
  EXPECT_EQ(j["suites"][0]["checks"], 50);
  EXPECT_FALSE(j["suites"][0].contains("seconds"));
  EXPECT_TRUE(j["passed"]);
}

TEST(Cli, SeedComesFromTheEnvironment) {
  ::setenv("ULMEXT_SEED", "123", 1);
  const auto r = run({"oracle", "--suite", "snf", "--trials", "5", "--json"});
  ::unsetenv("ULMEXT_SEED");
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(Json::parse(r.out)["seed"], 123);
}

TEST(Cli, OracleTextAndTiming) {
  const auto r = run({"oracle", "--suite", "gadget", "-p", "3", "-I", "3", "-K", "4", "--trials", "20", "--timing"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.rfind("gadget: ok (", 0), 0u) << r.out;
  EXPECT_NE(r.out.find(" s)"), std::string::npos);
}

TEST(Cli, SpecOptionsSupplyOracleDefaults) {
  const std::string path = ::testing::TempDir() + "ulmext_options.ulm";
  {
    std::ofstream f(path);
    f << "options { seed = 3; suites = snf; trials = 4; }\n";
  }
  const auto r = run({"oracle", "--spec", path, "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["suites"][0]["checks"], 4);
}
