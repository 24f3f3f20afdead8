#include <gtest/gtest.h>

#include "ulmext/error.hpp"
#include "ulmext/oracle/suites.hpp"

using namespace ulmext;
using namespace ulmext::oracle;

namespace {

std::string summary(const SuiteReport& r) {
  std::string s;
  for (const auto& c : r.checks) s += c.name + (c.passed ? " ok " : " FAIL ") + c.detail + "\n";
  return s;
}

SuiteOptions small(const std::string& name) {
  SuiteOptions o;
  o.seed = 5;
  if (name == "snf") o.trials = 100;
  if (name == "ext3way") o.max_order = 8;
  if (name == "equivclasses") o.max_order = 4;
  if (name == "sixterm") {
    o.trials = 20;
    o.max_order = 8;
  }
  if (name == "gadget") o.trials = 50;
  if (name == "profile-realization") o.trials = 50;
  return o;
}

}  // namespace

TEST(Suites, EnumeratesAbelianGroups) {
  // Numbers of abelian groups of orders 1..16.
  const std::vector<std::size_t> counts{1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5};
  const auto groups = finite_abelian_groups_up_to(16);
  std::vector<std::size_t> seen(16, 0);
  for (const auto& g : groups) ++seen[static_cast<std::size_t>(g.order()) - 1];
  EXPECT_EQ(seen, counts);
}

TEST(Suites, EverySuitePassesOnSmallSettings) {
  for (const auto& name : suite_names()) {
    const auto r = run_suite(name, small(name));
    EXPECT_EQ(r.suite, name);
    EXPECT_FALSE(r.checks.empty()) << name;
    EXPECT_TRUE(r.passed()) << summary(r);
  }
}

TEST(Suites, ReportsAreDeterministic) {
  for (const char* name : {"snf", "sixterm", "gadget", "profile-realization"}) {
    const auto a = run_suite(name, small(name)), b = run_suite(name, small(name));
    EXPECT_EQ(summary(a), summary(b)) << name;
  }
}

TEST(Suites, RejectsBadOptions) {
  EXPECT_THROW(run_suite("nope", {}), PreconditionError);
  SuiteOptions o;
  o.max_order = 100;
  EXPECT_THROW(run_suite("ext3way", o), PreconditionError);
  o = {};
  o.p = 11;
  EXPECT_THROW(run_suite("gadget", o), PreconditionError);
}

TEST(Suites, DrawBelowIsPlainModulo) {
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(draw_below(a, 7), b() % 7);
}
