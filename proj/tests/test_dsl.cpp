#include <gtest/gtest.h>

#include "support/random_specs.hpp"
#include "ulmext/cli/dsl.hpp"
#include "ulmext/cli/json_io.hpp"
#include "ulmext/error.hpp"

using namespace ulmext;
using namespace ulmext::cli;

namespace {

const CyclicLayer U = CyclicLayer::tail(1);

// Line and column of the diagnostic for `text`, or (0, 0) when it parses.
std::pair<int, int> error_at(const std::string& text) {
  try {
    parse_document(text);
  } catch (const InputError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST(Dsl, PruferAndTail) {
  const auto spec = parse_spec("prime 3 { C = Z(p^inf); A = sum_{n>=1} Z/p^n; }");
  ASSERT_EQ(spec.explicit_primes.size(), 1u);
  const auto& pair = spec.explicit_primes.at(3);
  EXPECT_EQ(pair.c, prufer(3));
  EXPECT_EQ(pair.a, reduced_group(3, UlmProfile::from_layers({U})));
}

TEST(Dsl, LayersBlock) {
  const auto spec = parse_spec("prime 2 { C = layers { 0: tail(1); 1: Z/p }; A = sum_{n>=1} Z/p^n; }");
  EXPECT_EQ(spec.explicit_primes.at(2).c, reduced_group(2, UlmProfile::from_layers({U, CyclicLayer::cyclic(1)})));
  EXPECT_EQ(classify(spec).klass, ComplexityClass::sigma(2));
}

TEST(Dsl, GroupExpressions) {
  EXPECT_EQ(parse_group("Z/8", 2), parse_group("Z/p^3", 2));
  EXPECT_EQ(parse_group("Z/2^3", 2), parse_group("Z/p^3", 2));
  EXPECT_EQ(parse_group("0", 2), reduced_group(2, UlmProfile()));
  EXPECT_EQ(parse_group("Z/p + Z/p", 5), parse_group("2*Z/p", 5));
  EXPECT_EQ(parse_group("inf*Z(p^inf)", 5), prufer(5, ExtendedCount::infinite()));
  EXPECT_EQ(parse_group("(Z/p + Z/p^2) + Z(p^inf)"), direct_sum(parse_group("Z/p + Z/p^2"), prufer(kSymbolicPrime)));
  EXPECT_EQ(parse_group("layers { [0, w): tail(1, inf); w: Z/p }").reduced.length(), Ordinal::omega() + 1);
  EXPECT_EQ(parse_group("layers { [0, w*2): tail(2) + 3*Z/p }").reduced.segments().size(), 1u);
  EXPECT_EQ(parse_group("# comment\n Z/p // another\n"), parse_group("Z/p"));
}

TEST(Dsl, Families) {
  const auto spec = parse_spec("prime 2 { C = Z/p; A = Z/p; }\nfamily primes > 10 { C = layers { 0: tail(1); 1: Z/p }; A = sum_{n>=1} Z/p^n }");
  ASSERT_EQ(spec.families.size(), 1u);
  EXPECT_EQ(spec.families[0].primes_above, 10u);
  EXPECT_EQ(classify(spec).klass, ComplexityClass::pi(3));
}

TEST(Dsl, OptionsAndVersion) {
  const auto doc = parse_document("version 1;\noptions { seed = 7; suites = sixterm, gadget; trials = 3; }\n");
  EXPECT_EQ(doc.options.seed, 7u);
  EXPECT_EQ(doc.options.trials, 3u);
  EXPECT_EQ(doc.options.suites, (std::vector<std::string>{"sixterm", "gadget"}));
  EXPECT_TRUE(doc.problem.explicit_primes.empty());
}

TEST(Dsl, DiagnosticsAreLocated) {
  EXPECT_EQ(error_at("prime 2 {\n  C = layers { [0,w^): Z/p };\n  A = 0; }"), std::make_pair(2, 21));
  EXPECT_EQ(error_at("prime 4 { C = 0; A = 0; }"), std::make_pair(1, 7));
  EXPECT_EQ(error_at("prime 2 { C = 0; A = Z(p^inf); }"), std::make_pair(1, 22));
  EXPECT_EQ(error_at("prime 2 { C = Z/6; A = 0; }"), std::make_pair(1, 17));
  EXPECT_EQ(error_at("prime 2 { C = Z/p; }"), std::make_pair(1, 1));
  EXPECT_EQ(error_at("prime 2 { C = Z/p; A = 0; }\nprime 2 { C = 0; A = 0; }"), std::make_pair(2, 7));
  EXPECT_EQ(error_at("family primes > 3 { C = Z/8; A = 0; }"), std::make_pair(1, 27));
  EXPECT_EQ(error_at("prime 7 { C = 0; A = 0; }\nfamily primes > 5 { C = 0; A = 0; }"), std::make_pair(2, 1));
  EXPECT_EQ(error_at("prime 2 { C = layers { 0: Z/p; 1: tail(1) }; A = 0; }"), std::make_pair(1, 15));
  EXPECT_EQ(error_at("prime 2 { C = Z/p A = 0; }"), std::make_pair(1, 19));
  EXPECT_EQ(error_at("version 2;"), std::make_pair(1, 9));
  EXPECT_EQ(error_at("prime 2 { C = 0; A = 0; } extra"), std::make_pair(1, 27));
}

TEST(Dsl, RoundTripOnRandomSpecs) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 300; ++i) {
    SpecDocument doc;
    doc.problem = ulmext::testing::random_spec(rng);
    if (i % 3 == 0) doc.options.seed = i;
    if (i % 5 == 0) doc.options.suites = {"snf", "profile-realization"};
    const std::string text = serialize_document(doc);
    const SpecDocument back = parse_document(text);
    ASSERT_EQ(back, doc) << text;
    EXPECT_EQ(serialize_document(back), text);
  }
}

TEST(Json, RoundTripOnRandomSpecs) {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 200; ++i) {
    SpecDocument doc;
    doc.problem = ulmext::testing::random_spec(rng);
    const std::string text = document_to_json(doc).dump(1);
    ASSERT_EQ(parse_document(text), doc) << text;
  }
}

TEST(Json, AcceptsExpressionStringsAndLocatesErrors) {
  const auto doc = parse_document(R"j({"primes": {"3": {"C": "Z(p^inf)", "A": "sum_{n>=1} Z/p^n"}}})j");
  EXPECT_EQ(classify(doc.problem).klass, ComplexityClass::pi(3));
  try {
    parse_document("{\n  \"primes\": {,}\n}");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_document(R"j({"primes": {"4": {"C": "0", "A": "0"}}})j"), InputError);
  EXPECT_THROW(parse_document(R"j({"primes": {"2": {"C": "0"}}})j"), InputError);
  EXPECT_THROW(parse_document(R"j({"bogus": 1})j"), InputError);
}
