#include "kuga/spec.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace {

using kuga::GroupSpec;
using kuga::HermitianType;
using kuga::ParseError;
using kuga::Permutation;
using kuga::SpecError;

constexpr const char* kWorked =
    "# two fields\n"
    "factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)\n"
    "factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=(6,0)\n"
    "galois perm=(a1 a2)(b1 b2)\n";

ParseError parse_error_of(const std::string& text) {
  try {
    kuga::parse_group_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error for: " << text;
  return ParseError(0, 0, "none");
}

std::string spec_error_of(const std::string& text) {
  try {
    kuga::parse_group_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected a spec error for: " << text;
  return {};
}

TEST(SpecParse, WorkedExampleFields) {
  const GroupSpec s = kuga::parse_group_spec(kWorked);
  ASSERT_EQ(s.factors().size(), 2u);
  const auto& g2 = s.factor("G2");
  EXPECT_EQ(g2.type, HermitianType::I);
  EXPECT_EQ(g2.n, 6);
  EXPECT_EQ(g2.embeddings, (std::vector<std::string>{"b1", "b2"}));
  EXPECT_EQ(s.real_form("b1").p, 5);
  EXPECT_EQ(s.real_form("b1").q, 1);
  EXPECT_TRUE(s.real_form("b2").compact);
  EXPECT_EQ(s.noncompact_embeddings(), (std::vector<std::string>{"a1", "b1"}));
  EXPECT_EQ(s.group().size(), 2u);
  EXPECT_EQ(s.factor_of("a2").name, "G1");
}

TEST(SpecParse, RenderIsCanonicalAndIdempotent) {
  const GroupSpec s = kuga::parse_group_spec(kWorked);
  const std::string once = kuga::render_group_spec(s);
  const std::string twice = kuga::render_group_spec(kuga::parse_group_spec(once));
  EXPECT_EQ(once, twice);
  const GroupSpec shuffled = kuga::parse_group_spec(
      "factor G2 type=I n=6 embeddings=b2,b1 sig(b2)=(6,0) sig(b1)=(5,1)\n"
      "factor G1 type=I n=2 embeddings=a2,a1 sig(a1)=(1,1) sig(a2)=(2,0)\n"
      "galois perm=(b2 b1)(a2 a1)\n");
  EXPECT_EQ(kuga::render_group_spec(shuffled), once);
}

TEST(SpecParse, TypeShorthands) {
  const GroupSpec s = kuga::parse_group_spec(
      "factor A type=II n=5 embeddings=w sig(w)=noncompact\n"
      "factor B type=III n=2 embeddings=u1,u2 sig(u1)=noncompact sig(u2)=compact\n"
      "factor C type=IV n=3 embeddings=v1,v2 sig(v1)=(3,2) sig(v2)=compact\n"
      "galois perm=(u1 u2)(v1 v2)\n");
  EXPECT_FALSE(s.real_form("w").compact);
  EXPECT_TRUE(s.real_form("u2").compact);
  EXPECT_EQ(s.real_form("v1").p, 3);
  EXPECT_EQ(s.real_form("v1").q, 2);
  EXPECT_TRUE(s.real_form("v2").compact);
  EXPECT_EQ(s.real_form("v2").p, 5);
  EXPECT_EQ(s.group().size(), 2u);
}

TEST(SpecErrors, SyntaxReportsLineAndColumn) {
  const auto e = parse_error_of("# header\nfactor G type=I n=2 embeddings=a sig(a)=(1,1\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 1);
  EXPECT_NE(std::string(e.what()).find("syntax"), std::string::npos);
}

TEST(SpecErrors, UnknownKeyword) {
  const auto e = parse_error_of("group G type=I\n");
  EXPECT_EQ(e.line(), 1);
}

TEST(SpecErrors, ExcludedAndOutOfRangeSignatures) {
  EXPECT_NE(spec_error_of("factor B type=IV n=2 embeddings=v sig(v)=(2,2)\n").find("excluded"), std::string::npos);
  EXPECT_NE(spec_error_of("factor G type=I n=3 embeddings=a sig(a)=(1,1)\n").find("p + q"), std::string::npos);
  EXPECT_NE(spec_error_of("factor G type=I n=3 embeddings=a sig(a)=(1,2)\n").find("p >= q"), std::string::npos);
  EXPECT_NE(spec_error_of("factor A type=II n=4 embeddings=w sig(w)=noncompact\n").find("n >= 5"), std::string::npos);
}

TEST(SpecErrors, CompactFactorRejected) {
  EXPECT_NE(spec_error_of("factor G type=I n=2 embeddings=a sig(a)=(2,0)\n").find("compact"), std::string::npos);
}

TEST(SpecErrors, OrbitsMustBeTransitive) {
  EXPECT_NE(spec_error_of("factor G type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(1,1)\n").find("transitive"),
            std::string::npos);
  EXPECT_NE(spec_error_of("factor G type=I n=2 embeddings=a1 sig(a1)=(1,1)\n"
                          "factor H type=I n=2 embeddings=c1 sig(c1)=(1,1)\n"
                          "galois perm=(a1 c1)\n")
                .find("orbit"),
            std::string::npos);
}

TEST(SpecErrors, UnknownLabelAndDuplicates) {
  EXPECT_NE(spec_error_of("factor G type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)\ngalois perm=(a1 a9)\n")
                .find("unknown embedding label"),
            std::string::npos);
  EXPECT_THROW(kuga::parse_group_spec("factor G type=I n=2 embeddings=a sig(a)=(1,1)\n"
                                      "factor G type=I n=2 embeddings=b sig(b)=(1,1)\n"),
               SpecError);
}

TEST(SpecErrors, GroupOrderBound) {
  kuga::SpecOptions opts;
  opts.max_group_order = 2;
  EXPECT_THROW(kuga::parse_group_spec("factor G type=I n=2 embeddings=a1,a2,a3 sig(a1)=(1,1) sig(a2)=(2,0) "
                                      "sig(a3)=(2,0)\ngalois perm=(a1 a2 a3)\n",
                                      opts),
               SpecError);
}

// Group closure oracle: repeated products of generators until no new element.
std::set<Permutation> closure_oracle(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> seen{kuga::identity_permutation(degree)};
  bool grew = true;
  while (grew) {
    grew = false;
    const std::set<Permutation> snapshot = seen;
    for (const auto& a : snapshot)
      for (const auto& g : gens) {
        Permutation p(degree);
        for (std::size_t i = 0; i < degree; ++i) p[i] = g[a[i]];
        grew = seen.insert(p).second || grew;
      }
  }
  return seen;
}

TEST(SpecGroup, GenerationMatchesClosureOracle) {
  const std::vector<std::vector<Permutation>> cases = {
      {{1, 2, 3, 0}},
      {{1, 0, 2, 3}, {0, 1, 3, 2}},
      {{1, 2, 0, 3, 4}, {1, 0, 2, 3, 4}},
      {{1, 2, 3, 0}, {3, 2, 1, 0}},
      {{1, 0, 2, 3, 4, 5}, {0, 1, 3, 2, 4, 5}, {0, 1, 2, 3, 5, 4}},
  };
  const std::vector<std::size_t> orders = {4, 4, 6, 8, 8};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const std::size_t degree = cases[c][0].size();
    const auto got = kuga::generate_group(cases[c], degree, 64);
    const auto want = closure_oracle(cases[c], degree);
    EXPECT_EQ(got.size(), orders[c]);
    EXPECT_EQ(std::set<Permutation>(got.begin(), got.end()), want);
    EXPECT_TRUE(kuga::is_identity(got.front()));
    EXPECT_TRUE(std::is_sorted(got.begin() + 1, got.end()));
  }
}

TEST(SpecGroup, CompositionAppliesRightFactorFirst) {
  const GroupSpec s = kuga::parse_group_spec(
      "factor G type=I n=2 embeddings=a,b,c sig(a)=(1,1) sig(b)=(2,0) sig(c)=(2,0)\n"
      "galois perm=(a b c)\ngalois perm=(a b)\n");
  ASSERT_EQ(s.group().size(), 6u);
  for (const auto& x : s.group())
    for (const auto& y : s.group())
      for (const auto& l : s.labels()) EXPECT_EQ(s.apply(kuga::compose(x, y), l), s.apply(x, s.apply(y, l)));
  for (const auto& x : s.group()) EXPECT_TRUE(kuga::is_identity(kuga::compose(x, kuga::inverse(x))));
}

TEST(SpecGroup, CycleStringRoundTrips) {
  const GroupSpec s = kuga::parse_group_spec(kWorked);
  EXPECT_EQ(s.cycle_string(s.group()[1]), "(a1 a2)(b1 b2)");
  EXPECT_EQ(s.cycle_string(s.group()[0]), "()");
}

}  // namespace
