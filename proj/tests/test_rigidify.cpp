#include "kuga/rigidify.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

namespace {

constexpr const char* kWorked =
    "factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)\n"
    "factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=(6,0)\n"
    "galois perm=(a1 a2)(b1 b2)\n";

constexpr const char* kOrder4 =
    "factor G type=I n=2 embeddings=s1,s2,s3,s4 sig(s1)=(1,1) sig(s2)=(1,1) sig(s3)=(2,0) sig(s4)=(2,0)\n"
    "galois perm=(s1 s3 s2 s4)\n";

// Oracle view of a library candidate.
oracle::Candidate from_library(const kuga::GlobalRepCandidate& c) {
  oracle::Candidate out;
  for (const auto& s : c.summands)
    for (int m = 0; m < s.multiplicity; ++m) {
      oracle::Summand t;
      for (const auto& l : s.legs) t[l.embedding] = kuga::tag_string(l.tag);
      out.push_back(t);
    }
  return oracle::sorted(out);
}

TEST(Rigidify, AlreadyRigidGivesEmptyTrail) {
  const auto spec = kuga::parse_group_spec(kWorked);
  const auto c = kuga::parse_candidate_key(spec, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x97G1:a2:CompactArbitrary(wedge1)");
  const auto r = kuga::rigidify(c, spec);
  EXPECT_TRUE(r.trail.empty());
  EXPECT_EQ(r.spec, spec);
  EXPECT_FALSE(kuga::find_nonrigid_witness(spec, c).has_value());
}

TEST(Rigidify, OneWitnessOrderTwo) {
  const auto spec = kuga::parse_group_spec(kWorked);
  const auto c = kuga::parse_candidate_key(spec, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x95G1:a2:CompactArbitrary(wedge1)");
  const auto w = kuga::find_nonrigid_witness(spec, c);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->alpha0, "a2");
  kuga::AugmentationStep step;
  const auto [ns, nc] = kuga::augment(spec, c, *w, &step);
  ASSERT_EQ(nc.summands.size(), 2u);
  for (const auto& s : nc.summands) EXPECT_EQ(s.legs.size(), 2u);
  EXPECT_EQ(step.before_index, 1);
  EXPECT_EQ(step.after_index, 2);
  EXPECT_EQ(ns.group().size(), 2u);
  const auto& q = ns.factor(step.new_factor.name);
  EXPECT_EQ(q.n, 2);
  EXPECT_EQ(q.embeddings.size(), 2u);
  int split = 0;
  for (const auto& e : q.embeddings) split += ns.is_noncompact(e) ? 1 : 0;
  EXPECT_EQ(split, 1);
  EXPECT_TRUE(ns.is_noncompact(step.split_embedding));

  const auto r = kuga::rigidify(c, spec);
  EXPECT_EQ(r.trail.size(), 1u);
  EXPECT_EQ(kuga::rigidity_index(r.spec, r.candidate), 2);
  EXPECT_TRUE(kuga::is_rigid(r.spec, r.candidate));
}

TEST(Rigidify, OrderFourIteratesTwiceWithOracleIndices) {
  const auto spec = kuga::parse_group_spec(kOrder4);
  ASSERT_EQ(spec.group().size(), 4u);
  const auto c = kuga::parse_candidate_key(
      spec, "G:s1:WedgeMiddleSingle(1)\xE2\x8A\x95G:s2:WedgeMiddleSingle(1)\xE2\x8A\x95"
            "G:s3:CompactArbitrary(wedge1)\xE2\x8A\x95G:s4:CompactArbitrary(wedge1)");
  ASSERT_TRUE(kuga::is_galois_stable(spec, c));
  EXPECT_EQ(oracle::rigidity_index(spec, from_library(c)), 2);

  const auto r = kuga::rigidify(c, spec);
  ASSERT_EQ(r.trail.size(), 2u);
  EXPECT_EQ(r.trail[0].before_index, 2);
  EXPECT_EQ(r.trail[0].after_index, 3);
  EXPECT_EQ(r.trail[1].before_index, 3);
  EXPECT_EQ(r.trail[1].after_index, 4);

  // Replay with the oracle: every intermediate candidate is stable and its
  // index agrees with the brute-force count.
  kuga::GroupSpec s = spec;
  kuga::GlobalRepCandidate cur = kuga::normalize(spec, c);
  for (const auto& step : r.trail) {
    const auto w = kuga::find_nonrigid_witness(s, cur);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->summand_key, step.chosen_key);
    auto [ns, nc] = kuga::augment(s, cur, *w);
    EXPECT_EQ(oracle::rigidity_index(ns, from_library(nc)), step.after_index);
    EXPECT_TRUE(oracle::galois_stable(ns, from_library(nc)));
    EXPECT_TRUE(oracle::stable(ns, from_library(nc)));
    s = std::move(ns);
    cur = std::move(nc);
  }
  EXPECT_EQ(kuga::candidate_key(s, cur), kuga::candidate_key(r.spec, r.candidate));
  EXPECT_TRUE(oracle::rigid(r.spec, from_library(r.candidate)));

  const auto erased = kuga::erase_factors(r.candidate, r.added_factors);
  const auto m = kuga::uniform_multiple(spec, c, erased);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, boost::rational<long long>(1));
}

TEST(Rigidify, ConservativityOracle) {
  // Erasing the added legs must give the original multiset scaled by m.
  const auto spec = kuga::parse_group_spec(kOrder4);
  const auto c = kuga::parse_candidate_key(
      spec, "G:s1:WedgeMiddleSingle(1)\xE2\x8A\x95G:s2:WedgeMiddleSingle(1)\xE2\x8A\x95"
            "G:s3:CompactArbitrary(wedge1)\xE2\x8A\x95G:s4:CompactArbitrary(wedge1)");
  const auto r = kuga::rigidify(c, spec);
  const auto erased = from_library(kuga::normalize(spec, kuga::erase_factors(r.candidate, r.added_factors)));
  const auto orig = from_library(kuga::normalize(spec, c));
  ASSERT_EQ(erased.size() % orig.size(), 0u);
  const std::size_t m = erased.size() / orig.size();
  oracle::Candidate scaled;
  for (const auto& s : orig)
    for (std::size_t i = 0; i < m; ++i) scaled.push_back(s);
  EXPECT_EQ(oracle::sorted(scaled), erased);
}

TEST(Rigidify, UniformMultipleRejectsMismatch) {
  const auto spec = kuga::parse_group_spec(kOrder4);
  const auto c = kuga::parse_candidate_key(spec, "G:s1:WedgeMiddleSingle(1)\xE2\x8A\x95G:s2:WedgeMiddleSingle(1)");
  auto twice = c;
  twice.summands[0].multiplicity = 2;
  EXPECT_FALSE(kuga::uniform_multiple(spec, c, twice).has_value());
  for (auto& s : twice.summands) s.multiplicity = 2;
  EXPECT_EQ(*kuga::uniform_multiple(spec, c, twice), boost::rational<long long>(2));
}

TEST(Rigidify, StaleWitnessRejected) {
  const auto spec = kuga::parse_group_spec(kWorked);
  const auto c = kuga::parse_candidate_key(spec, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x95G1:a2:CompactArbitrary(wedge1)");
  auto w = *kuga::find_nonrigid_witness(spec, c);
  w.alpha0 = "a1";
  EXPECT_THROW(kuga::augment(spec, c, w), kuga::StaleWitnessError);
  const auto rigid = kuga::parse_candidate_key(spec, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x97G1:a2:CompactArbitrary(wedge1)");
  EXPECT_THROW(kuga::augment(spec, rigid, *kuga::find_nonrigid_witness(spec, c)), kuga::StaleWitnessError);
}

TEST(Rigidify, EveryEnumeratedCandidateTerminatesAtGroupOrder) {
  for (const auto& fx : oracle::fixtures()) {
    const auto spec = kuga::parse_group_spec(fx.text);
    for (const auto& e : kuga::enumerate_candidates(spec, 32)) {
      const auto r = kuga::rigidify(e.candidate, spec);
      EXPECT_LE(r.trail.size(), spec.group().size()) << e.key;
      for (const auto& s : r.trail) EXPECT_LT(s.before_index, s.after_index) << e.key;
      EXPECT_EQ(kuga::rigidity_index(r.spec, r.candidate), static_cast<int>(spec.group().size())) << e.key;
      EXPECT_TRUE(kuga::uniform_multiple(spec, e.candidate, kuga::erase_factors(r.candidate, r.added_factors)))
          << e.key;
    }
  }
}

}  // namespace
