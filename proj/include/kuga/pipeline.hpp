#pragma once

// Full certification of one primary candidate: per-leg realizations and
// H-certificates, rigidification, and the form construction.

#include "kuga/forms.hpp"
#include "kuga/hconditions.hpp"
#include "kuga/rigidify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kuga {

inline constexpr const char* kToolName = "kuga";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kMultiplicityNote = "unresolved multiplicity >= 1";

struct PipelineOptions {
  bool exact = false;
  Tolerances tol;
};

struct LegCertificate {
  Leg leg;
  std::string key;
  LocalRepDescriptor descriptor;
  bool noncompact = false;
  int dim = 0;
  RealizationResiduals realization;
  std::optional<HCertificate> h;
};

struct CandidateReport {
  std::string key;
  std::string family;
  long long real_dim = 0;
  bool primary = false;
  bool rigid = false;
  int rigidity_index = 0;
  int group_order = 0;
  std::vector<LegCertificate> legs;
  std::optional<FormCertificate> forms;
  std::vector<AugmentationStep> trail;
  std::string final_key;
  int final_rigidity_index = 0;
  std::string restriction_multiple;
  std::vector<std::string> failures;
  bool dead_zone = false;

  std::string status() const {
    if (dead_zone) return "DEAD-ZONE";
    return failures.empty() ? "PASS" : "FAIL";
  }
};

namespace detail {

class Checker {
 public:
  Checker(CandidateReport& r, const Tolerances& tol) : r_(r), tol_(tol) {}

  /// Residual that must pass.
  void small(const std::string& what, double v) {
    switch (classify_residual(v, tol_)) {
      case Verdict::Pass: return;
      case Verdict::Fail: r_.failures.push_back(what + " residual " + fmt(v)); return;
      case Verdict::DeadZone:
        r_.dead_zone = true;
        r_.failures.push_back(what + " residual " + fmt(v) + " in dead zone");
        return;
    }
  }
  void positive(const std::string& what, double v) {
    if (!(v > 0.0)) r_.failures.push_back(what + " not positive: " + fmt(v));
  }
  void require(bool ok, const std::string& what) {
    if (!ok) r_.failures.push_back(what);
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  CandidateReport& r_;
  const Tolerances& tol_;
};

template <class S>
HCertificate leg_h_certificate(const LocalRepDescriptor& d, const Tolerances& tol) {
  return certify(realize<S>(d), tol);
}

}  // namespace detail

/// Certifies a primary, stable candidate of `spec`.  When `keep` is given,
/// the assembled symplectic data of the final (rigid) candidate is stored.
inline CandidateReport certify_candidate(const GroupSpec& spec, const GlobalRepCandidate& cand0,
                                         const PipelineOptions& opt, AssembledSymplecticData* keep = nullptr,
                                         GroupSpec* final_spec = nullptr) {
  CandidateReport r;
  const GlobalRepCandidate cand = normalize(spec, cand0);
  r.key = candidate_key(spec, cand);
  r.family = family_key(cand);
  r.real_dim = candidate_real_dim(spec, cand);
  r.primary = is_primary(spec, cand);
  r.rigid = is_rigid(spec, cand);
  r.group_order = static_cast<int>(spec.group().size());
  detail::Checker check(r, opt.tol);

  if (auto v = admissibility_violation(spec, cand)) {
    r.failures.push_back("admissibility: " + *v);
    return r;
  }
  if (!check_stability(spec, cand)) {
    r.failures.push_back("stability: a summand is nontrivial on two noncompact embeddings");
    return r;
  }
  if (!is_galois_stable(spec, cand)) {
    r.failures.push_back("galois-stability: the candidate is not stable under the Galois group");
    return r;
  }
  if (!r.primary) {
    r.failures.push_back("not primary: summands lie in more than one Galois orbit");
    return r;
  }
  r.rigidity_index = rigidity_index(spec, cand);

  RigidifyResult rr;
  try {
    rr = rigidify(cand, spec);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("rigidify: ") + e.what());
    return r;
  }
  r.trail = rr.trail;
  r.final_key = candidate_key(rr.spec, rr.candidate);
  r.final_rigidity_index = rigidity_index(rr.spec, rr.candidate);
  check.require(r.final_rigidity_index == r.group_order, "final rigidity index differs from |G|");
  if (const auto m = uniform_multiple(spec, cand, erase_factors(rr.candidate, rr.added_factors)))
    r.restriction_multiple = std::to_string(m->numerator()) + "/" + std::to_string(m->denominator());
  else
    r.failures.push_back("restriction to the original group is not a uniform multiple");
  check.require(is_galois_stable(rr.spec, rr.candidate) && check_stability(rr.spec, rr.candidate),
                "rigidified candidate is not stable");

  std::map<std::string, Leg> legs;
  for (const auto& s : rr.candidate.summands)
    for (const auto& l : s.legs) legs.emplace(l.factor + ":" + l.embedding + ":" + tag_string(l.tag), l);
  for (const auto& [key, l] : legs) {
    LegCertificate lc;
    lc.leg = l;
    lc.key = leg_key(rr.spec, l);
    lc.descriptor = describe(rr.spec.factor(l.factor), l.embedding, l.tag);
    lc.noncompact = rr.spec.is_noncompact(l.embedding);
    try {
      const auto rep = realize<cd>(lc.descriptor);
      lc.dim = rep.dim;
      lc.realization = realization_residuals(rep);
      check.small(lc.key + " closure", lc.realization.closure);
      check.small(lc.key + " homomorphism", lc.realization.homomorphism);
      check.small(lc.key + " E-preservation", lc.realization.e_preservation);
      if (lc.noncompact) {
        lc.h = opt.exact ? detail::leg_h_certificate<GaussQ>(lc.descriptor, opt.tol)
                         : detail::leg_h_certificate<cd>(lc.descriptor, opt.tol);
        if (lc.h->dead_zone()) {
          r.dead_zone = true;
          r.failures.push_back(lc.key + ": H-certificate residual in dead zone");
        } else if (!lc.h->pass()) {
          r.failures.push_back(lc.key + ": H-certificate does not match the table");
        }
      }
    } catch (const std::exception& e) {
      r.failures.push_back(lc.key + ": " + e.what());
    }
    r.legs.push_back(std::move(lc));
  }

  try {
    LegLibrary lib(rr.spec);
    FormCertificate fc = certify_forms(rr.spec, rr.candidate, lib, keep);
    check.small("gamma invariance", fc.gamma_invariance);
    check.positive("gamma min eigenvalue", fc.gamma_min_eigenvalue);
    check.small("J-invariance of gamma", fc.j_invariance);
    check.small("gamma J skew-symmetry", fc.j_skew);
    check.small("J^2 + I", fc.j_square);
    check.small("E alternating", fc.e_alternating);
    check.small("E(x,Jy) symmetry", fc.symmetry);
    check.positive("scaled min eigenvalue", fc.min_eigenvalue);
    check.small("full H1", fc.full_h1);
    check.small("full E-invariance", fc.full_e_invariance);
    check.require(std::abs(fc.full_h1 - fc.full_h1_unscaled) <= 1e-12, "scaling changed the H1 residual");
    r.forms = std::move(fc);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("forms: ") + e.what());
  }
  if (final_spec) *final_spec = rr.spec;
  return r;
}

/// Splits a Galois-stable candidate into its primary components (one per
/// Galois orbit of summands), preserving multiplicities.
inline std::vector<GlobalRepCandidate> primary_components(const GroupSpec& spec, const GlobalRepCandidate& c) {
  std::vector<GlobalRepCandidate> out;
  std::set<std::string> seen;
  const auto norm = normalize(spec, c);
  for (const auto& s : norm.summands) {
    IrreducibleSummand mu = s;
    mu.multiplicity = 1;
    const std::string k = summand_body_key(spec, mu);
    if (seen.count(k)) continue;
    std::set<std::string> orbit;
    for (const auto& g : spec.group()) orbit.insert(summand_body_key(spec, conjugate(spec, mu, g)));
    GlobalRepCandidate comp;
    for (const auto& t : norm.summands) {
      IrreducibleSummand u = t;
      u.multiplicity = 1;
      const std::string uk = summand_body_key(spec, u);
      if (orbit.count(uk)) {
        comp.summands.push_back(t);
        seen.insert(uk);
      }
    }
    out.push_back(normalize(spec, std::move(comp)));
  }
  return out;
}

}  // namespace kuga
