#pragma once

// Reduction of a non-rigid primary candidate to a rigid one by tensoring with
// the standard representation of a quaternion-type factor that is split at
// exactly one embedding.

#include "kuga/rules.hpp"

#include <boost/rational.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuga {

class StaleWitnessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Witness {
  IrreducibleSummand mu;
  std::string summand_key;
  std::string alpha0;
};

struct AugmentationStep {
  IrreducibleSummand chosen_summand;
  std::string chosen_key;
  std::string alpha0;
  FactorSpec new_factor;
  /// Label of the new factor's split embedding (the chosen extension of alpha0).
  std::string split_embedding;
  int before_index = 0;
  int after_index = 0;
  std::string candidate_after;
};

struct RigidifyResult {
  GroupSpec spec;
  GlobalRepCandidate candidate;
  std::vector<AugmentationStep> trail;
  std::vector<std::string> added_factors;
};

/// The least (summand key, embedding) over summands trivial on every
/// noncompact embedding, or nothing when the candidate is rigid.
inline std::optional<Witness> find_nonrigid_witness(const GroupSpec& spec, const GlobalRepCandidate& cand) {
  std::optional<Witness> best;
  for (const auto& s0 : normalize(spec, cand).summands) {
    if (s0.legs.empty() || noncompact_leg_count(spec, s0) != 0) continue;
    IrreducibleSummand s = s0;
    s.multiplicity = 1;
    const std::string key = summand_key(spec, s);
    for (const auto& l : s.legs) {
      if (!best || std::tie(key, l.embedding) < std::tie(best->summand_key, best->alpha0))
        best = Witness{s, key, l.embedding};
    }
  }
  return best;
}

namespace detail {

inline std::string fresh_factor_name(const GroupSpec& spec) {
  for (int k = 1;; ++k) {
    const std::string name = "Q" + std::to_string(k);
    if (spec.has_factor(name)) continue;
    bool clash = false;
    const std::string prefix = "q" + std::to_string(k) + "_";
    for (const auto& l : spec.labels()) clash = clash || l.rfind(prefix, 0) == 0;
    if (!clash) return name;
  }
}

}  // namespace detail

/// One augmentation: adds the factor, over embeddings indexed by the Galois
/// group, and replaces the candidate by {mu^sigma (x) p^sigma : sigma}.
inline std::pair<GroupSpec, GlobalRepCandidate> augment(const GroupSpec& spec, const GlobalRepCandidate& cand,
                                                        const Witness& w, AugmentationStep* step = nullptr) {
  const auto current = find_nonrigid_witness(spec, cand);
  bool present = false;
  for (const auto& s : normalize(spec, cand).summands) {
    IrreducibleSummand t = s;
    t.multiplicity = 1;
    present = present || (t == w.mu);
  }
  bool support_ok = false;
  for (const auto& l : w.mu.legs) support_ok = support_ok || l.embedding == w.alpha0;
  if (!current || !present || !support_ok || noncompact_leg_count(spec, w.mu) != 0)
    throw StaleWitnessError("witness " + w.summand_key + " at " + w.alpha0 + " does not match the candidate");

  const auto& group = spec.group();
  const std::string name = detail::fresh_factor_name(spec);
  const std::string prefix = "q" + name.substr(1) + "_";
  std::vector<std::string> q;
  for (std::size_t i = 0; i < group.size(); ++i) q.push_back(prefix + std::to_string(i));

  FactorSpec nf;
  nf.name = name;
  nf.type = HermitianType::I;
  nf.n = 2;
  nf.embeddings = q;
  for (std::size_t i = 0; i < q.size(); ++i)
    nf.signature[q[i]] = i == 0 ? RealForm{false, 1, 1} : RealForm{true, 2, 0};

  std::vector<FactorSpec> factors = spec.factors();
  factors.push_back(nf);
  std::vector<std::map<std::string, std::string>> gens;
  for (const auto& g : spec.generators()) {
    std::map<std::string, std::string> m;
    for (const auto& l : spec.labels()) m[l] = spec.apply(g, l);
    for (std::size_t i = 0; i < group.size(); ++i) m[q[i]] = q[spec.group_index(compose(g, group[i]))];
    gens.push_back(std::move(m));
  }
  SpecOptions opts;
  opts.max_group_order = std::max<std::size_t>(64, group.size());
  GroupSpec ns = GroupSpec::build(factors, gens, opts);

  GlobalRepCandidate nc;
  for (std::size_t i = 0; i < group.size(); ++i) {
    IrreducibleSummand s = conjugate(spec, w.mu, group[i]);
    s.legs.push_back({name, q[i], RepTag::wedge(1)});
    sort_legs(s);
    nc.summands.push_back(std::move(s));
  }
  nc = normalize(ns, std::move(nc));
  if (step) {
    step->chosen_summand = w.mu;
    step->chosen_key = w.summand_key;
    step->alpha0 = w.alpha0;
    step->new_factor = ns.factor(name);
    step->split_embedding = q[0];
    step->before_index = rigidity_index(spec, cand);
    step->after_index = rigidity_index(ns, nc);
    step->candidate_after = candidate_key(ns, nc);
  }
  return {std::move(ns), std::move(nc)};
}

/// Iterates augmentation until the candidate is rigid.
inline RigidifyResult rigidify(const GlobalRepCandidate& cand, const GroupSpec& spec) {
  RigidifyResult r;
  r.spec = spec;
  r.candidate = normalize(spec, cand);
  const std::size_t limit = spec.group().size();
  while (auto w = find_nonrigid_witness(r.spec, r.candidate)) {
    if (r.trail.size() >= limit) throw std::logic_error("rigidify exceeded |G| steps");
    AugmentationStep step;
    auto [ns, nc] = augment(r.spec, r.candidate, *w, &step);
    if (step.after_index <= step.before_index) throw std::logic_error("rigidity index did not increase");
    r.added_factors.push_back(step.new_factor.name);
    r.spec = std::move(ns);
    r.candidate = std::move(nc);
    r.trail.push_back(std::move(step));
  }
  return r;
}

/// Erases the legs of the named factors and merges equal summands.
inline GlobalRepCandidate erase_factors(const GlobalRepCandidate& c, const std::vector<std::string>& names) {
  const std::set<std::string> drop(names.begin(), names.end());
  GlobalRepCandidate out;
  for (const auto& s : c.summands) {
    IrreducibleSummand t;
    t.multiplicity = s.multiplicity;
    for (const auto& l : s.legs)
      if (!drop.count(l.factor)) t.legs.push_back(l);
    out.summands.push_back(std::move(t));
  }
  return out;
}

/// The ratio m with erased == m * original (summand multiplicities), if uniform.
inline std::optional<boost::rational<long long>> uniform_multiple(const GroupSpec& original_spec,
                                                                  const GlobalRepCandidate& original,
                                                                  const GlobalRepCandidate& erased) {
  std::map<std::string, long long> a;
  std::map<std::string, long long> b;
  for (const auto& s : original.summands) {
    IrreducibleSummand t = s;
    t.multiplicity = 1;
    a[summand_body_key(original_spec, t)] += s.multiplicity;
  }
  for (const auto& s : erased.summands) {
    IrreducibleSummand t = s;
    t.multiplicity = 1;
    sort_legs(t);
    b[summand_body_key(original_spec, t)] += s.multiplicity;
  }
  if (a.empty() || a.size() != b.size()) return std::nullopt;
  std::optional<boost::rational<long long>> ratio;
  for (const auto& [k, m] : a) {
    auto it = b.find(k);
    if (it == b.end()) return std::nullopt;
    const boost::rational<long long> r(it->second, m);
    if (ratio && *ratio != r) return std::nullopt;
    ratio = r;
  }
  return ratio;
}

}  // namespace kuga
