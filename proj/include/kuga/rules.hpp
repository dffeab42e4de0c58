#pragma once

// Admissibility table, stability, Galois conjugation, rigidity and the
// bounded enumerator of admissible global candidates.
//
// A summand of the complexified representation is a tensor product of
// irreducible pieces, one per embedding in its support.  Each piece is named
// by a RepTag (complex content shared by every embedding of the factor); the
// concrete table row at an embedding follows from the real form there.

#include "kuga/linalg.hpp"
#include "kuga/spec.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kuga {

inline constexpr std::string_view kTensorSep = "\xE2\x8A\x97";  // U+2297
inline constexpr std::string_view kSumSep = "\xE2\x8A\x95";     // U+2295

enum class RepKind {
  Trivial,
  StdPlusContra,
  WedgePair,
  WedgeMiddleSingle,
  WedgeMiddleDouble,
  Std2Copies_II,
  Std_III,
  Spin_Single,
  Spin_Double,
  HalfSpin,
  HalfSpinDouble,
  BothHalfSpins,
  CompactArbitrary,
  Inadmissible,
};

inline std::string kind_name(RepKind k) {
  switch (k) {
    case RepKind::Trivial: return "Trivial";
    case RepKind::StdPlusContra: return "StdPlusContra";
    case RepKind::WedgePair: return "WedgePair";
    case RepKind::WedgeMiddleSingle: return "WedgeMiddleSingle";
    case RepKind::WedgeMiddleDouble: return "WedgeMiddleDouble";
    case RepKind::Std2Copies_II: return "Std2Copies_II";
    case RepKind::Std_III: return "Std_III";
    case RepKind::Spin_Single: return "Spin_Single";
    case RepKind::Spin_Double: return "Spin_Double";
    case RepKind::HalfSpin: return "HalfSpin";
    case RepKind::HalfSpinDouble: return "HalfSpinDouble";
    case RepKind::BothHalfSpins: return "BothHalfSpins";
    case RepKind::CompactArbitrary: return "CompactArbitrary";
    case RepKind::Inadmissible: return "Inadmissible";
  }
  return "?";
}

/// Complex content of one tensor leg.
struct RepTag {
  enum class Kind { Wedge, Spin, HalfSpin };
  Kind kind = Kind::Wedge;
  int k = 1;      // exterior degree for Wedge
  int which = 1;  // +1 / -1 for HalfSpin

  static RepTag wedge(int k) { return {Kind::Wedge, k, 1}; }
  static RepTag spin() { return {Kind::Spin, 0, 1}; }
  static RepTag half_spin(int which) { return {Kind::HalfSpin, 0, which}; }

  friend auto operator<=>(const RepTag&, const RepTag&) = default;
};

inline std::string tag_string(const RepTag& t) {
  switch (t.kind) {
    case RepTag::Kind::Wedge: return "wedge" + std::to_string(t.k);
    case RepTag::Kind::Spin: return "spin";
    case RepTag::Kind::HalfSpin: return t.which > 0 ? "halfspin+" : "halfspin-";
  }
  return "?";
}

inline std::optional<RepTag> parse_tag(std::string_view s) {
  if (s == "spin") return RepTag::spin();
  if (s == "halfspin+") return RepTag::half_spin(1);
  if (s == "halfspin-") return RepTag::half_spin(-1);
  if (s.rfind("wedge", 0) == 0 && s.size() > 5 && s.size() < 9) {
    int k = 0;
    for (char c : s.substr(5)) {
      if (c < '0' || c > '9') return std::nullopt;
      k = 10 * k + (c - '0');
    }
    if (k >= 1) return RepTag::wedge(k);
  }
  return std::nullopt;
}

/// Dimension of the defining complex module of the real form.
inline int standard_dim(HermitianType t, int n) {
  switch (t) {
    case HermitianType::I: return n;
    case HermitianType::II: return 2 * n;
    case HermitianType::III: return 2 * n;
    case HermitianType::IV: return n + 2;
  }
  return 0;
}

/// Complex dimension of the full spinor module of so(p, 2).
inline int spinor_dim(int p) { return 1 << ((p + 2) / 2); }

inline constexpr int kSpinCap = 10;

struct LocalRepDescriptor {
  RepKind kind = RepKind::Trivial;
  std::string factor;
  std::string embedding;
  HermitianType type = HermitianType::I;
  int n = 0;
  RealForm form;
  RepTag tag;
  bool h2 = false;
  int real_dim = 1;
  /// Violated table row when kind is Inadmissible.
  std::string reason;

  bool compact() const { return form.compact; }
  bool admissible() const { return kind != RepKind::Inadmissible; }
};

/// "WedgePair(2)", "HalfSpin(+)", "CompactArbitrary(wedge3)", "StdPlusContra".
inline std::string kind_string(const LocalRepDescriptor& d) {
  switch (d.kind) {
    case RepKind::WedgePair:
    case RepKind::WedgeMiddleSingle:
    case RepKind::WedgeMiddleDouble:
      return kind_name(d.kind) + "(" + std::to_string(d.tag.k) + ")";
    case RepKind::HalfSpin:
    case RepKind::HalfSpinDouble:
      return kind_name(d.kind) + (d.tag.which > 0 ? "(+)" : "(-)");
    case RepKind::CompactArbitrary:
    case RepKind::Inadmissible:
      return kind_name(d.kind) + "(" + tag_string(d.tag) + ")";
    default:
      return kind_name(d.kind);
  }
}

inline std::string descriptor_key(const LocalRepDescriptor& d) {
  return d.factor + ":" + d.embedding + ":" + kind_string(d);
}

namespace detail {

inline LocalRepDescriptor inadmissible(LocalRepDescriptor d, std::string why) {
  d.kind = RepKind::Inadmissible;
  d.h2 = false;
  d.real_dim = 0;
  d.reason = std::move(why);
  return d;
}

}  // namespace detail

/// Canonical representative of a tag for a factor, or nullopt when the tag
/// does not name an irreducible piece for that factor type.
inline std::optional<RepTag> normalize_tag(HermitianType type, int n, RepTag t) {
  const int m = standard_dim(type, n);
  switch (t.kind) {
    case RepTag::Kind::Wedge: {
      if (t.k < 1 || t.k >= m) return std::nullopt;
      if (type == HermitianType::I) t.k = std::min(t.k, m - t.k);
      if ((type == HermitianType::II || type == HermitianType::IV) && 2 * t.k >= m) return std::nullopt;
      if (type == HermitianType::III && t.k > n) return std::nullopt;
      t.which = 1;
      return t;
    }
    case RepTag::Kind::Spin:
      if (type != HermitianType::IV || n % 2 == 0) return std::nullopt;
      t.k = 0;
      t.which = 1;
      return t;
    case RepTag::Kind::HalfSpin:
      if (type != HermitianType::IV || n % 2 != 0) return std::nullopt;
      t.k = 0;
      if (n % 4 == 0) t.which = 1;
      return t;
  }
  return std::nullopt;
}

/// The table row for (factor type, real form at the embedding, tag).
inline LocalRepDescriptor describe(HermitianType type, int n, const RealForm& form, RepTag tag, std::string factor = {},
                                   std::string embedding = {}) {
  LocalRepDescriptor d;
  d.factor = std::move(factor);
  d.embedding = std::move(embedding);
  d.type = type;
  d.n = n;
  d.form = form;
  d.tag = tag;
  const auto norm = normalize_tag(type, n, tag);
  if (!norm) return detail::inadmissible(d, "tag " + tag_string(tag) + " is not an irreducible piece for type " + to_string(type));
  d.tag = *norm;
  const int m = standard_dim(type, n);
  const bool is_wedge = d.tag.kind == RepTag::Kind::Wedge;
  const int k = d.tag.k;

  if (form.compact) {
    if (!is_wedge && n > kSpinCap) return detail::inadmissible(d, "spin construction capped at p <= 10");
    d.kind = RepKind::CompactArbitrary;
    d.h2 = true;
    if (is_wedge) d.real_dim = 2 * static_cast<int>(binomial(m, k));
    else if (d.tag.kind == RepTag::Kind::Spin) d.real_dim = 2 * spinor_dim(n);
    else d.real_dim = spinor_dim(n);
    return d;
  }

  switch (type) {
    case HermitianType::I: {
      const int p = form.p;
      const int q = form.q;
      if (!is_wedge) return detail::inadmissible(d, "SU(p,q) admits only exterior powers");
      if (q >= 2) {
        if (k != 1)
          return detail::inadmissible(d, "SU(p,q) with p >= q >= 2: only the standard representation plus its contragredient");
        d.kind = RepKind::StdPlusContra;
        d.h2 = (p == q);
        d.real_dim = 2 * n;
        return d;
      }
      d.real_dim = 2 * static_cast<int>(binomial(n, k));
      if (2 * k < p + 1) {
        d.kind = RepKind::WedgePair;
        d.h2 = false;
      } else {
        d.kind = (p % 4 == 1) ? RepKind::WedgeMiddleSingle : RepKind::WedgeMiddleDouble;
        d.h2 = true;
      }
      return d;
    }
    case HermitianType::II:
      if (!is_wedge || k != 1) return detail::inadmissible(d, "SU^-(n,H): only two copies of the standard representation");
      d.kind = RepKind::Std2Copies_II;
      d.h2 = true;
      d.real_dim = 2 * m;
      return d;
    case HermitianType::III:
      if (!is_wedge || k != 1) return detail::inadmissible(d, "Sp(2n,R): only the standard representation");
      d.kind = RepKind::Std_III;
      d.h2 = true;
      d.real_dim = m;
      return d;
    case HermitianType::IV: {
      const int p = n;
      if (is_wedge) return detail::inadmissible(d, "Spin(p,2): only spin representations");
      if (p > kSpinCap) return detail::inadmissible(d, "spin construction capped at p <= 10");
      d.h2 = true;
      if (p % 2 == 1) {
        d.kind = (p % 8 == 1 || p % 8 == 3) ? RepKind::Spin_Single : RepKind::Spin_Double;
        d.real_dim = 2 * spinor_dim(p);
      } else {
        d.kind = (p % 4 == 0) ? RepKind::BothHalfSpins : (p % 8 == 2 ? RepKind::HalfSpin : RepKind::HalfSpinDouble);
        d.real_dim = spinor_dim(p);
      }
      return d;
    }
  }
  return d;
}

inline LocalRepDescriptor describe(const FactorSpec& f, const std::string& embedding, RepTag tag) {
  return describe(f.type, f.n, f.signature.at(embedding), tag, f.name, embedding);
}

/// Builds a descriptor of an explicit kind without consulting the table, for
/// constructions outside the admissible list (e.g. StdPlusContra on SU(p,1)).
inline LocalRepDescriptor make_descriptor(HermitianType type, int n, const RealForm& form, RepKind kind, RepTag tag = {},
                                          std::string factor = {}, std::string embedding = {}) {
  LocalRepDescriptor d = describe(type, n, form, tag, std::move(factor), std::move(embedding));
  if (kind == RepKind::StdPlusContra && type == HermitianType::I && !form.compact) {
    d.kind = RepKind::StdPlusContra;
    d.tag = RepTag::wedge(1);
    d.h2 = (form.p == form.q);
    d.real_dim = 2 * n;
    d.reason.clear();
  }
  if (d.kind != kind) throw SpecError("descriptor " + kind_name(kind) + " is not buildable for this real form");
  return d;
}

/// All tags meaningful for a factor whose pieces stay within `max_real_dim`
/// at some embedding.
inline std::vector<RepTag> factor_tags(HermitianType type, int n, int max_real_dim) {
  std::vector<RepTag> out;
  const int m = standard_dim(type, n);
  for (int k = 1; k < m; ++k) {
    auto t = normalize_tag(type, n, RepTag::wedge(k));
    if (!t || t->k != k) continue;
    if (2 * binomial(m, k) > 4LL * max_real_dim) continue;
    out.push_back(*t);
  }
  if (type == HermitianType::IV && n <= kSpinCap) {
    if (n % 2 == 1) out.push_back(RepTag::spin());
    else {
      out.push_back(RepTag::half_spin(1));
      if (n % 4 != 0) out.push_back(RepTag::half_spin(-1));
    }
  }
  return out;
}

/// The table rows available at one embedding.  Noncompact embeddings yield
/// the complete finite list; compact ones the exterior (and spin) pieces up to
/// the dimension bound.
inline std::vector<LocalRepDescriptor> enumerate_local_reps(const FactorSpec& f, const std::string& embedding,
                                                            int max_real_dim = 4096, bool include_trivial = false) {
  std::vector<LocalRepDescriptor> out;
  if (include_trivial) {
    LocalRepDescriptor t;
    t.factor = f.name;
    t.embedding = embedding;
    t.type = f.type;
    t.n = f.n;
    t.form = f.signature.at(embedding);
    t.h2 = true;
    out.push_back(t);
  }
  for (const auto& tag : factor_tags(f.type, f.n, max_real_dim)) {
    auto d = describe(f, embedding, tag);
    if (d.admissible() && d.real_dim <= max_real_dim) out.push_back(std::move(d));
  }
  return out;
}

/// Whether a descriptor sits in the table exactly as labeled.
inline std::optional<std::string> table_violation(const LocalRepDescriptor& d) {
  if (d.kind == RepKind::Inadmissible) return d.reason;
  if (d.kind == RepKind::Trivial) return std::nullopt;
  const auto expect = describe(d.type, d.n, d.form, d.tag);
  if (expect.kind == RepKind::Inadmissible) return expect.reason;
  if (expect.kind != d.kind)
    return kind_name(d.kind) + " is not the table row here (expected " + kind_string(expect) + ")";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Candidates

struct Leg {
  std::string factor;
  std::string embedding;
  RepTag tag;
  friend auto operator<=>(const Leg&, const Leg&) = default;
};

struct IrreducibleSummand {
  std::vector<Leg> legs;  // sorted by (factor, embedding); empty means trivial
  int multiplicity = 1;
  friend bool operator==(const IrreducibleSummand&, const IrreducibleSummand&) = default;
};

struct GlobalRepCandidate {
  std::vector<IrreducibleSummand> summands;
  friend bool operator==(const GlobalRepCandidate&, const GlobalRepCandidate&) = default;
};

inline std::string leg_key(const GroupSpec& spec, const Leg& leg) {
  return descriptor_key(describe(spec.factor(leg.factor), leg.embedding, leg.tag));
}

inline std::string summand_body_key(const GroupSpec& spec, const IrreducibleSummand& s) {
  if (s.legs.empty()) return "Trivial";
  std::string out;
  for (std::size_t i = 0; i < s.legs.size(); ++i) {
    if (i) out += kTensorSep;
    out += leg_key(spec, s.legs[i]);
  }
  return out;
}

inline std::string summand_key(const GroupSpec& spec, const IrreducibleSummand& s) {
  std::string out = summand_body_key(spec, s);
  if (s.multiplicity != 1) out += "*" + std::to_string(s.multiplicity);
  return out;
}

inline void sort_legs(IrreducibleSummand& s) {
  std::sort(s.legs.begin(), s.legs.end(), [](const Leg& a, const Leg& b) {
    return std::tie(a.factor, a.embedding) < std::tie(b.factor, b.embedding);
  });
}

/// Sorts legs and summands and merges equal summands.
inline GlobalRepCandidate normalize(const GroupSpec& spec, GlobalRepCandidate c) {
  std::map<std::string, IrreducibleSummand> merged;
  for (auto& s : c.summands) {
    for (auto& leg : s.legs) {
      const auto& f = spec.factor(leg.factor);
      if (auto t = normalize_tag(f.type, f.n, leg.tag)) leg.tag = *t;
    }
    sort_legs(s);
    const std::string body = summand_body_key(spec, s);
    auto [it, inserted] = merged.try_emplace(body, s);
    if (!inserted) it->second.multiplicity += s.multiplicity;
  }
  GlobalRepCandidate out;
  for (auto& [_, s] : merged) out.summands.push_back(std::move(s));
  return out;
}

inline std::string candidate_key(const GroupSpec& spec, const GlobalRepCandidate& c) {
  std::vector<std::string> parts;
  for (const auto& s : c.summands) parts.push_back(summand_key(spec, s));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += kSumSep;
    out += parts[i];
  }
  return out;
}

/// Support pattern with tags erased: one entry per distinct support.
inline std::string family_key(const GlobalRepCandidate& c) {
  std::set<std::string> parts;
  for (const auto& s : c.summands) {
    std::string p;
    for (std::size_t i = 0; i < s.legs.size(); ++i) {
      if (i) p += kTensorSep;
      p += s.legs[i].factor + ":" + s.legs[i].embedding;
    }
    parts.insert(p.empty() ? "Trivial" : p);
  }
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += kSumSep;
    out += p;
  }
  return out;
}

inline std::vector<std::string> support(const IrreducibleSummand& s) {
  std::vector<std::string> out;
  for (const auto& l : s.legs) out.push_back(l.embedding);
  return out;
}

inline int noncompact_leg_count(const GroupSpec& spec, const IrreducibleSummand& s) {
  int c = 0;
  for (const auto& l : s.legs) c += spec.is_noncompact(l.embedding) ? 1 : 0;
  return c;
}

inline long long summand_real_dim(const GroupSpec& spec, const IrreducibleSummand& s) {
  long long d = 1;
  for (const auto& l : s.legs) d *= describe(spec.factor(l.factor), l.embedding, l.tag).real_dim;
  return d;
}

inline long long candidate_real_dim(const GroupSpec& spec, const GlobalRepCandidate& c) {
  long long d = 0;
  for (const auto& s : c.summands) d += s.multiplicity * summand_real_dim(spec, s);
  return d;
}

inline IrreducibleSummand conjugate(const GroupSpec& spec, const IrreducibleSummand& s, const Permutation& sigma) {
  IrreducibleSummand out = s;
  for (auto& l : out.legs) l.embedding = spec.apply(sigma, l.embedding);
  sort_legs(out);
  return out;
}

inline GlobalRepCandidate conjugate(const GroupSpec& spec, const GlobalRepCandidate& c, const Permutation& sigma) {
  GlobalRepCandidate out;
  for (const auto& s : c.summands) out.summands.push_back(conjugate(spec, s, sigma));
  return normalize(spec, std::move(out));
}

/// Stable under every Galois element; checked on the canonical generators.
inline bool is_galois_stable(const GroupSpec& spec, const GlobalRepCandidate& c) {
  const auto base = normalize(spec, c);
  for (const auto& g : spec.generators())
    if (conjugate(spec, base, g) != base) return false;
  return true;
}

/// Every summand is nontrivial on at most one noncompact embedding.
inline bool check_stability(const GroupSpec& spec, const GlobalRepCandidate& c) {
  return std::all_of(c.summands.begin(), c.summands.end(),
                     [&](const IrreducibleSummand& s) { return noncompact_leg_count(spec, s) <= 1; });
}

inline bool is_rigid_summand(const GroupSpec& spec, const IrreducibleSummand& s) {
  return noncompact_leg_count(spec, s) == 1;
}

/// Every summand is nontrivial on exactly one noncompact embedding.
inline bool is_rigid(const GroupSpec& spec, const GlobalRepCandidate& c) {
  return std::all_of(c.summands.begin(), c.summands.end(),
                     [&](const IrreducibleSummand& s) { return is_rigid_summand(spec, s); });
}

/// First table violation over all legs, as "<leg>: <row>".
inline std::optional<std::string> admissibility_violation(const GroupSpec& spec, const GlobalRepCandidate& c) {
  for (const auto& s : c.summands)
    for (const auto& l : s.legs) {
      if (!spec.has_factor(l.factor)) return "unknown factor " + l.factor;
      const auto& f = spec.factor(l.factor);
      if (std::find(f.embeddings.begin(), f.embeddings.end(), l.embedding) == f.embeddings.end())
        return "embedding " + l.embedding + " does not belong to factor " + l.factor;
      const auto d = describe(f, l.embedding, l.tag);
      if (!d.admissible()) return l.factor + ":" + l.embedding + ": " + d.reason;
    }
  return std::nullopt;
}

/// All summands lie in one Galois orbit.
inline bool is_primary(const GroupSpec& spec, const GlobalRepCandidate& c) {
  if (c.summands.empty()) return false;
  const auto norm = normalize(spec, c);
  IrreducibleSummand mu = norm.summands.front();
  mu.multiplicity = 1;
  std::set<std::string> orbit;
  for (const auto& g : spec.group()) orbit.insert(summand_body_key(spec, conjugate(spec, mu, g)));
  for (const auto& s : norm.summands)
    if (!orbit.count(summand_body_key(spec, s))) return false;
  return true;
}

class NotPrimaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |{sigma : mu^sigma rigid}| for the first summand mu.
inline int rigidity_index(const GroupSpec& spec, const GlobalRepCandidate& c) {
  if (!is_primary(spec, c)) throw NotPrimaryError("rigidity index needs a primary candidate");
  const IrreducibleSummand mu = normalize(spec, c).summands.front();
  int count = 0;
  for (const auto& g : spec.group()) count += is_rigid_summand(spec, conjugate(spec, mu, g)) ? 1 : 0;
  return count;
}

/// Galois orbit of one summand as a minimal primary candidate.
inline GlobalRepCandidate orbit_candidate(const GroupSpec& spec, const IrreducibleSummand& mu) {
  std::map<std::string, IrreducibleSummand> distinct;
  for (const auto& g : spec.group()) {
    auto s = conjugate(spec, mu, g);
    s.multiplicity = 1;
    distinct.try_emplace(summand_body_key(spec, s), std::move(s));
  }
  GlobalRepCandidate c;
  for (auto& [_, s] : distinct) c.summands.push_back(std::move(s));
  return normalize(spec, std::move(c));
}

// ---------------------------------------------------------------------------
// Candidate key parsing

class CandidateKeyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool kind_takes_params(const std::string& name) {
  return name == "WedgePair" || name == "WedgeMiddleSingle" || name == "WedgeMiddleDouble" || name == "HalfSpin" ||
         name == "HalfSpinDouble" || name == "CompactArbitrary";
}

inline std::optional<RepKind> kind_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(RepKind::Inadmissible); ++i)
    if (kind_name(static_cast<RepKind>(i)) == s) return static_cast<RepKind>(i);
  return std::nullopt;
}

inline RepTag tag_for_kind(RepKind kind, const std::string& param) {
  switch (kind) {
    case RepKind::StdPlusContra:
    case RepKind::Std2Copies_II:
    case RepKind::Std_III:
      return RepTag::wedge(1);
    case RepKind::WedgePair:
    case RepKind::WedgeMiddleSingle:
    case RepKind::WedgeMiddleDouble: {
      auto t = parse_tag("wedge" + param);
      if (!t) throw CandidateKeyError("bad exterior degree '" + param + "'");
      return *t;
    }
    case RepKind::Spin_Single:
    case RepKind::Spin_Double:
      return RepTag::spin();
    case RepKind::HalfSpin:
    case RepKind::HalfSpinDouble:
      if (param == "+") return RepTag::half_spin(1);
      if (param == "-") return RepTag::half_spin(-1);
      throw CandidateKeyError("half-spin parameter must be + or -");
    case RepKind::BothHalfSpins:
      return RepTag::half_spin(1);
    case RepKind::CompactArbitrary: {
      auto t = parse_tag(param);
      if (!t) throw CandidateKeyError("unknown compact tag '" + param + "'");
      return *t;
    }
    default:
      throw CandidateKeyError("kind " + kind_name(kind) + " cannot appear in a candidate key");
  }
}

class KeyScanner {
 public:
  explicit KeyScanner(std::string_view s) : s_(s) {}
  bool done() { skip_ws(); return i_ >= s_.size(); }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t j = i_;
    while (j < s_.size() && is_token_char(s_[j])) ++j;
    std::string out(s_.substr(i_, j - i_));
    i_ = j;
    return out;
  }
  std::string until(char c) {
    const auto j = s_.find(c, i_);
    if (j == std::string_view::npos) throw CandidateKeyError("unterminated parameter list");
    std::string out(s_.substr(i_, j - i_));
    i_ = j + 1;
    return out;
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  std::size_t pos() const { return i_; }

 private:
  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses a canonical key.  ASCII "(x)" and "(+)" are accepted for the
/// tensor and sum separators.  Throws CandidateKeyError naming the offending
/// leg and the violated table row.
inline GlobalRepCandidate parse_candidate_key(const GroupSpec& spec, std::string_view key) {
  detail::KeyScanner sc(key);
  GlobalRepCandidate c;
  IrreducibleSummand cur;
  const auto finish_summand = [&] {
    if (cur.legs.empty()) throw CandidateKeyError("empty summand");
    c.summands.push_back(std::move(cur));
    cur = {};
  };
  if (sc.done()) throw CandidateKeyError("empty candidate key");
  while (true) {
    const std::string factor = sc.ident();
    if (factor == "Trivial") throw CandidateKeyError("trivial summands are not accepted in keys");
    if (!sc.eat(":")) throw CandidateKeyError("expected ':' after factor '" + factor + "'");
    const std::string emb = sc.ident();
    if (!sc.eat(":")) throw CandidateKeyError("expected ':' after embedding '" + emb + "'");
    const std::string kname = sc.ident();
    const auto kind = detail::kind_from_name(kname);
    if (!kind) throw CandidateKeyError("unknown representation kind '" + kname + "'");
    std::string param;
    if (detail::kind_takes_params(kname)) {
      if (!sc.eat("(")) throw CandidateKeyError(kname + " needs a parameter");
      param = sc.until(')');
    }
    if (!spec.has_factor(factor)) throw CandidateKeyError("unknown factor '" + factor + "'");
    const auto& f = spec.factor(factor);
    if (std::find(f.embeddings.begin(), f.embeddings.end(), emb) == f.embeddings.end())
      throw CandidateKeyError("unknown embedding '" + emb + "' for factor " + factor);
    const RepTag tag = detail::tag_for_kind(*kind, param);
    const auto d = describe(f, emb, tag);
    const std::string where = factor + ":" + emb + ":" + kname;
    if (!d.admissible()) throw CandidateKeyError("non-admissible leg " + where + ": " + d.reason);
    if (d.kind != *kind)
      throw CandidateKeyError("non-admissible leg " + where + ": table row here is " + kind_string(d));
    for (const auto& l : cur.legs)
      if (l.embedding == emb) throw CandidateKeyError("embedding " + emb + " appears twice in one summand");
    cur.legs.push_back({factor, emb, d.tag});
    if (sc.eat("*")) {
      const std::string m = sc.ident();
      if (m.empty() || m.size() > 6 || !std::all_of(m.begin(), m.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
          std::stoi(m) < 1)
        throw CandidateKeyError("bad multiplicity '" + m + "'");
      cur.multiplicity = std::stoi(m);
      if (sc.done()) break;
      if (!(sc.eat(kSumSep) || sc.eat("(+)"))) throw CandidateKeyError("expected a summand separator after multiplicity");
      finish_summand();
      continue;
    }
    if (sc.done()) break;
    if (sc.eat(kTensorSep) || sc.eat("(x)")) continue;
    if (sc.eat(kSumSep) || sc.eat("(+)")) {
      finish_summand();
      continue;
    }
    throw CandidateKeyError("unexpected text at offset " + std::to_string(sc.pos()));
  }
  finish_summand();
  return normalize(spec, std::move(c));
}

// ---------------------------------------------------------------------------
// Enumeration

struct CandidateEntry {
  GlobalRepCandidate candidate;
  std::string key;
  std::string family;
  long long real_dim = 0;
  bool primary = false;
  bool rigid = false;
  int rigidity_index = 0;  // meaningful when primary
};

struct EnumerateOptions {
  /// Also list sums of distinct primary candidates with multiplicities.
  bool include_composites = false;
  std::size_t max_candidates = 200000;
};

/// Tags admissible at every embedding of the factor (a tag is carried around
/// the whole orbit by conjugation).
inline std::vector<RepTag> orbit_admissible_tags(const FactorSpec& f, int max_real_dim) {
  std::vector<RepTag> out;
  for (const auto& t : factor_tags(f.type, f.n, max_real_dim)) {
    bool ok = true;
    for (const auto& e : f.embeddings) ok = ok && describe(f, e, t).admissible();
    if (ok) out.push_back(t);
  }
  return out;
}

namespace detail {

inline CandidateEntry make_entry(const GroupSpec& spec, GlobalRepCandidate c) {
  CandidateEntry e;
  e.candidate = normalize(spec, std::move(c));
  e.key = candidate_key(spec, e.candidate);
  e.family = family_key(e.candidate);
  e.real_dim = candidate_real_dim(spec, e.candidate);
  e.primary = is_primary(spec, e.candidate);
  e.rigid = is_rigid(spec, e.candidate);
  e.rigidity_index = e.primary ? rigidity_index(spec, e.candidate) : 0;
  return e;
}

}  // namespace detail

/// Minimal primary candidates (single Galois orbits of one summand) and,
/// optionally, their sums, of total real dimension at most max_real_dim.
/// Output is sorted by canonical key.
inline std::vector<CandidateEntry> enumerate_candidates(const GroupSpec& spec, int max_real_dim,
                                                        const EnumerateOptions& opts = {}) {
  const auto& labels = spec.labels();
  std::vector<std::vector<RepTag>> tags(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    tags[i] = orbit_admissible_tags(spec.factor_of(labels[i]), max_real_dim);

  std::map<std::string, CandidateEntry> found;
  IrreducibleSummand cur;
  std::function<void(std::size_t, long long, int)> dfs = [&](std::size_t i, long long dim, int noncompact) {
    if (i == labels.size()) {
      if (cur.legs.empty()) return;
      auto cand = orbit_candidate(spec, cur);
      if (!check_stability(spec, cand) || admissibility_violation(spec, cand)) return;
      if (candidate_real_dim(spec, cand) > max_real_dim) return;
      auto entry = detail::make_entry(spec, std::move(cand));
      found.try_emplace(entry.key, std::move(entry));
      return;
    }
    dfs(i + 1, dim, noncompact);
    const bool nc = spec.is_noncompact(labels[i]);
    if (nc && noncompact == 1) return;
    const auto& f = spec.factor_of(labels[i]);
    for (const auto& t : tags[i]) {
      const long long d = describe(f, labels[i], t).real_dim;
      if (dim * d > max_real_dim) continue;
      cur.legs.push_back({f.name, labels[i], t});
      dfs(i + 1, dim * d, noncompact + (nc ? 1 : 0));
      cur.legs.pop_back();
    }
  };
  dfs(0, 1, 0);

  std::vector<CandidateEntry> primaries;
  for (auto& [_, e] : found) primaries.push_back(std::move(e));
  if (!opts.include_composites) return primaries;

  std::map<std::string, CandidateEntry> all;
  for (const auto& p : primaries) all.emplace(p.key, p);
  std::vector<int> mult(primaries.size(), 0);
  std::function<void(std::size_t, long long, int)> combine = [&](std::size_t i, long long dim, int used) {
    if (all.size() >= opts.max_candidates) return;
    if (i == primaries.size()) {
      if (used < 2) return;
      GlobalRepCandidate c;
      for (std::size_t j = 0; j < primaries.size(); ++j)
        for (const auto& s : primaries[j].candidate.summands) {
          auto t = s;
          t.multiplicity *= mult[j];
          if (mult[j] > 0) c.summands.push_back(std::move(t));
        }
      auto e = detail::make_entry(spec, std::move(c));
      all.try_emplace(e.key, std::move(e));
      return;
    }
    for (int m = 0; dim + m * primaries[i].real_dim <= max_real_dim; ++m) {
      mult[i] = m;
      const int add = m > 1 ? 2 : m;
      combine(i + 1, dim + m * primaries[i].real_dim, used + add);
    }
    mult[i] = 0;
  };
  combine(0, 0, 0);
  std::vector<CandidateEntry> out;
  for (auto& [_, e] : all) out.push_back(std::move(e));
  return out;
}

}  // namespace kuga
