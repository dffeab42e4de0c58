#pragma once

// Group specification data model and the line-oriented DSL describing it.
//
//   # comment
//   factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)
//   factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=(6,0)
//   galois perm=(a1 a2)(b1 b2)
//
// A number field is represented only by its set of real embeddings; the
// Galois group of the normal closure is given as permutations of the union of
// all embedding sets.  Each factor's embedding set must be one orbit.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kuga {

enum class HermitianType { I, II, III, IV };

inline std::string to_string(HermitianType t) {
  switch (t) {
    case HermitianType::I: return "I";
    case HermitianType::II: return "II";
    case HermitianType::III: return "III";
    case HermitianType::IV: return "IV";
  }
  return "?";
}

/// Real form of one factor at one embedding.
///
/// Type I stores (p, q) with p + q = n, q = 0 meaning SU(n).  Type IV stores
/// (n, 2) or the compact (n + 2, 0).  Types II and III only carry the flag.
struct RealForm {
  bool compact = false;
  int p = 0;
  int q = 0;
  friend bool operator==(const RealForm&, const RealForm&) = default;
};

struct FactorSpec {
  std::string name;
  HermitianType type = HermitianType::I;
  /// I: p + q; II: quaternionic rank; III: half the symplectic dimension; IV: p.
  int n = 0;
  std::vector<std::string> embeddings;  // sorted
  std::map<std::string, RealForm> signature;

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

/// Images of embedding indices (indices into GroupSpec::labels()).
using Permutation = std::vector<int>;

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& msg, std::string subject = {})
      : std::runtime_error(msg), subject_(std::move(subject)) {}
  /// Factor name or "galois" the error is about; empty if global.
  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

class ParseError : public SpecError {
 public:
  ParseError(int line, int column, const std::string& msg)
      : SpecError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
        column_(column), reason_(msg) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  int column_;
  std::string reason_;
};

inline bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

inline bool is_valid_token(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_token_char);
}

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Permutation inverse(const Permutation& a) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

inline Permutation identity_permutation(std::size_t n) {
  Permutation r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<int>(i);
  return r;
}

inline bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// Closure of a generating set; sorted lexicographically, so the identity
/// comes first.  Throws when the order exceeds `bound`.
inline std::vector<Permutation> generate_group(const std::vector<Permutation>& gens, std::size_t degree,
                                               std::size_t bound) {
  std::set<Permutation> seen{identity_permutation(degree)};
  std::vector<Permutation> frontier{identity_permutation(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Permutation h = compose(s, g);
        if (seen.insert(h).second) {
          if (seen.size() > bound)
            throw SpecError("Galois group order exceeds bound " + std::to_string(bound), "galois");
          next.push_back(std::move(h));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

struct SpecOptions {
  std::size_t max_group_order = 64;
};

class GroupSpec {
 public:
  GroupSpec() = default;

  /// Validates and materializes a spec.  `generators` map embedding labels to
  /// their images; unmapped labels are fixed.
  static GroupSpec build(std::vector<FactorSpec> factors,
                         const std::vector<std::map<std::string, std::string>>& generators,
                         const SpecOptions& opts = {}) {
    GroupSpec s;
    std::sort(factors.begin(), factors.end(),
              [](const FactorSpec& a, const FactorSpec& b) { return a.name < b.name; });
    std::set<std::string> names;
    for (auto& f : factors) {
      if (!is_valid_token(f.name)) throw SpecError("invalid factor name '" + f.name + "'", f.name);
      if (!names.insert(f.name).second) throw SpecError("duplicate factor name '" + f.name + "'", f.name);
      std::sort(f.embeddings.begin(), f.embeddings.end());
      validate_factor(f);
      for (const auto& e : f.embeddings) s.labels_.push_back(e);
    }
    std::sort(s.labels_.begin(), s.labels_.end());
    for (std::size_t i = 1; i < s.labels_.size(); ++i)
      if (s.labels_[i] == s.labels_[i - 1])
        throw SpecError("embedding label '" + s.labels_[i] + "' used twice");
    s.factors_ = std::move(factors);
    for (std::size_t fi = 0; fi < s.factors_.size(); ++fi)
      for (const auto& e : s.factors_[fi].embeddings) s.factor_index_[e] = fi;

    std::vector<Permutation> perms;
    for (const auto& g : generators) {
      Permutation p = identity_permutation(s.labels_.size());
      std::set<int> images;
      for (const auto& [from, to] : g) {
        const int a = s.find(from);
        const int b = s.find(to);
        if (a < 0) throw SpecError("unknown embedding label '" + from + "'", "galois");
        if (b < 0) throw SpecError("unknown embedding label '" + to + "'", "galois");
        p[a] = b;
      }
      for (int v : p) images.insert(v);
      if (images.size() != p.size()) throw SpecError("Galois generator is not a permutation", "galois");
      if (!is_identity(p)) perms.push_back(std::move(p));
    }
    s.group_ = generate_group(perms, s.labels_.size(), opts.max_group_order);
    s.check_orbits();
    s.generators_ = canonical_generators(s.group_, s.labels_.size(), opts.max_group_order);
    return s;
  }

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// All group elements, sorted, identity first.
  const std::vector<Permutation>& group() const { return group_; }
  /// Canonical generating set derived from the group (not the input).
  const std::vector<Permutation>& generators() const { return generators_; }

  int find(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
  }
  int index_of(std::string_view label) const {
    const int i = find(label);
    if (i < 0) throw SpecError("unknown embedding label '" + std::string(label) + "'");
    return i;
  }
  bool has_factor(std::string_view name) const {
    return std::any_of(factors_.begin(), factors_.end(), [&](const FactorSpec& f) { return f.name == name; });
  }
  const FactorSpec& factor(std::string_view name) const {
    for (const auto& f : factors_)
      if (f.name == name) return f;
    throw SpecError("unknown factor '" + std::string(name) + "'");
  }
  const FactorSpec& factor_of(std::string_view label) const {
    auto it = factor_index_.find(std::string(label));
    if (it == factor_index_.end()) throw SpecError("unknown embedding label '" + std::string(label) + "'");
    return factors_[it->second];
  }
  RealForm real_form(std::string_view label) const { return factor_of(label).signature.at(std::string(label)); }
  bool is_noncompact(std::string_view label) const { return !real_form(label).compact; }

  /// S0: the embeddings at which the factor is not compact.
  std::vector<std::string> noncompact_embeddings() const {
    std::vector<std::string> r;
    for (const auto& l : labels_)
      if (is_noncompact(l)) r.push_back(l);
    return r;
  }

  const std::string& apply(const Permutation& g, std::string_view label) const { return labels_[g[index_of(label)]]; }

  std::size_t group_index(const Permutation& g) const {
    auto it = std::lower_bound(group_.begin(), group_.end(), g);
    if (it == group_.end() || *it != g) throw SpecError("permutation is not in the Galois group");
    return static_cast<std::size_t>(it - group_.begin());
  }

  /// Cycle notation over labels, e.g. "(a1 a2)(b1 b2)"; "()" for the identity.
  std::string cycle_string(const Permutation& g) const {
    std::string out;
    std::vector<bool> done(g.size(), false);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (done[i] || g[i] == static_cast<int>(i)) continue;
      out += "(";
      std::size_t j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = true;
        if (!first) out += " ";
        out += labels_[j];
        first = false;
        j = static_cast<std::size_t>(g[j]);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.factors_ == b.factors_ && a.labels_ == b.labels_ && a.group_ == b.group_;
  }

 private:
  static void validate_factor(const FactorSpec& f) {
    const auto fail = [&](const std::string& m) { throw SpecError("factor " + f.name + ": " + m, f.name); };
    if (f.embeddings.empty()) fail("no embeddings");
    for (const auto& e : f.embeddings)
      if (!is_valid_token(e)) fail("invalid embedding label '" + e + "'");
    switch (f.type) {
      case HermitianType::I:
        if (f.n < 2) fail("type I needs n >= 2");
        break;
      case HermitianType::II:
        // SU^-(n, H) is only admitted for n >= 5; smaller n coincide with
        // other types through exceptional isomorphisms and are rejected.
        if (f.n < 5) fail("type II needs n >= 5 (n in {2,3,4} not accepted)");
        break;
      case HermitianType::III:
        if (f.n < 1) fail("type III needs n >= 1");
        break;
      case HermitianType::IV:
        if (f.n < 1) fail("type IV needs p >= 1");
        if (f.n == 2) fail("excluded signature: type IV with p = 2");
        break;
    }
    if (f.signature.size() != f.embeddings.size()) fail("every embedding needs exactly one sig(...)");
    bool any_noncompact = false;
    for (const auto& e : f.embeddings) {
      auto it = f.signature.find(e);
      if (it == f.signature.end()) fail("missing sig(" + e + ")");
      const RealForm& r = it->second;
      any_noncompact |= !r.compact;
      switch (f.type) {
        case HermitianType::I:
          if (r.p + r.q != f.n) fail("signature out of range at " + e + ": p + q must equal n");
          if (r.compact != (r.q == 0)) fail("signature out of range at " + e);
          if (!r.compact && !(r.p >= r.q && r.q >= 1)) fail("signature out of range at " + e + ": need p >= q >= 1");
          break;
        case HermitianType::II:
        case HermitianType::III:
          break;
        case HermitianType::IV:
          if (r.compact ? !(r.p == f.n + 2 && r.q == 0) : !(r.p == f.n && r.q == 2))
            fail("signature out of range at " + e);
          break;
      }
    }
    if (!any_noncompact) fail("all embeddings compact (factor with compact real points)");
  }

  void check_orbits() const {
    std::vector<int> orbit_of(labels_.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (orbit_of[i] >= 0) continue;
      for (const auto& g : group_) orbit_of[g[i]] = next;
      ++next;
    }
    for (const auto& f : factors_) {
      const int o = orbit_of[find(f.embeddings.front())];
      for (const auto& e : f.embeddings)
        if (orbit_of[find(e)] != o) throw SpecError("orbit not transitive on factor " + f.name, "galois");
      for (std::size_t i = 0; i < labels_.size(); ++i)
        if (orbit_of[i] == o && factor_of(labels_[i]).name != f.name)
          throw SpecError("Galois orbit of factor " + f.name + " leaves its embedding set", "galois");
    }
  }

  static std::vector<Permutation> canonical_generators(const std::vector<Permutation>& group, std::size_t degree,
                                                       std::size_t bound) {
    std::vector<Permutation> chosen;
    std::set<Permutation> span{identity_permutation(degree)};
    for (const auto& g : group) {
      if (span.count(g)) continue;
      chosen.push_back(g);
      const auto closure = generate_group(chosen, degree, std::max(bound, group.size()));
      span = {closure.begin(), closure.end()};
    }
    return chosen;
  }

  std::vector<FactorSpec> factors_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> factor_index_;
  std::vector<Permutation> group_;
  std::vector<Permutation> generators_;
};

// ---------------------------------------------------------------------------
// DSL

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line, int line_no) {
  std::vector<Token> out;
  int depth = 0;
  std::string cur;
  int start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    const char c = i < line.size() ? line[i] : ' ';
    if (c == '#' && depth == 0) {
      if (!cur.empty()) out.push_back({cur, start});
      cur.clear();
      break;
    }
    if ((c == ' ' || c == '\t' || c == '\r') && depth == 0) {
      if (!cur.empty()) out.push_back({cur, start});
      cur.clear();
      continue;
    }
    if (cur.empty()) start = static_cast<int>(i) + 1;
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw ParseError(line_no, static_cast<int>(i) + 1, "syntax error: unbalanced ')'");
    if (c == '#') break;
    cur += c;
  }
  if (depth != 0) throw ParseError(line_no, static_cast<int>(line.size()) + 1, "syntax error: unbalanced '('");
  return out;
}

inline int parse_int(const std::string& s, int line, int col) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(line, col, "syntax error: expected integer, got '" + s + "'");
  if (s.size() > 6) throw ParseError(line, col, "integer out of range: " + s);
  return std::stoi(s);
}

inline std::vector<std::vector<std::string>> parse_cycles(const std::string& text, int line, int col) {
  std::vector<std::vector<std::string>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError(line, col + static_cast<int>(i), "syntax error: expected '(' in cycle notation");
    ++i;
    std::vector<std::string> cyc;
    std::string cur;
    for (; i < text.size() && text[i] != ')'; ++i) {
      const char c = text[i];
      if (c == ' ' || c == ',' || c == '\t') {
        if (!cur.empty()) cyc.push_back(cur);
        cur.clear();
      } else if (is_token_char(c)) {
        cur += c;
      } else {
        throw ParseError(line, col + static_cast<int>(i), std::string("syntax error: unexpected '") + c + "'");
      }
    }
    if (i >= text.size()) throw ParseError(line, col + static_cast<int>(i), "syntax error: unterminated cycle");
    if (!cur.empty()) cyc.push_back(cur);
    ++i;
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return cycles;
}

inline RealForm parse_signature(const std::string& v, HermitianType type, int n, int line, int col) {
  if (v == "compact") {
    switch (type) {
      case HermitianType::I: return {true, n, 0};
      case HermitianType::IV: return {true, n + 2, 0};
      default: return {true, 0, 0};
    }
  }
  if (v == "noncompact") {
    if (type == HermitianType::I) throw ParseError(line, col, "type I signature must be written (p,q)");
    if (type == HermitianType::IV) return {false, n, 2};
    return {false, 0, 0};
  }
  if (v.size() < 5 || v.front() != '(' || v.back() != ')')
    throw ParseError(line, col, "syntax error: signature must be (p,q), compact or noncompact");
  const auto comma = v.find(',');
  if (comma == std::string::npos) throw ParseError(line, col, "syntax error: signature must be (p,q)");
  const int p = parse_int(v.substr(1, comma - 1), line, col + 1);
  const int q = parse_int(v.substr(comma + 1, v.size() - comma - 2), line, col + static_cast<int>(comma) + 1);
  switch (type) {
    case HermitianType::I:
      if (p + q != n) throw ParseError(line, col, "signature out of range: p + q must equal n");
      if (q == 0) return {true, p, 0};
      if (p < q) throw ParseError(line, col, "signature out of range: need p >= q");
      return {false, p, q};
    case HermitianType::IV:
      if (n == 2 || (q == 2 && p == 2)) throw ParseError(line, col, "excluded signature: Spin(2,2) is not admitted");
      if (q == 2 && p == n) return {false, p, q};
      if (q == 0 && p == n + 2) return {true, p, q};
      throw ParseError(line, col, "signature out of range for type IV with p = " + std::to_string(n));
    default:
      throw ParseError(line, col, "types II and III take 'compact' or 'noncompact'");
  }
}

}  // namespace detail

/// Parses the DSL.  Every failure is a ParseError carrying line and column.
inline GroupSpec parse_group_spec(std::string_view text, const SpecOptions& opts = {}) {
  std::vector<FactorSpec> factors;
  std::map<std::string, int> factor_line;
  std::vector<std::map<std::string, std::string>> gens;
  int galois_line = 0;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::tokenize_line(line, line_no);
    if (toks.empty()) continue;
    const auto& kw = toks[0];
    if (kw.text == "factor") {
      if (toks.size() < 2) throw ParseError(line_no, kw.column, "syntax error: factor needs a name");
      FactorSpec f;
      f.name = toks[1].text;
      if (!is_valid_token(f.name)) throw ParseError(line_no, toks[1].column, "syntax error: invalid factor name");
      if (factor_line.count(f.name)) throw ParseError(line_no, toks[1].column, "duplicate factor name '" + f.name + "'");
      factor_line[f.name] = line_no;
      std::optional<HermitianType> type;
      std::optional<int> n;
      std::vector<std::pair<std::string, detail::Token>> sigs;
      bool have_embeddings = false;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        const auto& t = toks[i];
        const auto eq = t.text.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, t.column, "syntax error: expected key=value");
        const std::string key = t.text.substr(0, eq);
        const std::string val = t.text.substr(eq + 1);
        const int vcol = t.column + static_cast<int>(eq) + 1;
        if (key == "type") {
          if (val == "I") type = HermitianType::I;
          else if (val == "II") type = HermitianType::II;
          else if (val == "III") type = HermitianType::III;
          else if (val == "IV") type = HermitianType::IV;
          else throw ParseError(line_no, vcol, "syntax error: type must be I, II, III or IV");
        } else if (key == "n" || key == "p") {
          n = detail::parse_int(val, line_no, vcol);
        } else if (key == "embeddings") {
          std::string cur;
          int ccol = vcol;
          for (std::size_t j = 0; j <= val.size(); ++j) {
            if (j == val.size() || val[j] == ',') {
              if (!is_valid_token(cur)) throw ParseError(line_no, ccol, "syntax error: invalid embedding label");
              if (std::find(f.embeddings.begin(), f.embeddings.end(), cur) != f.embeddings.end())
                throw ParseError(line_no, ccol, "embedding label '" + cur + "' listed twice");
              f.embeddings.push_back(cur);
              cur.clear();
              ccol = vcol + static_cast<int>(j) + 1;
            } else {
              cur += val[j];
            }
          }
          have_embeddings = true;
        } else if (key.rfind("sig(", 0) == 0 && key.back() == ')') {
          sigs.emplace_back(key.substr(4, key.size() - 5), detail::Token{val, vcol});
        } else {
          throw ParseError(line_no, t.column, "syntax error: unknown key '" + key + "'");
        }
      }
      if (!type) throw ParseError(line_no, kw.column, "factor " + f.name + ": missing type=");
      if (!n) throw ParseError(line_no, kw.column, "factor " + f.name + ": missing n=");
      if (!have_embeddings) throw ParseError(line_no, kw.column, "factor " + f.name + ": missing embeddings=");
      f.type = *type;
      f.n = *n;
      if (f.type == HermitianType::IV && f.n == 2)
        throw ParseError(line_no, kw.column, "excluded signature: type IV with p = 2");
      for (const auto& [label, tok] : sigs) {
        if (std::find(f.embeddings.begin(), f.embeddings.end(), label) == f.embeddings.end())
          throw ParseError(line_no, tok.column, "unknown embedding label '" + label + "' in sig()");
        if (f.signature.count(label)) throw ParseError(line_no, tok.column, "duplicate sig(" + label + ")");
        f.signature[label] = detail::parse_signature(tok.text, f.type, f.n, line_no, tok.column);
      }
      for (const auto& e : f.embeddings)
        if (!f.signature.count(e)) throw ParseError(line_no, kw.column, "factor " + f.name + ": missing sig(" + e + ")");
      factors.push_back(std::move(f));
    } else if (kw.text == "galois") {
      if (galois_line == 0) galois_line = line_no;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (t.text.rfind("perm=", 0) != 0) throw ParseError(line_no, t.column, "syntax error: expected perm=<cycles>");
        std::map<std::string, std::string> g;
        for (const auto& cyc : detail::parse_cycles(t.text.substr(5), line_no, t.column + 5)) {
          for (std::size_t j = 0; j < cyc.size(); ++j) {
            if (g.count(cyc[j])) throw ParseError(line_no, t.column, "label '" + cyc[j] + "' repeated in permutation");
            g[cyc[j]] = cyc[(j + 1) % cyc.size()];
          }
        }
        gens.push_back(std::move(g));
      }
    } else {
      throw ParseError(line_no, kw.column, "syntax error: unknown directive '" + kw.text + "'");
    }
  }
  if (factors.empty()) throw ParseError(line_no > 0 ? line_no : 1, 1, "no factors declared");
  try {
    return GroupSpec::build(std::move(factors), gens, opts);
  } catch (const ParseError&) {
    throw;
  } catch (const SpecError& e) {
    int at = 1;
    if (e.subject() == "galois" && galois_line > 0) at = galois_line;
    else if (auto it = factor_line.find(e.subject()); it != factor_line.end()) at = it->second;
    throw ParseError(at, 1, e.what());
  }
}

inline std::string render_signature(const FactorSpec& f, const RealForm& r) {
  switch (f.type) {
    case HermitianType::I:
      return "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")";
    case HermitianType::IV:
      return r.compact ? "compact" : "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")";
    default:
      return r.compact ? "compact" : "noncompact";
  }
}

/// Canonical text: factors sorted by name, embeddings sorted, one galois line
/// per canonical generator, LF line endings.
inline std::string render_factor(const FactorSpec& f) {
  std::string out = "factor " + f.name + " type=" + to_string(f.type) + " n=" + std::to_string(f.n) + " embeddings=";
  for (std::size_t i = 0; i < f.embeddings.size(); ++i) out += (i ? "," : "") + f.embeddings[i];
  for (const auto& e : f.embeddings) out += " sig(" + e + ")=" + render_signature(f, f.signature.at(e));
  return out;
}

inline std::string render_group_spec(const GroupSpec& spec) {
  std::string out;
  for (const auto& f : spec.factors()) out += render_factor(f) + "\n";
  for (const auto& g : spec.generators()) out += "galois perm=" + spec.cycle_string(g) + "\n";
  return out;
}

}  // namespace kuga
