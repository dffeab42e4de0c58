#pragma once

// The command layer behind the kuga executable.  Each command returns its exit
// code: 0 ok, 2 parse error or unknown key, 3 verification failure, 4 a
// residual inside the dead zone between the pass and fail tolerances.

#include "kuga/report.hpp"
#include "kuga/worked_example.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kuga {

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitVerify = 3, kExitDeadZone = 4 };

struct ClassifyArgs {
  std::string spec_path;
  long long max_dim = 0;
  bool exact = false;
  std::string report_path;
  std::string markdown_path;
};

struct VerifyArgs {
  std::string spec_path;
  std::string candidate;
  bool exact = false;
  std::string report_path;
  std::string dump_dir;
};

struct ExampleArgs {
  std::string name = "sec6";
  long long max_dim = worked_example::kDefaultMaxDim;
  bool exact = false;
  std::string report_path;
  std::string markdown_path;
  std::string dump_dir;
};

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return true;
}

/// Parses a spec file, printing "path:line:col: message" on failure.
inline std::optional<GroupSpec> load_spec(const std::string& path, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << path << ": error: cannot read file\n";
    return std::nullopt;
  }
  try {
    return parse_group_spec(*text);
  } catch (const ParseError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": error: " << e.reason() << "\n";
  } catch (const std::exception& e) {
    err << path << ": error: " << e.what() << "\n";
  }
  return std::nullopt;
}

inline int exit_for(const std::vector<CandidateReport>& rs) {
  bool dead = false;
  bool fail = false;
  for (const auto& r : rs) {
    dead = dead || r.dead_zone;
    fail = fail || !r.failures.empty();
  }
  return dead ? kExitDeadZone : (fail ? kExitVerify : kExitOk);
}

inline void print_summary(const CandidateReport& r, std::ostream& out) {
  out << r.status() << "  " << r.key << "  dim=" << r.real_dim << " rigid=" << (r.rigid ? "yes" : "no")
      << " index=" << r.rigidity_index << "/" << r.group_order;
  if (!r.trail.empty()) {
    out << " trail=";
    for (std::size_t i = 0; i < r.trail.size(); ++i)
      out << (i ? "," : "") << r.trail[i].before_index << "->" << r.trail[i].after_index;
  }
  if (r.forms)
    out << " N=" << r.forms->scaling.N << " min_eig=" << num(r.forms->min_eigenvalue).dump()
        << " full_h1=" << num(r.forms->full_h1).dump();
  out << "\n";
  for (const auto& f : r.failures) out << "    reason: " << f << "\n";
}

inline std::vector<CandidateReport> run_candidates(const GroupSpec& spec, const std::vector<CandidateEntry>& entries,
                                                   const PipelineOptions& opt) {
  std::vector<CandidateReport> out;
  for (const auto& e : entries) out.push_back(certify_candidate(spec, e.candidate, opt));
  return out;
}

inline bool emit_reports(const ReportMeta& meta, const std::vector<CandidateReport>& rs, const std::string& report,
                         const std::string& markdown, std::ostream& err) {
  const json rep = build_report(meta, rs);
  bool ok = true;
  if (!report.empty()) ok = write_file(report, dump_report(rep), err) && ok;
  if (!markdown.empty()) ok = write_file(markdown, render_markdown(rep), err) && ok;
  return ok;
}

inline void dump_symplectic_data(const std::string& dir, const std::string& stem, const AssembledSymplecticData& d,
                                 std::ostream& out, std::ostream& err) {
  for (const auto& [suffix, m] : {std::pair<std::string, MatR>{"E", d.E()}, {"J", d.J()}}) {
    std::ostringstream ss;
    write_matrix_dump(ss, m);
    const std::string path = (std::filesystem::path(dir) / (stem + "_" + suffix + ".txt")).string();
    if (write_file(path, ss.str(), err)) out << "wrote " << path << "\n";
  }
}

}  // namespace detail

inline int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = detail::load_spec(a.spec_path, err);
  if (!spec) return kExitParse;
  if (a.max_dim < 2) {
    err << "error: --max-dim must be at least 2\n";
    return kExitParse;
  }
  PipelineOptions opt{a.exact, Tolerances::from_env()};
  const auto entries = enumerate_candidates(*spec, static_cast<int>(std::min<long long>(a.max_dim, 1 << 30)));
  const auto reports = detail::run_candidates(*spec, entries, opt);
  for (const auto& r : reports) detail::print_summary(r, out);
  out << reports.size() << " minimal candidate(s), " << summarize_families(reports).size() << " family(ies)\n";
  ReportMeta meta{render_group_spec(*spec), a.exact, opt.tol, a.max_dim, "classify"};
  if (!detail::emit_reports(meta, reports, a.report_path, a.markdown_path, err)) return kExitVerify;
  return detail::exit_for(reports);
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = detail::load_spec(a.spec_path, err);
  if (!spec) return kExitParse;
  GlobalRepCandidate cand;
  try {
    cand = parse_candidate_key(*spec, a.candidate);
  } catch (const std::exception& e) {
    err << "error: candidate key: " << e.what() << "\n";
    return kExitParse;
  }
  if (auto v = admissibility_violation(*spec, cand)) {
    out << "FAIL  admissibility: " << *v << "\n";
    return kExitVerify;
  }
  if (!check_stability(*spec, cand)) {
    out << "FAIL  stability: a summand is nontrivial on two noncompact embeddings\n";
    return kExitVerify;
  }
  if (!is_galois_stable(*spec, cand)) {
    out << "FAIL  galois-stability: the candidate is not stable under the Galois group\n";
    return kExitVerify;
  }
  PipelineOptions opt{a.exact, Tolerances::from_env()};
  std::vector<CandidateReport> reports;
  int idx = 0;
  for (const auto& comp : primary_components(*spec, cand)) {
    AssembledSymplecticData data;
    reports.push_back(certify_candidate(*spec, comp, opt, a.dump_dir.empty() ? nullptr : &data));
    const auto& r = reports.back();
    detail::print_summary(r, out);
    for (const auto& s : r.trail)
      out << "    augment: " << s.chosen_key << " at " << s.alpha0 << " with " << render_factor(s.new_factor)
          << " (index " << s.before_index << " -> " << s.after_index << ")\n";
    for (const auto& l : r.legs)
      if (l.h)
        out << "    " << l.key << ": h1=" << num(l.h->h1_residual).dump() << " h2=" << num(l.h->h2_residual).dump()
            << " (expected " << (l.h->h2_expected ? "pass" : "fail") << ") lemma="
            << (l.h->lemma_exp_residual ? num(*l.h->lemma_exp_residual).dump() : std::string("n/a")) << " via "
            << l.h->lemma_route << "\n";
    if (!r.trail.empty()) out << "    multiplicity: " << kMultiplicityNote << "\n";
    if (!a.dump_dir.empty() && r.forms) detail::dump_symplectic_data(a.dump_dir, "component" + std::to_string(idx), data, out, err);
    ++idx;
  }
  ReportMeta meta{render_group_spec(*spec), a.exact, opt.tol, 0, "verify"};
  if (!detail::emit_reports(meta, reports, a.report_path, "", err)) return kExitVerify;
  return detail::exit_for(reports);
}

inline int cmd_example(const ExampleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.name != "sec6") {
    err << "error: unknown example '" << a.name << "' (available: sec6)\n";
    return kExitParse;
  }
  const GroupSpec spec = parse_group_spec(worked_example::kSpec);
  PipelineOptions opt{a.exact, Tolerances::from_env()};
  const auto entries = enumerate_candidates(spec, static_cast<int>(std::min<long long>(a.max_dim, 1 << 30)));
  std::vector<CandidateReport> reports;
  int dumped = 0;
  for (const auto& e : entries) {
    const bool dump = !a.dump_dir.empty() && e.family == worked_example::golden_families()[4].family;
    AssembledSymplecticData data;
    reports.push_back(certify_candidate(spec, e.candidate, opt, dump ? &data : nullptr));
    if (dump && reports.back().forms)
      detail::dump_symplectic_data(a.dump_dir, "family5_" + std::to_string(dumped++), data, out, err);
  }
  for (const auto& r : reports) detail::print_summary(r, out);

  std::vector<std::string> got;
  for (const auto& f : summarize_families(reports)) got.push_back(f.family);
  const auto want = worked_example::expected_families(a.max_dim);
  out << "families (" << got.size() << "):\n";
  for (const auto& f : got) {
    int item = 0;
    for (const auto& g : worked_example::golden_families())
      if (g.family == f) item = g.item;
    out << "  (" << item << ") " << f << "\n";
  }
  ReportMeta meta{render_group_spec(spec), a.exact, opt.tol, a.max_dim, "example sec6"};
  if (!detail::emit_reports(meta, reports, a.report_path, a.markdown_path, err)) return kExitVerify;
  if (got != want) {
    err << "golden mismatch:\n";
    for (const auto& f : want)
      if (std::find(got.begin(), got.end(), f) == got.end()) err << "- " << f << "\n";
    for (const auto& f : got)
      if (std::find(want.begin(), want.end(), f) == want.end()) err << "+ " << f << "\n";
    return kExitVerify;
  }
  const int code = detail::exit_for(reports);
  out << (code == kExitOk ? "PASS" : "FAIL") << ": " << got.size() << " famil" << (got.size() == 1 ? "y" : "ies")
      << " match the golden list\n";
  return code;
}

/// Canonical rendering of a spec file.
inline int cmd_render(const std::string& spec_path, std::ostream& out, std::ostream& err) {
  const auto spec = detail::load_spec(spec_path, err);
  if (!spec) return kExitParse;
  out << render_group_spec(*spec);
  return kExitOk;
}

}  // namespace kuga
