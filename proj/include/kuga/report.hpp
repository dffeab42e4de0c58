#pragma once

// JSON and markdown rendering of verification reports.

#include "kuga/pipeline.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace kuga {

using json = nlohmann::json;

/// A double rounded to 12 significant digits; non-finite values become null.
inline json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? json(0.0) : json(r);
}

struct ReportMeta {
  std::string spec_text;
  bool exact = false;
  Tolerances tol;
  long long max_dim = 0;
  std::string command;
};

inline json to_json(const HCertificate& c) {
  json j;
  j["h1_residual"] = num(c.h1_residual);
  j["h2_residual"] = num(c.h2_residual);
  j["h2_expected"] = c.h2_expected;
  j["lemma_exp_residual"] = c.lemma_exp_residual ? num(*c.lemma_exp_residual) : json(nullptr);
  j["lemma_route"] = c.lemma_route;
  j["tolerance"] = num(c.tolerance);
  j["h1"] = to_string(c.h1);
  j["h2"] = to_string(c.h2);
  j["pass"] = c.pass();
  return j;
}

inline json to_json(const LegCertificate& l) {
  json j;
  j["leg"] = l.key;
  j["embedding"] = l.leg.embedding;
  j["factor"] = l.leg.factor;
  j["kind"] = kind_string(l.descriptor);
  j["noncompact"] = l.noncompact;
  j["real_dim"] = l.dim;
  j["h2_flag"] = l.descriptor.h2;
  j["realization"] = {{"closure_residual", num(l.realization.closure)},
                      {"homomorphism_residual", num(l.realization.homomorphism)},
                      {"e_preservation_residual", num(l.realization.e_preservation)}};
  j["h_certificate"] = l.h ? to_json(*l.h) : json(nullptr);
  return j;
}

inline json to_json(const FormCertificate& f) {
  json j;
  j["dim"] = f.dim;
  j["blocks"] = f.blocks;
  j["gamma_invariance_residual"] = num(f.gamma_invariance);
  j["gamma_min_eigenvalue"] = num(f.gamma_min_eigenvalue);
  j["gamma_solution_dims"] = f.gamma_solution_dim;
  j["j_invariance_residual"] = num(f.j_invariance);
  j["j_skew_residual"] = num(f.j_skew);
  j["j_invariance_route"] = f.j_invariance_route;
  j["j_square_residual"] = num(f.j_square);
  j["e_alternating_residual"] = num(f.e_alternating);
  j["symmetry_residual"] = num(f.symmetry);
  j["min_eigenvalue"] = num(f.min_eigenvalue);
  j["full_h1_residual"] = num(f.full_h1);
  j["full_h1_residual_unscaled"] = num(f.full_h1_unscaled);
  j["full_e_invariance_residual"] = num(f.full_e_invariance);
  json c = json::object();
  for (const auto& [k, v] : f.scaling.c) c[k] = num(v);
  j["scaling"] = {{"N", f.scaling.N},
                  {"doublings", f.scaling.doublings},
                  {"c", c},
                  {"min_eigenvalue_identity_block", num(f.scaling.min_eigenvalue_identity_block)},
                  {"min_eigenvalue_search", num(f.scaling.min_eigenvalue_search)}};
  return j;
}

inline json to_json(const AugmentationStep& s) {
  json j;
  j["chosen_summand"] = s.chosen_key;
  j["alpha0"] = s.alpha0;
  j["new_factor"] = s.new_factor.name;
  j["new_factor_spec"] = render_factor(s.new_factor);
  j["split_embedding"] = s.split_embedding;
  j["before_index"] = s.before_index;
  j["after_index"] = s.after_index;
  j["candidate_after"] = s.candidate_after;
  return j;
}

inline json to_json(const CandidateReport& r) {
  json j;
  j["key"] = r.key;
  j["family"] = r.family;
  j["real_dim"] = r.real_dim;
  j["primary"] = r.primary;
  j["rigid"] = r.rigid;
  j["rigidity_index"] = r.rigidity_index;
  j["group_order"] = r.group_order;
  j["status"] = r.status();
  j["failures"] = r.failures;
  json legs = json::array();
  for (const auto& l : r.legs) legs.push_back(to_json(l));
  j["leg_certificates"] = legs;
  j["form_certificate"] = r.forms ? to_json(*r.forms) : json(nullptr);
  json trail = json::array();
  for (const auto& s : r.trail) trail.push_back(to_json(s));
  j["rigidify_trail"] = trail;
  j["final_candidate"] = r.final_key;
  j["final_rigidity_index"] = r.final_rigidity_index;
  j["restriction_multiple"] = r.restriction_multiple;
  j["multiplicity_note"] = kMultiplicityNote;
  return j;
}

struct FamilySummary {
  std::string family;
  long long min_real_dim = 0;
  int members = 0;
};

inline std::vector<FamilySummary> summarize_families(const std::vector<CandidateReport>& rs) {
  std::map<std::string, FamilySummary> m;
  for (const auto& r : rs) {
    auto& f = m[r.family];
    if (f.members == 0 || r.real_dim < f.min_real_dim) f.min_real_dim = r.real_dim;
    f.family = r.family;
    ++f.members;
  }
  std::vector<FamilySummary> out;
  for (auto& [_, f] : m) out.push_back(f);
  return out;
}

inline json build_report(const ReportMeta& meta, const std::vector<CandidateReport>& rs) {
  json j;
  j["spec"] = meta.spec_text;
  json cands = json::array();
  int passed = 0;
  int failed = 0;
  int dead = 0;
  for (const auto& r : rs) {
    cands.push_back(to_json(r));
    if (r.dead_zone) ++dead;
    else if (r.failures.empty()) ++passed;
    else ++failed;
  }
  j["candidates"] = cands;
  json fam = json::array();
  for (const auto& f : summarize_families(rs))
    fam.push_back({{"family", f.family}, {"min_real_dim", f.min_real_dim}, {"members", f.members}});
  j["families"] = fam;
  j["summary"] = {{"candidates", rs.size()},
                  {"passed", passed},
                  {"failed", failed},
                  {"dead_zone", dead},
                  {"status", dead ? "DEAD-ZONE" : (failed ? "FAIL" : "PASS")}};
  j["tool"] = {{"name", kToolName},
               {"version", kToolVersion},
               {"command", meta.command},
               {"mode", meta.exact ? "exact" : "float"},
               {"max_dim", meta.max_dim},
               {"tolerances", {{"pass", num(meta.tol.pass)}, {"fail_witness", num(meta.tol.fail_witness)}}},
               {"equivalence", "families are listed up to equivalence over R only"},
               {"rationality",
                "Q-rationality is carried by Galois-stability of the candidate; analytic conditions are checked per "
                "real embedding"}};
  return j;
}

inline std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

inline std::string render_markdown(const json& rep) {
  std::ostringstream os;
  os << "# Verification report\n\n";
  os << "Mode: " << rep["tool"]["mode"].get<std::string>() << ", max real dimension "
     << rep["tool"]["max_dim"].get<long long>() << ", status **" << rep["summary"]["status"].get<std::string>()
     << "**.\n\n";
  os << "## Group\n\n```\n" << rep["spec"].get<std::string>() << "```\n\n";
  os << "## Families\n\n| family | min real dim | members |\n|---|---|---|\n";
  for (const auto& f : rep["families"])
    os << "| `" << f["family"].get<std::string>() << "` | " << f["min_real_dim"].get<long long>() << " | "
       << f["members"].get<int>() << " |\n";
  os << "\n## Candidates\n\n| key | dim | rigid | index | trail | N | min eig | status |\n|---|---|---|---|---|---|---|---|\n";
  for (const auto& c : rep["candidates"]) {
    const auto& fc = c["form_certificate"];
    os << "| `" << c["key"].get<std::string>() << "` | " << c["real_dim"].get<long long>() << " | "
       << (c["rigid"].get<bool>() ? "yes" : "no") << " | " << c["rigidity_index"].get<int>() << " | "
       << c["rigidify_trail"].size() << " | " << (fc.is_null() ? std::string("-") : fc["scaling"]["N"].dump()) << " | "
       << (fc.is_null() ? std::string("-") : fc["min_eigenvalue"].dump()) << " | " << c["status"].get<std::string>()
       << " |\n";
  }
  os << "\nMultiplicities making the representation rational are not computed (" << kMultiplicityNote << ").\n";
  return os.str();
}

}  // namespace kuga
