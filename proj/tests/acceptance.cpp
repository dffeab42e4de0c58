// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
//
// usage: acceptance <data-dir> <scratch-dir>

#include "instances.hpp"
#include "kuga/commands.hpp"
#include "oracle.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

kuga::GroupSpec load(const fs::path& p) { return kuga::parse_group_spec(slurp(p)); }

Outcome ac1_worked_families() {
  Outcome o;
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = kuga::cmd_example({"sec6", kuga::worked_example::kDefaultMaxDim, false, "", "", ""}, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(code == kuga::kExitOk, "exit code " + std::to_string(code) + ": " + err.str());
  o.require(out.str().find("families (5):") != std::string::npos, "family count line missing");
  for (const auto& g : kuga::worked_example::golden_families())
    o.require(out.str().find("(" + std::to_string(g.item) + ") " + g.family + "\n") != std::string::npos,
              "missing item " + std::to_string(g.item));
  o.require(secs <= 60.0, "runtime " + fmt(secs) + " s");
  if (o.ok) o.detail = "5 families in " + fmt(secs) + " s";
  return o;
}

Outcome ac2_h1_rows() {
  Outcome o;
  double worst = 0.0;
  for (const auto& inst : instances::noncompact_rows()) {
    const double r = kuga::check_h1(kuga::realize<kuga::cd>(inst.descriptor));
    worst = std::max(worst, r);
    o.require(r <= 1e-9, inst.name + " h1 " + fmt(r));
  }
  if (o.ok) o.detail = std::to_string(instances::noncompact_rows().size()) + " rows, worst " + fmt(worst);
  return o;
}

Outcome ac3_h2_flags() {
  Outcome o;
  int negatives = 0;
  for (const auto& inst : instances::noncompact_rows()) {
    const double r = kuga::check_h2(kuga::realize<kuga::cd>(inst.descriptor));
    if (inst.descriptor.h2) {
      o.require(r <= 1e-9, inst.name + " h2 " + fmt(r));
    } else {
      ++negatives;
      o.require(r >= 1e-3, inst.name + " negative h2 only " + fmt(r));
    }
  }
  if (o.ok) o.detail = std::to_string(negatives) + " negative rows with residual >= 1e-3";
  return o;
}

Outcome ac4_exp_identity() {
  Outcome o;
  int h2 = 0, extended = 0;
  for (const auto& inst : instances::noncompact_rows()) {
    const auto& d = inst.descriptor;
    if (!d.h2 && d.type != kuga::HermitianType::I) continue;
    const auto c = kuga::certify(kuga::realize<kuga::cd>(d), kuga::Tolerances{});
    o.require(c.lemma_exp_residual.has_value(), inst.name + " no exp check");
    if (!c.lemma_exp_residual) continue;
    o.require(*c.lemma_exp_residual <= 1e-9, inst.name + " exp " + fmt(*c.lemma_exp_residual));
    (d.h2 ? h2 : extended) += 1;
  }
  o.require(extended > 0, "no non-H2 type I rows exercised");
  if (o.ok) o.detail = std::to_string(h2) + " H2 rows, " + std::to_string(extended) + " extended rows";
  return o;
}

Outcome ac5_wedge_identity() {
  Outcome o;
  for (const auto& [p, k] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {5, 3}, {7, 2}}) {
    const double r = kuga::wedge_h_tilde_identity_residual<kuga::GaussQ>(p, k);
    o.require(r == 0.0, "(" + std::to_string(p) + "," + std::to_string(k) + ") residual " + fmt(r));
  }
  if (o.ok) o.detail = "exact zero for (5,1) (5,2) (5,3) (7,2)";
  return o;
}

Outcome ac6_forms(const fs::path& data) {
  Outcome o;
  const std::vector<std::pair<std::string, int>> specs = {{"worked_example.kuga", 1000},
                                                          {"fixture_sp_spin.kuga", 300},
                                                          {"fixture_so_star_su.kuga", 300},
                                                          {"fixture_halfspin_su22.kuga", 300}};
  int checked = 0;
  for (const auto& [file, max_dim] : specs) {
    const auto spec = load(data / "specs" / file);
    for (const auto& e : kuga::enumerate_candidates(spec, max_dim)) {
      const auto r = kuga::certify_candidate(spec, e.candidate, kuga::PipelineOptions{});
      const std::string tag = file + " " + e.key;
      o.require(r.forms.has_value(), tag + " no forms");
      if (!r.forms) continue;
      const auto& f = *r.forms;
      o.require(f.j_square <= 1e-12, tag + " J^2 " + fmt(f.j_square));
      o.require(f.e_alternating <= 1e-12, tag + " E alternating " + fmt(f.e_alternating));
      o.require(f.symmetry <= 1e-10, tag + " symmetry " + fmt(f.symmetry));
      o.require(f.min_eigenvalue > 0.0, tag + " min eigenvalue " + fmt(f.min_eigenvalue));
      o.require(f.full_h1 <= 1e-9, tag + " full h1 " + fmt(f.full_h1));
      ++checked;
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " candidates across 4 specs";
  return o;
}

Outcome ac7_order_four(const fs::path& data) {
  Outcome o;
  const auto spec = load(data / "specs" / "rigidify_order4.kuga");
  const auto c = kuga::parse_candidate_key(
      spec, "G:s1:WedgeMiddleSingle(1)\xE2\x8A\x95G:s2:WedgeMiddleSingle(1)\xE2\x8A\x95"
            "G:s3:CompactArbitrary(wedge1)\xE2\x8A\x95G:s4:CompactArbitrary(wedge1)");
  o.require(spec.group().size() == 4, "group order " + std::to_string(spec.group().size()));
  const auto r = kuga::rigidify(c, spec);
  std::string trail = std::to_string(kuga::rigidity_index(spec, c));
  int prev = kuga::rigidity_index(spec, c);
  for (const auto& s : r.trail) {
    o.require(s.before_index == prev && s.after_index > s.before_index, "trail not strictly increasing");
    prev = s.after_index;
    trail += "->" + std::to_string(prev);
  }
  o.require(!r.trail.empty() && prev == 4, "trail ends at " + std::to_string(prev));
  const auto m = kuga::uniform_multiple(spec, c, kuga::erase_factors(r.candidate, r.added_factors));
  o.require(m.has_value(), "restriction is not a uniform multiple");
  if (o.ok) o.detail = "trail " + trail + ", restriction multiple " + std::to_string(m->numerator());
  return o;
}

Outcome ac8_oracle_equivalence() {
  Outcome o;
  long long checked = 0;
  for (const auto& fx : oracle::fixtures()) {
    const auto spec = kuga::parse_group_spec(fx.text);
    o.require(spec.group().size() <= 8, fx.name + " group too large");
    for (const auto& cand : oracle::all_candidates(spec, 64)) {
      const auto lib = oracle::to_library(spec, cand);
      o.require(kuga::is_galois_stable(spec, lib) == oracle::galois_stable(spec, cand), fx.name + " galois");
      o.require(kuga::check_stability(spec, lib) == oracle::stable(spec, cand), fx.name + " stability");
      const bool prim = oracle::primary(spec, cand);
      o.require(kuga::is_primary(spec, lib) == prim, fx.name + " primary");
      if (prim && kuga::is_galois_stable(spec, lib)) o.require(kuga::rigidity_index(spec, lib) == oracle::rigidity_index(spec, cand), fx.name + " index");
      ++checked;
    }
  }
  o.require(checked > 0, "no candidates generated");
  if (o.ok) o.detail = std::to_string(checked) + " candidates over " + std::to_string(oracle::fixtures().size()) + " groups";
  return o;
}

Outcome ac9_determinism(const fs::path& data, const fs::path& scratch) {
  Outcome o;
  std::vector<std::string> texts;
  for (const char* name : {"exact_a.json", "exact_b.json"}) {
    std::ostringstream out, err;
    const int code = kuga::cmd_classify(
        {(data / "specs" / "worked_example.kuga").string(), 1000, true, (scratch / name).string(), ""}, out, err);
    o.require(code == kuga::kExitOk, std::string(name) + " exit " + std::to_string(code) + ": " + err.str());
    texts.push_back(slurp(scratch / name));
  }
  o.require(!texts[0].empty() && texts[0] == texts[1], "reports differ");
  if (o.ok) o.detail = std::to_string(texts[0].size()) + " identical bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <data-dir> <scratch-dir>\n";
    return 2;
  }
  const fs::path data = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 worked example families", ac1_worked_families},
      {"AC2 H1 on noncompact rows", ac2_h1_rows},
      {"AC3 H2 flags", ac3_h2_flags},
      {"AC4 exponential identity", ac4_exp_identity},
      {"AC5 exterior power identity", ac5_wedge_identity},
      {"AC6 symplectic data", [&] { return ac6_forms(data); }},
      {"AC7 rigidify order four", [&] { return ac7_order_four(data); }},
      {"AC8 oracle equivalence", ac8_oracle_equivalence},
      {"AC9 exact determinism", [&] { return ac9_determinism(data, scratch); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.ok ? 0 : 1;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
