#include "kuga/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

const std::string kData = KUGA_DATA_DIR;

std::string spec_path(const std::string& name) { return kData + "/specs/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("kuga_test_report_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void expect_sorted_keys(const nlohmann::ordered_json& j, const std::string& where) {
  if (j.is_object()) {
    std::string prev;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) EXPECT_LT(prev, it.key()) << where;
      prev = it.key();
      first = false;
      expect_sorted_keys(it.value(), where + "." + it.key());
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) expect_sorted_keys(j[i], where + "[" + std::to_string(i) + "]");
  }
}

TEST(Report, NumberRounding) {
  EXPECT_EQ(kuga::num(0.1 + 0.2).dump(), "0.3");
  EXPECT_EQ(kuga::num(1.0 / 3.0).get<double>(), 0.333333333333);
  EXPECT_EQ(kuga::num(-0.0).dump(), "0.0");
  EXPECT_TRUE(kuga::num(std::nan("")).is_null());
  EXPECT_EQ(kuga::num(1.5e-300).get<double>(), 1.5e-300);
}

TEST(Report, GoldenFileMatchesBuiltInList) {
  std::ifstream in(kData + "/golden/worked_example_families.txt");
  ASSERT_TRUE(in.good());
  std::vector<kuga::worked_example::GoldenFamily> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    kuga::worked_example::GoldenFamily g{};
    ls >> g.item >> g.family >> g.min_real_dim;
    rows.push_back(g);
  }
  const auto& want = kuga::worked_example::golden_families();
  ASSERT_EQ(rows.size(), want.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].item, want[i].item);
    EXPECT_EQ(rows[i].family, want[i].family);
    EXPECT_EQ(rows[i].min_real_dim, want[i].min_real_dim);
  }
  EXPECT_TRUE(kuga::worked_example::expected_families(7).empty());
  EXPECT_EQ(kuga::worked_example::expected_families(20).size(), 2u);
}

TEST(Report, ClassifyWritesSortedJsonAndMarkdown) {
  const auto dir = scratch("classify");
  std::ostringstream out, err;
  const int code = kuga::cmd_classify({spec_path("sp2.kuga"), 300, false, (dir / "r.json").string(),
                                       (dir / "r.md").string()},
                                      out, err);
  ASSERT_EQ(code, kuga::kExitOk) << err.str();
  EXPECT_NE(out.str().find("1 family"), std::string::npos) << out.str();
  const auto rep = nlohmann::ordered_json::parse(slurp(dir / "r.json"));
  expect_sorted_keys(rep, "$");
  EXPECT_EQ(rep["summary"]["status"], "PASS");
  EXPECT_EQ(rep["families"].size(), 1u);
  EXPECT_EQ(rep["tool"]["mode"], "float");
  const std::string md = slurp(dir / "r.md");
  EXPECT_NE(md.find("# Verification report"), std::string::npos);
  EXPECT_NE(md.find("| family | min real dim | members |"), std::string::npos);
  EXPECT_NE(md.find("**PASS**"), std::string::npos);
}

TEST(Report, ClassifyRejectsBadInput) {
  std::ostringstream out, err;
  EXPECT_EQ(kuga::cmd_classify({spec_path("invalid/syntax.kuga"), 100, false, "", ""}, out, err), kuga::kExitParse);
  EXPECT_NE(err.str().find("syntax.kuga:"), std::string::npos) << err.str();
  EXPECT_EQ(kuga::cmd_classify({spec_path("sp2.kuga"), 1, false, "", ""}, out, err), kuga::kExitParse);
  EXPECT_EQ(kuga::cmd_classify({spec_path("does_not_exist.kuga"), 100, false, "", ""}, out, err), kuga::kExitParse);
  for (const auto& e : fs::directory_iterator(kData + "/specs/invalid")) {
    std::ostringstream o, r;
    EXPECT_EQ(kuga::cmd_render(e.path().string(), o, r), kuga::kExitParse) << e.path();
  }
}

TEST(Report, VerifyOutcomes) {
  const std::string worked = spec_path("worked_example.kuga");
  {
    std::ostringstream out, err;
    EXPECT_EQ(kuga::cmd_verify({worked, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x97G2:b1:WedgePair(1)\xE2\x8A\x95"
                                         "G1:a2:CompactArbitrary(wedge1)\xE2\x8A\x97G2:b2:CompactArbitrary(wedge1)", false, "", ""},
                               out, err),
              kuga::kExitVerify);
    EXPECT_NE(out.str().find("stability"), std::string::npos) << out.str() << err.str();
  }
  {
    std::ostringstream out, err;
    EXPECT_EQ(kuga::cmd_verify({worked, "G1:a1:WedgeMiddleSingle(1)", false, "", ""}, out, err), kuga::kExitVerify);
    EXPECT_NE(out.str().find("galois-stability"), std::string::npos) << out.str() << err.str();
  }
  {
    std::ostringstream out, err;
    EXPECT_EQ(kuga::cmd_verify({worked, "G1:a1:WedgeMiddleSingle(1)\xE2\x8A\x95G1:a2:CompactArbitrary(wedge1)", false, "",
                                ""},
                               out, err),
              kuga::kExitOk)
        << err.str();
    EXPECT_NE(out.str().find("PASS"), std::string::npos);
    EXPECT_NE(out.str().find("augment:"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("trail=1->2"), std::string::npos) << out.str();
  }
  {
    std::ostringstream out, err;
    EXPECT_EQ(kuga::cmd_verify({worked, "G1:zz:Nope", false, "", ""}, out, err), kuga::kExitParse);
    EXPECT_EQ(kuga::cmd_verify({worked, "", false, "", ""}, out, err), kuga::kExitParse);
  }
}

TEST(Report, ExampleSmallBoundAndUnknownName) {
  std::ostringstream out, err;
  EXPECT_EQ(kuga::cmd_example({"sec6", 2, false, "", "", ""}, out, err), kuga::kExitOk) << err.str();
  EXPECT_NE(out.str().find("families (0)"), std::string::npos) << out.str();
  std::ostringstream o2, e2;
  EXPECT_EQ(kuga::cmd_example({"nope", 100, false, "", "", ""}, o2, e2), kuga::kExitParse);
}

TEST(Report, ExampleDumpsFamilyFiveMatrices) {
  const auto dir = scratch("dump");
  std::ostringstream out, err;
  ASSERT_EQ(kuga::cmd_example({"sec6", 100, false, "", "", dir.string()}, out, err), kuga::kExitOk) << err.str();
  const auto e = dir / "family5_0_E.txt";
  const auto j = dir / "family5_0_J.txt";
  ASSERT_TRUE(fs::exists(e));
  ASSERT_TRUE(fs::exists(j));
  std::ifstream in(e);
  int rows = 0, cols = 0;
  std::string kind;
  in >> rows >> cols >> kind;
  EXPECT_EQ(rows, 96);
  EXPECT_EQ(cols, 96);
  EXPECT_EQ(kind, "real");
}

TEST(Report, ExactClassifyIsByteIdentical) {
  const auto dir = scratch("exact");
  for (const char* name : {"a.json", "b.json"}) {
    std::ostringstream out, err;
    ASSERT_EQ(kuga::cmd_classify({spec_path("worked_example.kuga"), 100, true, (dir / name).string(), ""}, out, err),
              kuga::kExitOk)
        << err.str();
  }
  const std::string a = slurp(dir / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.json"));
  EXPECT_EQ(nlohmann::json::parse(a)["tool"]["mode"], "exact");
}

}  // namespace
