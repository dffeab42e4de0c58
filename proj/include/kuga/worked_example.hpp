#pragma once

// The built-in two-factor example: SL2(R) x SU(2) x SU(5,1) x SU(6,0) over a
// real quadratic field, with its golden list of representation families.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace kuga::worked_example {

inline constexpr std::string_view kSpec =
    "# G1: norm-one units of a quaternion algebra split at a1, ramified at a2\n"
    "# G2: SU(5,1) at b1 and SU(6,0) at b2\n"
    "factor G1 type=I n=2 embeddings=a1,a2 sig(a1)=(1,1) sig(a2)=(2,0)\n"
    "factor G2 type=I n=6 embeddings=b1,b2 sig(b1)=(5,1) sig(b2)=(6,0)\n"
    "galois perm=(a1 a2)(b1 b2)\n";

inline constexpr long long kDefaultMaxDim = 1000;

struct GoldenFamily {
  int item;  // position in the published list
  std::string family;
  long long min_real_dim;
  const char* description;
};

inline const std::vector<GoldenFamily>& golden_families() {
  static const std::vector<GoldenFamily> g = {
      {1, "G1:a1\xE2\x8A\x95G1:a2", 8, "p1 + p2"},
      {2, "G1:a1\xE2\x8A\x97G1:a2", 16, "p1 (x) p2"},
      {3, "G2:b1\xE2\x8A\x95G2:b2", 24, "wedge^k p3 + wedge^k p4"},
      {4, "G2:b1\xE2\x8A\x97G2:b2", 144, "(wedge^j p3 (x) wedge^k p4) + (wedge^k p3 (x) wedge^j p4)"},
      {5, "G1:a1\xE2\x8A\x97G2:b2\xE2\x8A\x95G1:a2\xE2\x8A\x97G2:b1", 96,
       "(p1 (x) wedge^k p4) + (p2 (x) wedge^k p3)"},
  };
  return g;
}

/// Golden families whose smallest member fits within max_dim, sorted by key.
inline std::vector<std::string> expected_families(long long max_dim) {
  std::vector<std::string> out;
  for (const auto& f : golden_families())
    if (f.min_real_dim <= max_dim) out.push_back(f.family);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kuga::worked_example
