#include "kuga/realize.hpp"
#include "instances.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace {

using kuga::cd;
using kuga::HermitianType;
using kuga::MatC;
using kuga::MatR;
using kuga::RealForm;

int lie_dim_oracle(HermitianType t, int n) {
  switch (t) {
    case HermitianType::I: return n * n - 1;
    case HermitianType::II: return n * (2 * n - 1);
    case HermitianType::III: return n * (2 * n + 1);
    case HermitianType::IV: return (n + 2) * (n + 1) / 2;
  }
  return -1;
}

struct FormCase {
  HermitianType type;
  int n;
  RealForm form;
};

std::vector<FormCase> form_cases() {
  return {{HermitianType::I, 2, {false, 1, 1}},  {HermitianType::I, 3, {false, 2, 1}},
          {HermitianType::I, 5, {false, 3, 2}},  {HermitianType::I, 6, {false, 5, 1}},
          {HermitianType::I, 4, {true, 4, 0}},   {HermitianType::II, 5, {false, 0, 0}},
          {HermitianType::II, 5, {true, 0, 0}},  {HermitianType::III, 1, {false, 0, 0}},
          {HermitianType::III, 2, {false, 0, 0}}, {HermitianType::III, 2, {true, 0, 0}},
          {HermitianType::IV, 1, {false, 1, 2}}, {HermitianType::IV, 3, {false, 3, 2}},
          {HermitianType::IV, 6, {false, 6, 2}}, {HermitianType::IV, 4, {true, 6, 0}}};
}

TEST(RealForms, DimensionClosureAndCentrality) {
  for (const auto& c : form_cases()) {
    const auto L = kuga::build_real_form<cd>(c.type, c.n, c.form);
    EXPECT_EQ(static_cast<int>(L.basis.size()), lie_dim_oracle(c.type, c.n)) << L.name;
    EXPECT_EQ(kuga::expected_lie_dim(c.type, c.n), lie_dim_oracle(c.type, c.n));
    EXPECT_LT(kuga::closure_residual(L), 1e-12) << L.name;
    EXPECT_EQ(L.h_element.has_value(), !c.form.compact) << L.name;
    if (L.h_element) EXPECT_LT(kuga::h_element_centrality(L), 1e-12) << L.name;
  }
}

TEST(RealForms, HElementSquaresToMinusQuarterOnDefiningModule) {
  // H0 = i/2 on one eigenspace and -i/2 on the other: ad(H0)^2 = -1 on p.
  for (const auto& c : form_cases()) {
    if (c.form.compact) continue;
    const auto L = kuga::build_real_form<cd>(c.type, c.n, c.form);
    const MatC h = *L.h_element;
    for (std::size_t i = 0; i < L.basis.size(); ++i) {
      if (L.in_k[i]) continue;
      const MatC x = L.basis[i];
      const MatC adad = h * (h * x - x * h) - (h * x - x * h) * h;
      EXPECT_LT((adad + x).norm(), 1e-12) << L.name;
    }
  }
}

TEST(ExteriorPowers, SubsetCountsAreBinomial) {
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      long long want = 1;
      for (int i = 0; i < k; ++i) want = want * (n - i) / (i + 1);
      EXPECT_EQ(static_cast<long long>(kuga::k_subsets(n, k).size()), want);
    }
}

TEST(ExteriorPowers, DerivationIntegratesToMinors) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> N(0.0, 0.3);
  for (int n : {3, 4, 6})
    for (int k = 1; k < n; ++k) {
      MatC x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = cd(N(rng), N(rng));
      const MatC lhs = kuga::wedge_group(kuga::expm(x), k);
      const MatC rhs = kuga::expm(kuga::wedge_derivation<cd>(x, k));
      EXPECT_LT((lhs - rhs).norm(), 1e-10 * std::max(1.0, lhs.norm())) << n << "," << k;
    }
}

TEST(ExteriorPowers, DerivationIsLieHomomorphism) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    MatC a(6, 6), b(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        a(i, j) = cd(N(rng), N(rng));
        b(i, j) = cd(N(rng), N(rng));
      }
    const MatC da = kuga::wedge_derivation<cd>(a, k);
    const MatC db = kuga::wedge_derivation<cd>(b, k);
    const MatC lhs = kuga::wedge_derivation<cd>(MatC(a * b - b * a), k);
    EXPECT_LT((lhs - (da * db - db * da)).norm(), 1e-10 * lhs.norm());
  }
}

TEST(Clifford, EuclideanAnticommutators) {
  for (int m = 2; m <= 12; ++m) {
    const auto g = kuga::euclidean_gammas<cd>(m);
    ASSERT_EQ(static_cast<int>(g.size()), m);
    const auto d = g[0].rows();
    EXPECT_EQ(d, 1 << (m / 2));
    for (int a = 0; a < m; ++a) {
      EXPECT_LT((g[a] - MatC(g[a].adjoint())).norm(), 1e-15);
      for (int b = 0; b < m; ++b) {
        const MatC ac = g[a] * g[b] + g[b] * g[a];
        const MatC want = (a == b ? 2.0 : 0.0) * MatC::Identity(d, d);
        EXPECT_LT((ac - want).norm(), 1e-15) << m << ":" << a << "," << b;
      }
    }
  }
}

TEST(Clifford, SignatureGammasSquareToEta) {
  for (int p : {1, 3, 4, 6, 10}) {
    const auto g = kuga::signature_gammas<cd>(p, false);
    ASSERT_EQ(static_cast<int>(g.size()), p + 2);
    const auto d = g[0].rows();
    for (int a = 0; a < p + 2; ++a) {
      const double eta = a < p ? 1.0 : -1.0;
      EXPECT_LT((g[a] * g[a] - eta * MatC::Identity(d, d)).norm(), 1e-15);
    }
  }
}

TEST(Clifford, ChiralityAnticommutesInEvenDimension) {
  for (int m : {4, 6, 8, 12}) {
    const auto g = kuga::euclidean_gammas<cd>(m);
    const auto diag = kuga::chirality_diagonal(m);
    MatC c = MatC::Zero(g[0].rows(), g[0].cols());
    for (std::size_t i = 0; i < diag.size(); ++i) c(i, i) = diag[i];
    for (const auto& x : g) EXPECT_LT((c * x + x * c).norm(), 1e-15);
  }
}

class RowRealization : public ::testing::TestWithParam<instances::Instance> {};

TEST_P(RowRealization, ResidualsAndDimensions) {
  const auto& d = GetParam().descriptor;
  ASSERT_TRUE(d.admissible()) << d.reason;
  const auto r = kuga::realize<cd>(d);
  EXPECT_EQ(r.dim, d.real_dim);
  const auto res = kuga::realization_residuals(r);
  EXPECT_LT(res.closure, 1e-12);
  EXPECT_LT(res.homomorphism, 1e-12);
  EXPECT_LT(res.e_preservation, 1e-12);
  const MatR E = kuga::to_real<cd>(r.E0);
  const MatR J = kuga::to_real<cd>(r.J0);
  EXPECT_LT((E + E.transpose()).norm(), 1e-15);
  EXPECT_LT((J * J + MatR::Identity(r.dim, r.dim)).norm(), 1e-15);
}

TEST_P(RowRealization, TauStaysInSiegelSpace) {
  const auto r = kuga::realize<cd>(GetParam().descriptor);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0.0, 0.4);
  MatC x = MatC::Zero(r.lie.basis[0].rows(), r.lie.basis[0].cols());
  for (const auto& b : r.lie.basis) x += N(rng) * b;
  const MatR tau = kuga::tau_at(r, x, true);
  const MatR E = kuga::to_real<cd>(r.E0);
  EXPECT_LT((tau * tau + MatR::Identity(r.dim, r.dim)).norm(), 1e-8);
  const MatR g = E * tau;
  EXPECT_LT((g - g.transpose()).norm(), 1e-8 * g.norm());
  EXPECT_GT(kuga::min_symmetric_eigenvalue(MatR((g + g.transpose()) / 2.0)), 0.0);
  EXPECT_THROW(kuga::tau_at(r, x, false), kuga::NotCertifiedError);
}

INSTANTIATE_TEST_SUITE_P(Rows, RowRealization, ::testing::ValuesIn(instances::noncompact_rows()),
                         [](const auto& info) { return info.param.name; });

TEST(Realize, ExactAndFloatAgree) {
  for (const auto& inst : instances::noncompact_rows()) {
    if (inst.descriptor.type == HermitianType::IV && inst.descriptor.n > 6) continue;
    const auto a = kuga::realize<cd>(inst.descriptor);
    const auto b = kuga::realize<kuga::GaussQ>(inst.descriptor);
    ASSERT_EQ(a.images.size(), b.images.size());
    for (std::size_t i = 0; i < a.images.size(); ++i)
      EXPECT_LT((kuga::to_real<cd>(a.images[i]) - kuga::to_real<kuga::GaussQ>(b.images[i])).norm(), 1e-12)
          << inst.name;
  }
}

TEST(MatrixDump, HeaderAndEntries) {
  MatR m(2, 2);
  m << 1.0, -0.5, 0.0, 2.0;
  std::ostringstream os;
  kuga::write_matrix_dump(os, m);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "2 2 real");
  MatC c = MatC::Zero(1, 1);
  c(0, 0) = cd(0.0, 1.0);
  std::ostringstream oc;
  kuga::write_matrix_dump(oc, c);
  EXPECT_EQ(oc.str(), "1 1 complex\n0+1i\n");
}

}  // namespace
