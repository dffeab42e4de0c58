#pragma once

// Matrix realizations of the real forms that occur: su(p,q), so*(2n),
// sp(2n,R), so(p,2) and their compact forms, each with its H-element.

#include "kuga/linalg.hpp"
#include "kuga/spec.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kuga {

template <class S>
struct LieRealization {
  HermitianType type = HermitianType::I;
  int n = 0;
  RealForm form;
  std::string name;
  /// Real basis of the real form, as matrices on the defining module.
  std::vector<Mat<S>> basis;
  /// Whether each basis element lies in the maximal compact subalgebra k.
  std::vector<bool> in_k;
  /// H-element; present iff the form is noncompact.
  std::optional<Mat<S>> h_element;
  /// Generators extending su(p,q) to u(p,q) (type I only).
  std::vector<Mat<S>> center_extension;
  int dim_V = 0;
  bool compact = false;
  /// Defining module is real with the standard alternating form (sp(2n,R)).
  bool real_module = false;
  /// Signature of the invariant hermitian form on the defining module
  /// (diagonal entries +1/-1); empty for a real module.
  std::vector<int> signs;
  /// so(p,2) and so(p+2): metric signs and the index pair of each basis element.
  std::vector<int> eta;
  std::vector<std::pair<int, int>> so_pairs;
};

namespace detail {

template <class S>
Mat<S> sym_unit(int n, int j, int k, const S& v) {
  Mat<S> m = zeros<S>(n, n);
  m(j, k) = v;
  m(k, j) = v;
  return m;
}

template <class S>
Mat<S> skew_unit(int n, int j, int k, const S& v) {
  Mat<S> m = zeros<S>(n, n);
  m(j, k) = v;
  m(k, j) = S(0) - v;
  return m;
}

}  // namespace detail

/// su(p,q) on C^{p+q} with h = diag(I_p, -I_q); q = 0 gives su(n).
template <class S>
LieRealization<S> build_su(int p, int q) {
  using T = scalar_traits<S>;
  const int n = p + q;
  LieRealization<S> L;
  L.type = HermitianType::I;
  L.n = n;
  L.form = {q == 0, p, q};
  L.name = q == 0 ? "su(" + std::to_string(n) + ")" : "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
  L.dim_V = n;
  L.compact = q == 0;
  const S i1 = T::imag_frac(1, 1);
  for (int j = 0; j + 1 < n; ++j) {
    Mat<S> d = zeros<S>(n, n);
    d(j, j) = i1;
    d(j + 1, j + 1) = S(0) - i1;
    L.basis.push_back(d);
    L.in_k.push_back(true);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const bool same_block = (j < p) == (k < p);
      if (same_block) {
        L.basis.push_back(detail::skew_unit<S>(n, j, k, S(1)));
        L.basis.push_back(detail::sym_unit<S>(n, j, k, i1));
      } else {
        L.basis.push_back(detail::sym_unit<S>(n, j, k, S(1)));
        Mat<S> m = zeros<S>(n, n);
        m(j, k) = i1;
        m(k, j) = S(0) - i1;
        L.basis.push_back(m);
      }
      L.in_k.push_back(same_block);
      L.in_k.push_back(same_block);
    }
  for (int j = 0; j < n; ++j) L.signs.push_back(j < p ? 1 : -1);
  if (q > 0) {
    Mat<S> h = zeros<S>(n, n);
    for (int j = 0; j < n; ++j) h(j, j) = j < p ? T::imag_frac(q, n) : T::imag_frac(-p, n);
    L.h_element = h;
  }
  Mat<S> c = zeros<S>(n, n);
  for (int j = 0; j < n; ++j) c(j, j) = i1;
  L.center_extension.push_back(c);
  return L;
}

/// so*(2n) = {[[Z1, Z2], [-conj Z2, conj Z1]]}: Z1 skew-hermitian, Z2 skew
/// symmetric.  It sits in su(n,n) for h = diag(I_n, -I_n).
template <class S>
LieRealization<S> build_so_star(int n) {
  using T = scalar_traits<S>;
  LieRealization<S> L;
  L.type = HermitianType::II;
  L.n = n;
  L.form = {false, 0, 0};
  L.name = "so*(" + std::to_string(2 * n) + ")";
  L.dim_V = 2 * n;
  const S i1 = T::imag_frac(1, 1);
  const auto embed_k = [&](const Mat<S>& z1) {
    Mat<S> m = zeros<S>(2 * n, 2 * n);
    m.topLeftCorner(n, n) = z1;
    m.bottomRightCorner(n, n) = conj<S>(z1);
    return m;
  };
  const auto embed_p = [&](const Mat<S>& z2) {
    Mat<S> m = zeros<S>(2 * n, 2 * n);
    m.topRightCorner(n, n) = z2;
    Mat<S> c = conj<S>(z2);
    for (Eigen::Index a = 0; a < c.size(); ++a) c.data()[a] = S(0) - c.data()[a];
    m.bottomLeftCorner(n, n) = c;
    return m;
  };
  for (int j = 0; j < n; ++j) {
    L.basis.push_back(embed_k(unit<S>(n, j, j, i1)));
    L.in_k.push_back(true);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      L.basis.push_back(embed_k(detail::skew_unit<S>(n, j, k, S(1))));
      L.basis.push_back(embed_k(detail::sym_unit<S>(n, j, k, i1)));
      L.in_k.push_back(true);
      L.in_k.push_back(true);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      L.basis.push_back(embed_p(detail::skew_unit<S>(n, j, k, S(1))));
      L.basis.push_back(embed_p(detail::skew_unit<S>(n, j, k, i1)));
      L.in_k.push_back(false);
      L.in_k.push_back(false);
    }
  for (int j = 0; j < 2 * n; ++j) L.signs.push_back(j < n ? 1 : -1);
  Mat<S> h = zeros<S>(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j) h(j, j) = T::imag_frac(j < n ? 1 : -1, 2);
  L.h_element = h;
  return L;
}

/// so(m) by real skew matrices, acting on C^m.
template <class S>
LieRealization<S> build_so_compact(int m, HermitianType type, int n) {
  LieRealization<S> L;
  L.type = type;
  L.n = n;
  L.form = {true, type == HermitianType::IV ? m : 0, 0};
  L.name = "so(" + std::to_string(m) + ")";
  L.dim_V = m;
  L.compact = true;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      L.basis.push_back(detail::skew_unit<S>(m, a, b, S(1)));
      L.in_k.push_back(true);
      L.so_pairs.emplace_back(a, b);
    }
  L.eta.assign(m, 1);
  L.signs.assign(m, 1);
  return L;
}

/// sp(2n,R) preserving [[0, I], [-I, 0]], with k = u(n) and H0 = J0 / 2.
template <class S>
LieRealization<S> build_sp_real(int n) {
  LieRealization<S> L;
  L.type = HermitianType::III;
  L.n = n;
  L.form = {false, 0, 0};
  L.name = "sp(" + std::to_string(2 * n) + ",R)";
  L.dim_V = 2 * n;
  L.real_module = true;
  const auto block = [&](const Mat<S>& a, const Mat<S>& b, bool compact_part) {
    Mat<S> m = zeros<S>(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    if (compact_part) {
      m.bottomLeftCorner(n, n) = Mat<S>(zeros<S>(n, n) - b);
      m.bottomRightCorner(n, n) = a;
    } else {
      m.bottomLeftCorner(n, n) = b;
      m.bottomRightCorner(n, n) = Mat<S>(zeros<S>(n, n) - a);
    }
    return m;
  };
  const Mat<S> z = zeros<S>(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      L.basis.push_back(block(detail::skew_unit<S>(n, j, k, S(1)), z, true));
      L.in_k.push_back(true);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      L.basis.push_back(block(z, detail::sym_unit<S>(n, j, k, S(1)), true));
      L.in_k.push_back(true);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      L.basis.push_back(block(detail::sym_unit<S>(n, j, k, S(1)), z, false));
      L.basis.push_back(block(z, detail::sym_unit<S>(n, j, k, S(1)), false));
      L.in_k.push_back(false);
      L.in_k.push_back(false);
    }
  Mat<S> h = zeros<S>(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    h(j, n + j) = scalar_traits<S>::frac(-1, 2);
    h(n + j, j) = scalar_traits<S>::frac(1, 2);
  }
  L.h_element = h;
  return L;
}

/// sp(n) = sp(2n,C) cap u(2n): [[A, B], [-conj B, conj A]] with A
/// skew-hermitian and B complex symmetric.
template <class S>
LieRealization<S> build_sp_compact(int n) {
  using T = scalar_traits<S>;
  LieRealization<S> L;
  L.type = HermitianType::III;
  L.n = n;
  L.form = {true, 0, 0};
  L.name = "sp(" + std::to_string(n) + ")";
  L.dim_V = 2 * n;
  L.compact = true;
  const S i1 = T::imag_frac(1, 1);
  const auto block = [&](const Mat<S>& a, const Mat<S>& b) {
    Mat<S> m = zeros<S>(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    Mat<S> cb = conj<S>(b);
    for (Eigen::Index t = 0; t < cb.size(); ++t) cb.data()[t] = S(0) - cb.data()[t];
    m.bottomLeftCorner(n, n) = cb;
    m.bottomRightCorner(n, n) = conj<S>(a);
    return m;
  };
  const Mat<S> z = zeros<S>(n, n);
  for (int j = 0; j < n; ++j) L.basis.push_back(block(unit<S>(n, j, j, i1), z));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      L.basis.push_back(block(detail::skew_unit<S>(n, j, k, S(1)), z));
      L.basis.push_back(block(detail::sym_unit<S>(n, j, k, i1), z));
    }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      L.basis.push_back(block(z, detail::sym_unit<S>(n, j, k, S(1))));
      L.basis.push_back(block(z, detail::sym_unit<S>(n, j, k, i1)));
    }
  L.in_k.assign(L.basis.size(), true);
  L.signs.assign(2 * n, 1);
  return L;
}

/// so(p,2) for eta = diag(+1^p, -1, -1), basis L_ab = E_ab eta_b - E_ba eta_a,
/// H-element L_{p,p+1}.
template <class S>
LieRealization<S> build_so_p2(int p) {
  LieRealization<S> L;
  const int m = p + 2;
  L.type = HermitianType::IV;
  L.n = p;
  L.form = {false, p, 2};
  L.name = "so(" + std::to_string(p) + ",2)";
  L.dim_V = m;
  for (int a = 0; a < m; ++a) L.eta.push_back(a < p ? 1 : -1);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Mat<S> x = zeros<S>(m, m);
      x(a, b) = S(L.eta[b]);
      x(b, a) = S(-L.eta[a]);
      L.basis.push_back(x);
      L.in_k.push_back(L.eta[a] == L.eta[b]);
      L.so_pairs.emplace_back(a, b);
    }
  Mat<S> h = zeros<S>(m, m);
  h(p, p + 1) = S(-1);
  h(p + 1, p) = S(1);
  L.h_element = h;
  return L;
}

class RealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real form of a factor at a real form descriptor.
template <class S>
LieRealization<S> build_real_form(HermitianType type, int n, const RealForm& form) {
  switch (type) {
    case HermitianType::I:
      if (form.compact) return build_su<S>(n, 0);
      if (form.p + form.q != n || form.q < 1) throw RealizationError("unsupported signature for su(p,q)");
      return build_su<S>(form.p, form.q);
    case HermitianType::II:
      if (form.compact) return build_so_compact<S>(2 * n, HermitianType::II, n);
      return build_so_star<S>(n);
    case HermitianType::III:
      if (form.compact) return build_sp_compact<S>(n);
      return build_sp_real<S>(n);
    case HermitianType::IV:
      if (form.compact) return build_so_compact<S>(n + 2, HermitianType::IV, n);
      return build_so_p2<S>(n);
  }
  throw RealizationError("unknown type");
}

template <class S>
LieRealization<S> build_real_form(const FactorSpec& f, const std::string& embedding) {
  return build_real_form<S>(f.type, f.n, f.signature.at(embedding));
}

/// Dimension of the real form by the closed formulas.
inline int expected_lie_dim(HermitianType type, int n) {
  switch (type) {
    case HermitianType::I: return n * n - 1;
    case HermitianType::II: return n * (2 * n - 1);
    case HermitianType::III: return n * (2 * n + 1);
    case HermitianType::IV: return (n + 2) * (n + 1) / 2;
  }
  return 0;
}

/// Largest residual of [b_i, b_j] against the real span of the unit-scaled
/// basis.
template <class S>
double closure_residual(const LieRealization<S>& L) {
  const std::size_t m = L.basis.size();
  if (m == 0) return 0.0;
  const Eigen::Index d = L.dim_V;
  std::vector<MatC> b;
  for (const auto& x : L.basis) {
    MatC c = to_complex<S>(x);
    b.push_back(c / c.norm());
  }
  MatR A(2 * d * d, static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    Eigen::Map<const Eigen::VectorXcd> v(b[j].data(), d * d);
    A.col(static_cast<Eigen::Index>(j)) << v.real(), v.imag();
  }
  Eigen::ColPivHouseholderQR<MatR> qr(A);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      MatC c = b[i] * b[j] - b[j] * b[i];
      Eigen::Map<const Eigen::VectorXcd> v(c.data(), d * d);
      VecR rhs(2 * d * d);
      rhs << v.real(), v.imag();
      const VecR coef = qr.solve(rhs);
      worst = std::max(worst, (A * coef - rhs).norm());
    }
  return worst;
}

/// Largest ||[H0, x]|| over unit-scaled basis elements of k.
template <class S>
double h_element_centrality(const LieRealization<S>& L) {
  if (!L.h_element) return 0.0;
  const MatC h = to_complex<S>(*L.h_element);
  double worst = 0.0;
  for (std::size_t i = 0; i < L.basis.size(); ++i) {
    if (!L.in_k[i]) continue;
    MatC x = to_complex<S>(L.basis[i]);
    x /= x.norm();
    worst = std::max(worst, (h * x - x * h).norm());
  }
  return worst;
}

}  // namespace kuga
