#pragma once

// Symplectic realizations of every descriptor kind.
//
// A complex module W with invariant hermitian form h = diag(I_p', -I_q') is
// realized on R^{2 dim W}: writing a = (a_+, a_-) and u = (conj a_-, a_+), an
// element Y = [[Y11, Y12], [Y21, Y22]] acts by u -> P u + Q conj(u) with
// P = diag(conj Y22, Y11) and Q = [[0, conj Y21], [Y12, 0]].  In real
// coordinates x = (Re u, Im u) the standard form E0 = [[0, I], [-I, 0]] is
// preserved and J0 = [[0, -I], [I, 0]] is multiplication by i on u.  For
// q' = 0 this is the usual realification [[Re Y, -Im Y], [Im Y, Re Y]].

#include "kuga/lie.hpp"
#include "kuga/rules.hpp"

#include <Eigen/Sparse>

#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace kuga {

// ---------------------------------------------------------------------------
// Exterior powers

inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Induced derivation of X on the wedge basis e_I (I sorted, lexicographic).
template <class S>
Mat<S> wedge_derivation(const Mat<S>& x, int k) {
  const int n = static_cast<int>(x.rows());
  const auto subsets = k_subsets(n, k);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<int>(i);
  const int d = static_cast<int>(subsets.size());
  Mat<S> out = zeros<S>(d, d);
  for (int c = 0; c < d; ++c) {
    const auto& I = subsets[c];
    for (int t = 0; t < k; ++t) {
      const int i = I[t];
      for (int j = 0; j < n; ++j) {
        if (scalar_traits<S>::is_zero(x(j, i))) continue;
        if (j == i) {
          out(c, c) += x(i, i);
          continue;
        }
        if (std::find(I.begin(), I.end(), j) != I.end()) continue;
        std::vector<int> J = I;
        J[t] = j;
        int between = 0;
        for (int v : I)
          if (v != i && v > std::min(i, j) && v < std::max(i, j)) ++between;
        std::sort(J.begin(), J.end());
        const int r = index.at(J);
        if (between % 2 == 0) out(r, c) += x(j, i);
        else out(r, c) -= x(j, i);
      }
    }
  }
  return out;
}

/// Induced action of a group element on the wedge basis, by k x k minors.
inline MatC wedge_group(const MatC& g, int k) {
  const int n = static_cast<int>(g.rows());
  const auto subsets = k_subsets(n, k);
  const int d = static_cast<int>(subsets.size());
  MatC out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      MatC minor(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) minor(a, b) = g(subsets[r][a], subsets[c][b]);
      out(r, c) = k == 0 ? cd(1) : minor.determinant();
    }
  return out;
}

/// Signs of the induced hermitian form on the wedge basis.
inline std::vector<int> wedge_signs(const std::vector<int>& signs, int k) {
  std::vector<int> out;
  for (const auto& I : k_subsets(static_cast<int>(signs.size()), k)) {
    int s = 1;
    for (int v : I) s *= signs[v];
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford algebra

template <class S>
struct Pauli {
  static Mat<S> s1() {
    Mat<S> m = zeros<S>(2, 2);
    m(0, 1) = S(1);
    m(1, 0) = S(1);
    return m;
  }
  static Mat<S> s2() {
    Mat<S> m = zeros<S>(2, 2);
    m(0, 1) = scalar_traits<S>::imag_frac(-1, 1);
    m(1, 0) = scalar_traits<S>::imag_frac(1, 1);
    return m;
  }
  static Mat<S> s3() {
    Mat<S> m = zeros<S>(2, 2);
    m(0, 0) = S(1);
    m(1, 1) = S(-1);
    return m;
  }
};

/// Hermitian Euclidean gamma matrices for C^m, built as Pauli tensor
/// products; size 2^floor(m/2).
template <class S>
std::vector<Mat<S>> euclidean_gammas(int m) {
  const int r = m / 2;
  const auto chain = [&](int j, const Mat<S>& mid) {
    Mat<S> out = identity<S>(1);
    for (int t = 0; t < j; ++t) out = kron(out, Pauli<S>::s3());
    out = kron(out, mid);
    for (int t = j + 1; t < r; ++t) out = kron(out, identity<S>(2));
    return out;
  };
  std::vector<Mat<S>> g;
  for (int j = 0; j < r; ++j) {
    g.push_back(chain(j, Pauli<S>::s1()));
    g.push_back(chain(j, Pauli<S>::s2()));
  }
  if (m % 2 == 1) {
    Mat<S> c = identity<S>(1);
    for (int t = 0; t < r; ++t) c = kron(c, Pauli<S>::s3());
    g.push_back(c);
  }
  return g;
}

/// Diagonal of the chirality operator (a tensor power of sigma_3).
inline std::vector<int> chirality_diagonal(int m) {
  const int r = m / 2;
  std::vector<int> d(static_cast<std::size_t>(1) << r);
  for (std::size_t i = 0; i < d.size(); ++i) {
    int s = 1;
    for (int t = 0; t < r; ++t)
      if ((i >> t) & 1U) s = -s;
    d[i] = s;
  }
  return d;
}

/// Gamma matrices for eta = diag(+1^p, -1, -1) (or all +1 when compact):
/// spacelike gamma_a = Gamma_{a+2}, timelike i Gamma_0 and i Gamma_1.
template <class S>
std::vector<Mat<S>> signature_gammas(int p, bool compact) {
  const int m = p + 2;
  const auto e = euclidean_gammas<S>(m);
  if (compact) return e;
  std::vector<Mat<S>> g;
  for (int a = 0; a < p; ++a) g.push_back(e[a + 2]);
  g.push_back(scaled<S>(e[0], scalar_traits<S>::imag_frac(1, 1)));
  g.push_back(scaled<S>(e[1], scalar_traits<S>::imag_frac(1, 1)));
  return g;
}

// ---------------------------------------------------------------------------
// Realization

/// Complex module with diagonal hermitian form, basis ordered positive first.
template <class S>
struct ComplexModule {
  int dim = 0;
  int p_plus = 0;
  std::function<Mat<S>(const Mat<S>&)> act;
};

namespace detail {

template <class S>
ComplexModule<S> reorder_positive_first(int dim, const std::vector<int>& signs,
                                        std::function<Mat<S>(const Mat<S>&)> raw) {
  std::vector<int> order;
  for (int i = 0; i < dim; ++i)
    if (signs[i] > 0) order.push_back(i);
  const int p_plus = static_cast<int>(order.size());
  for (int i = 0; i < dim; ++i)
    if (signs[i] < 0) order.push_back(i);
  ComplexModule<S> m;
  m.dim = dim;
  m.p_plus = p_plus;
  m.act = [order, raw = std::move(raw)](const Mat<S>& x) {
    const Mat<S> y = raw(x);
    const Eigen::Index d = static_cast<Eigen::Index>(order.size());
    Mat<S> out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) out(r, c) = y(order[r], order[c]);
    return out;
  };
  return m;
}

}  // namespace detail

/// The real matrix of a module element (see the header comment).
template <class S>
Mat<S> block_realify(const Mat<S>& y, int p_plus) {
  using T = scalar_traits<S>;
  const Eigen::Index d = y.rows();
  const Eigen::Index p = p_plus;
  const Eigen::Index q = d - p;
  Mat<S> P = zeros<S>(d, d);
  Mat<S> Q = zeros<S>(d, d);
  P.topLeftCorner(q, q) = conj<S>(Mat<S>(y.bottomRightCorner(q, q)));
  P.bottomRightCorner(p, p) = y.topLeftCorner(p, p);
  Q.topRightCorner(q, p) = conj<S>(Mat<S>(y.bottomLeftCorner(q, p)));
  Q.bottomLeftCorner(p, q) = y.topRightCorner(p, q);
  Mat<S> r(2 * d, 2 * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const S a = P(i, j) + Q(i, j);
      const S b = P(i, j) - Q(i, j);
      r(i, j) = T::re(a);
      r(i, d + j) = S(0) - T::im(b);
      r(d + i, j) = T::im(a);
      r(d + i, d + j) = T::re(b);
    }
  return r;
}

template <class S>
struct RepRealization {
  LocalRepDescriptor descriptor;
  LieRealization<S> lie;
  int dim = 0;
  /// Complex dimension of the underlying module (0 for a real module).
  int module_dim = 0;
  int p_plus = 0;
  std::function<Mat<S>(const Mat<S>&)> drho;
  std::vector<Mat<S>> images;
  Mat<S> E0;
  Mat<S> J0;
  Mat<S> h_prime;
  /// H-bar_0 or H-tilde_0 on the defining module, for non-H2 type I kinds.
  std::optional<Mat<S>> extension_element;
  std::string extension_name;

  /// Element whose exponential at pi yields J0: H0 under H2, otherwise the
  /// unitary extension element.
  std::optional<Mat<S>> lemma_element() const {
    if (descriptor.h2 && lie.h_element) return lie.h_element;
    return extension_element;
  }
};

namespace detail {

template <class S>
ComplexModule<S> spin_module(const LieRealization<S>& lie, int which) {
  using T = scalar_traits<S>;
  const int p = lie.n;
  const bool compact = lie.compact;
  const int m = p + 2;
  auto gam = std::make_shared<std::vector<Mat<S>>>(signature_gammas<S>(p, compact));
  const int N = static_cast<int>((*gam)[0].rows());
  const auto eta = lie.eta;
  const auto pairs = lie.so_pairs;
  auto half = std::make_shared<std::vector<Mat<S>>>();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto [a, b] = pairs[t];
    half->push_back(scaled<S>(matmul<S>((*gam)[a], (*gam)[b]), T::frac(1, 2)));
  }
  std::function<Mat<S>(const Mat<S>&)> full = [half, pairs, eta, N](const Mat<S>& x) {
    Mat<S> out = zeros<S>(N, N);
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const auto [a, b] = pairs[t];
      S c = x(a, b);
      if (T::is_zero(c)) continue;
      if (eta[b] < 0) c = S(0) - c;
      out += scaled<S>((*half)[t], c);
    }
    return out;
  };
  std::vector<int> signs(N, 1);
  if (!compact) {
    const Mat<S> beta = matmul<S>((*gam)[p], (*gam)[p + 1]);
    const Mat<S> h = scaled<S>(beta, T::imag_frac(-1, 1));
    for (int i = 0; i < N; ++i) {
      const cd v = T::to_cd(h(i, i));
      if (std::abs(std::abs(v.real()) - 1.0) > 1e-12 || std::abs(v.imag()) > 1e-12)
        throw RealizationError("spinor hermitian form is not diagonal +-1");
      signs[i] = v.real() > 0 ? 1 : -1;
    }
  }
  if (which == 0) return reorder_positive_first<S>(N, signs, full);
  if (m % 2 != 0) throw RealizationError("half-spin module needs p even");
  const auto chir = chirality_diagonal(m);
  std::vector<int> keep;
  for (int i = 0; i < N; ++i)
    if (chir[i] == which) keep.push_back(i);
  std::vector<int> sub_signs;
  for (int i : keep) sub_signs.push_back(signs[i]);
  std::function<Mat<S>(const Mat<S>&)> restricted = [full, keep](const Mat<S>& x) {
    const Mat<S> y = full(x);
    const Eigen::Index d = static_cast<Eigen::Index>(keep.size());
    Mat<S> out(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) out(r, c) = y(keep[r], keep[c]);
    return out;
  };
  return reorder_positive_first<S>(static_cast<int>(keep.size()), sub_signs, restricted);
}

template <class S>
ComplexModule<S> wedge_module(const LieRealization<S>& lie, int k) {
  const std::vector<int> signs = wedge_signs(lie.signs, k);
  std::function<Mat<S>(const Mat<S>&)> raw = [k](const Mat<S>& x) { return wedge_derivation<S>(x, k); };
  return reorder_positive_first<S>(static_cast<int>(signs.size()), signs, raw);
}

}  // namespace detail

/// Realization of `d` on `lie`, which must be the real form d was described at.
template <class S>
RepRealization<S> build_drho(const LocalRepDescriptor& d, const LieRealization<S>& lie) {
  using T = scalar_traits<S>;
  if (lie.type != d.type || lie.n != d.n || lie.compact != d.form.compact)
    throw RealizationError("descriptor " + kind_string(d) + " does not match real form " + lie.name);
  RepRealization<S> r;
  r.descriptor = d;
  r.lie = lie;
  std::optional<ComplexModule<S>> module;
  switch (d.kind) {
    case RepKind::Std_III: {
      const int n = lie.n;
      r.dim = 2 * n;
      r.drho = [](const Mat<S>& x) { return x; };
      r.E0 = from_real<S>(standard_alternating(n));
      r.J0 = from_real<S>(standard_complex_structure(n));
      break;
    }
    case RepKind::StdPlusContra:
    case RepKind::Std2Copies_II:
      module = detail::wedge_module<S>(lie, 1);
      break;
    case RepKind::WedgePair:
    case RepKind::WedgeMiddleSingle:
    case RepKind::WedgeMiddleDouble:
      module = detail::wedge_module<S>(lie, d.tag.k);
      break;
    case RepKind::Spin_Single:
    case RepKind::Spin_Double:
      module = detail::spin_module<S>(lie, 0);
      break;
    case RepKind::HalfSpin:
    case RepKind::HalfSpinDouble:
    case RepKind::BothHalfSpins:
      module = detail::spin_module<S>(lie, d.tag.which);
      break;
    case RepKind::CompactArbitrary:
      if (d.tag.kind == RepTag::Kind::Wedge) module = detail::wedge_module<S>(lie, d.tag.k);
      else if (d.tag.kind == RepTag::Kind::Spin) module = detail::spin_module<S>(lie, 0);
      else module = detail::spin_module<S>(lie, d.tag.which);
      break;
    default:
      throw RealizationError("no construction for kind " + kind_name(d.kind));
  }
  if (module) {
    const ComplexModule<S> mod = *module;
    r.module_dim = mod.dim;
    r.p_plus = mod.p_plus;
    r.dim = 2 * mod.dim;
    r.drho = [mod](const Mat<S>& x) { return block_realify<S>(mod.act(x), mod.p_plus); };
    r.E0 = from_real<S>(standard_alternating(mod.dim));
    r.J0 = from_real<S>(standard_complex_structure(mod.dim));
  }
  if (r.dim != d.real_dim && d.kind != RepKind::Trivial)
    throw RealizationError("realized dimension " + std::to_string(r.dim) + " differs from descriptor dimension " +
                           std::to_string(d.real_dim));
  r.h_prime = scaled<S>(r.J0, T::frac(1, 2));
  for (const auto& b : lie.basis) r.images.push_back(r.drho(b));

  if (d.type == HermitianType::I && !d.form.compact) {
    const int p = d.form.p;
    const int q = d.form.q;
    const int n = p + q;
    if (d.kind == RepKind::StdPlusContra) {
      Mat<S> h = zeros<S>(n, n);
      for (int j = 0; j < n; ++j) h(j, j) = T::imag_frac(j < p ? 1 : -1, 2);
      r.extension_element = h;
      r.extension_name = "H-bar_0";
    } else if (q == 1) {
      const int k = d.tag.k;
      Mat<S> h = zeros<S>(n, n);
      for (int j = 0; j < p; ++j) h(j, j) = T::imag_frac(1, 2 * k);
      h(p, p) = T::imag_frac(1 - 2 * k, 2 * k);
      r.extension_element = h;
      r.extension_name = "H-tilde_0";
    }
  }
  return r;
}

template <class S>
RepRealization<S> realize(const LocalRepDescriptor& d) {
  return build_drho<S>(d, build_real_form<S>(d.type, d.n, d.form));
}

/// Spin realization of so(p,2) per the p mod 8 rule.
template <class S>
RepRealization<S> build_spin_rep(int p) {
  if (p < 1 || p == 2 || p > kSpinCap) throw RealizationError("spin construction needs 1 <= p <= 10, p != 2");
  const RealForm form{false, p, 2};
  const RepTag tag = p % 2 ? RepTag::spin() : RepTag::half_spin(1);
  return realize<S>(describe(HermitianType::IV, p, form, tag));
}

/// rho(exp x) = exp(d rho(x)), numerically.
template <class S>
MatR rho_of(const RepRealization<S>& r, const Mat<S>& x) {
  return expm(to_real<S>(r.drho(x)));
}

class NotCertifiedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// tau(g) = rho(g) J0 rho(g)^{-1} for g = exp(x); requires H1 certification.
template <class S>
MatR tau_at(const RepRealization<S>& r, const Mat<S>& x, bool h1_certified) {
  if (!h1_certified) throw NotCertifiedError("tau_at needs an H1-certified realization");
  const MatR g = rho_of(r, x);
  const MatR gi = expm(MatR(-to_real<S>(r.drho(x))));
  return g * to_real<S>(r.J0) * gi;
}

// ---------------------------------------------------------------------------
// Numerical residuals of a realization (always in floating point)

inline Eigen::SparseMatrix<double> to_sparse(const MatR& m) {
  return m.sparseView(0.0, 0.0);
}

struct RealizationResiduals {
  double closure = 0.0;
  double homomorphism = 0.0;
  double e_preservation = 0.0;
};

template <class S>
RealizationResiduals realization_residuals(const RepRealization<S>& r, bool with_closure = true) {
  RealizationResiduals out;
  if (with_closure) out.closure = closure_residual(r.lie);
  const std::size_t m = r.lie.basis.size();
  std::vector<MatC> b;
  std::vector<Eigen::SparseMatrix<double>> img;
  for (std::size_t i = 0; i < m; ++i) {
    const MatC bc = to_complex<S>(r.lie.basis[i]);
    const double nb = bc.norm();
    b.push_back(bc / nb);
    img.push_back(to_sparse(to_real<S>(r.images[i]) / nb));
  }
  const Eigen::SparseMatrix<double> E = to_sparse(to_real<S>(r.E0));
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::SparseMatrix<double> t = Eigen::SparseMatrix<double>(img[i].transpose()) * E + E * img[i];
    out.e_preservation = std::max(out.e_preservation, t.norm() / std::max(1.0, img[i].norm()));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const MatC c = b[i] * b[j] - b[j] * b[i];
      if (c.norm() == 0.0 && (img[i] * img[j] - img[j] * img[i]).norm() == 0.0) continue;
      Mat<S> cs;
      if constexpr (scalar_traits<S>::exact) {
        const Mat<S> bi = r.lie.basis[i];
        const Mat<S> bj = r.lie.basis[j];
        cs = commutator<S>(bi, bj);
      }
      MatR lhs;
      if constexpr (scalar_traits<S>::exact) {
        const double ni = to_complex<S>(r.lie.basis[i]).norm();
        const double nj = to_complex<S>(r.lie.basis[j]).norm();
        lhs = to_real<S>(r.drho(cs)) / (ni * nj);
      } else {
        lhs = to_real<S>(r.drho(c));
      }
      const Eigen::SparseMatrix<double> rhs = img[i] * img[j] - img[j] * img[i];
      const double scale = std::max(1.0, img[i].norm() * img[j].norm());
      out.homomorphism = std::max(out.homomorphism, (lhs - MatR(rhs)).norm() / scale);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix dump format: "rows cols field" then row-major entries a+bi.

inline std::string format_complex_entry(cd z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
  return buf;
}

inline void write_matrix_dump(std::ostream& os, const MatC& m) {
  const bool real = m.imag().isZero(0.0);
  os << m.rows() << " " << m.cols() << " " << (real ? "real" : "complex") << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_complex_entry(m(i, j));
    os << "\n";
  }
}

inline void write_matrix_dump(std::ostream& os, const MatR& m) { write_matrix_dump(os, MatC(m.cast<cd>())); }

}  // namespace kuga
