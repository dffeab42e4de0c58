#pragma once

// Dense linear algebra shared by every module: the exact Gaussian-rational
// scalar, scalar-generic helpers, Kronecker products, Frobenius norms and the
// matrix exponential.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace kuga {

using cd = std::complex<double>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using MatC = Mat<cd>;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

using BigInt = boost::multiprecision::checked_int128_t;
/// Overflow-checked rational; arithmetic past 128 bits throws std::overflow_error.
using Rational = boost::rational<BigInt>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Element of Q(i). Every matrix the type I/II/III/IV constructions produce
/// has entries in this field, so identities can be checked with no rounding.
struct GaussQ {
  Rational re{0};
  Rational im{0};

  GaussQ() = default;
  GaussQ(int v) : re(v) {}  // NOLINT(google-explicit-constructor): Eigen needs it
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  GaussQ& operator+=(const GaussQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussQ& operator-=(const GaussQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussQ& operator*=(const GaussQ& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussQ& operator/=(const GaussQ& o) {
    const Rational d = o.re * o.re + o.im * o.im;
    if (d.numerator() == 0) throw std::domain_error("GaussQ: division by zero");
    Rational r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend GaussQ operator-(const GaussQ& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  bool is_zero() const { return re.numerator() == 0 && im.numerator() == 0; }
  Rational norm2() const { return re * re + im * im; }

  friend std::ostream& operator<<(std::ostream& os, const GaussQ& z) {
    return os << z.re << (z.im.numerator() < 0 ? "-" : "+") << boost::abs(z.im) << "i";
  }
};

}  // namespace kuga

namespace Eigen {
template <>
struct NumTraits<kuga::GaussQ> : GenericNumTraits<kuga::GaussQ> {
  using Real = kuga::GaussQ;
  using NonInteger = kuga::GaussQ;
  using Nested = kuga::GaussQ;
  using Literal = kuga::GaussQ;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace kuga {

/// Scalar-generic operations used by the templated constructions.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<cd> {
  static constexpr bool exact = false;
  static cd frac(long long n, long long d) { return {double(n) / double(d), 0.0}; }
  static cd imag_frac(long long n, long long d) { return {0.0, double(n) / double(d)}; }
  static cd conj(const cd& z) { return std::conj(z); }
  static cd re(const cd& z) { return {z.real(), 0.0}; }
  static cd im(const cd& z) { return {z.imag(), 0.0}; }
  static bool is_zero(const cd& z) { return z == cd{}; }
  static cd to_cd(const cd& z) { return z; }
  static double abs2(const cd& z) { return std::norm(z); }
};

template <>
struct scalar_traits<GaussQ> {
  static constexpr bool exact = true;
  static GaussQ frac(long long n, long long d) { return {Rational(n, d), Rational(0)}; }
  static GaussQ imag_frac(long long n, long long d) { return {Rational(0), Rational(n, d)}; }
  static GaussQ conj(const GaussQ& z) { return {z.re, -z.im}; }
  static GaussQ re(const GaussQ& z) { return {z.re, Rational(0)}; }
  static GaussQ im(const GaussQ& z) { return {z.im, Rational(0)}; }
  static bool is_zero(const GaussQ& z) { return z.is_zero(); }
  static cd to_cd(const GaussQ& z) { return {to_double(z.re), to_double(z.im)}; }
  static double abs2(const GaussQ& z) { return to_double(z.norm2()); }
};

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
  Mat<S> m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = S(0);
  return m;
}

template <class S>
Mat<S> identity(Eigen::Index n) {
  Mat<S> m = zeros<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

/// Unit matrix E_ij.
template <class S>
Mat<S> unit(Eigen::Index n, Eigen::Index i, Eigen::Index j, S value = S(1)) {
  Mat<S> m = zeros<S>(n, n);
  m(i, j) = value;
  return m;
}

template <class S>
Mat<S> conj(const Mat<S>& a) {
  Mat<S> r(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = scalar_traits<S>::conj(a(i, j));
  return r;
}

template <class S>
Mat<S> adjoint(const Mat<S>& a) {
  return conj<S>(a).transpose();
}

/// Product that skips structural zeros in the exact path.
template <class S>
Mat<S> matmul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  if constexpr (!scalar_traits<S>::exact) {
    return a * b;
  } else {
    Mat<S> r = zeros<S>(a.rows(), b.cols());
    std::vector<std::vector<std::pair<Eigen::Index, const S*>>> rows_of_b(b.rows());
    for (Eigen::Index k = 0; k < b.rows(); ++k)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) rows_of_b[k].emplace_back(j, &b(k, j));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero()) continue;
        for (const auto& [j, v] : rows_of_b[k]) r(i, j) += a(i, k) * *v;
      }
    return r;
  }
}

template <class S>
Mat<S> commutator(const Mat<S>& a, const Mat<S>& b) {
  return matmul<S>(a, b) - matmul<S>(b, a);
}

template <class S>
Mat<S> scaled(const Mat<S>& a, const S& s) {
  Mat<S> r = a;
  for (Eigen::Index j = 0; j < r.cols(); ++j)
    for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, j) *= s;
  return r;
}

/// Squared Frobenius norm, exact for GaussQ.
template <class S>
auto frob2(const Mat<S>& a) {
  if constexpr (!scalar_traits<S>::exact) {
    return a.squaredNorm();
  } else {
    Rational s(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (!a(i, j).is_zero()) s += a(i, j).norm2();
    return s;
  }
}

template <class S>
double frob(const Mat<S>& a) {
  if constexpr (!scalar_traits<S>::exact) {
    return a.norm();
  } else {
    return std::sqrt(to_double(frob2<S>(a)));
  }
}

/// sqrt(num)/sqrt(den) for squared norms; exact zero stays zero.
template <class T>
double ratio_of_norms(const T& num2, const T& den2) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (num2.numerator() == 0) return 0.0;
    return std::sqrt(to_double(num2 / den2));
  } else {
    if (num2 == 0) return 0.0;
    return std::sqrt(num2 / den2);
  }
}

template <class S>
MatC to_complex(const Mat<S>& a) {
  if constexpr (std::is_same_v<S, cd>) {
    return a;
  } else {
    MatC r(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = scalar_traits<S>::to_cd(a(i, j));
    return r;
  }
}

/// Real part of a matrix whose imaginary part is known to vanish.
template <class S>
MatR to_real(const Mat<S>& a) {
  return to_complex<S>(a).real();
}

template <class S>
Mat<S> from_real(const MatR& a) {
  Mat<S> r(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) r(i, j) = S(a(i, j));
  return r;
}

template <class Derived1, class Derived2>
auto kron(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Mat<Scalar> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

/// Kronecker product of a list, left to right.
inline MatR kron_all(std::span<const MatR> factors) {
  MatR r = MatR::Identity(1, 1);
  for (const auto& f : factors) r = kron(r, f);
  return r;
}

/// The standard alternating form [[0, I], [-I, 0]] on R^{2m}.
inline MatR standard_alternating(Eigen::Index m) {
  MatR e = MatR::Zero(2 * m, 2 * m);
  e.block(0, m, m, m) = MatR::Identity(m, m);
  e.block(m, 0, m, m) = -MatR::Identity(m, m);
  return e;
}

/// The base-point complex structure [[0, -I], [I, 0]]; E0 * J0 = I.
inline MatR standard_complex_structure(Eigen::Index m) {
  return -standard_alternating(m);
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace detail {

template <class M>
double one_norm(const M& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant (Higham 2005), with the lower-degree approximants used when
/// the 1-norm is small enough.
template <class M>
typename M::PlainObject expm(const M& a_in) {
  using Plain = typename M::PlainObject;
  const Eigen::Index n = a_in.rows();
  if (n != a_in.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (n == 0) return Plain(0, 0);
  const Plain id = Plain::Identity(n, n);
  const double norm = detail::one_norm(a_in);

  auto pade_solve = [&](const Plain& u, const Plain& v) -> Plain {
    return (v - u).partialPivLu().solve(v + u);
  };

  static constexpr double theta3 = 1.495585217958292e-2;
  static constexpr double theta5 = 2.539398330063230e-1;
  static constexpr double theta7 = 9.504178996162932e-1;
  static constexpr double theta9 = 2.097847961257068e0;
  static constexpr double theta13 = 5.371920351148152e0;

  if (norm <= theta9) {
    const Plain a2 = a_in * a_in;
    if (norm <= theta3) {
      const double b[] = {120., 60., 12., 1.};
      const Plain u = a_in * (b[3] * a2 + b[1] * id);
      const Plain v = b[2] * a2 + b[0] * id;
      return pade_solve(u, v);
    }
    const Plain a4 = a2 * a2;
    if (norm <= theta5) {
      const double b[] = {30240., 15120., 3360., 420., 30., 1.};
      const Plain u = a_in * (b[5] * a4 + b[3] * a2 + b[1] * id);
      const Plain v = b[4] * a4 + b[2] * a2 + b[0] * id;
      return pade_solve(u, v);
    }
    const Plain a6 = a4 * a2;
    if (norm <= theta7) {
      const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
      const Plain u = a_in * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      const Plain v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return pade_solve(u, v);
    }
    const Plain a8 = a6 * a2;
    const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                        2162160.,     110880.,     3960.,       90.,         1.};
    const Plain u = a_in * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Plain v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
  }

  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  const Plain a = a_in / std::ldexp(1.0, squarings);
  const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                      1187353796428800.,  129060195264000.,   10559470521600.,
                      670442572800.,      33522128640.,       1323241920.,
                      40840800.,          960960.,            16380.,
                      182.,               1.};
  const Plain a2 = a * a;
  const Plain a4 = a2 * a2;
  const Plain a6 = a4 * a2;
  const Plain u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Plain v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Plain r = pade_solve(u, v);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

/// Smallest eigenvalue of the symmetric part of `a`.
inline double min_symmetric_eigenvalue(const MatR& a) {
  if (a.rows() == 0) return std::numeric_limits<double>::infinity();
  const MatR s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<MatR> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Orthonormal basis (columns) of the null space of `a`, by SVD with a
/// relative singular-value cutoff.
inline MatR nullspace(const MatR& a, double rel_tol = 1e-10) {
  if (a.rows() == 0) return MatR::Identity(a.cols(), a.cols());
  Eigen::BDCSVD<MatR> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace kuga
