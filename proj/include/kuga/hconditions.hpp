#pragma once

// H1 and H2 certificates and the exponential identity J0 = rho(exp(pi H)).

#include "kuga/realize.hpp"

#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace kuga {

struct Tolerances {
  double pass = 1e-9;
  double fail_witness = 1e-3;

  /// Defaults, with the pass tolerance taken from KUGA_TOLERANCE when set.
  static Tolerances from_env() {
    Tolerances t;
    if (const char* v = std::getenv("KUGA_TOLERANCE")) {
      char* end = nullptr;
      const double x = std::strtod(v, &end);
      if (end != v && *end == '\0' && x > 0.0 && x < t.fail_witness) t.pass = x;
    }
    return t;
  }
};

enum class Verdict { Pass, Fail, DeadZone };

inline Verdict classify_residual(double r, const Tolerances& tol) {
  if (r <= tol.pass) return Verdict::Pass;
  if (r >= tol.fail_witness) return Verdict::Fail;
  return Verdict::DeadZone;
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::DeadZone: return "dead-zone";
  }
  return "?";
}

class CompactFactorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoLemmaRouteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class S>
Mat<S> h_defect(const RepRealization<S>& r) {
  if (!r.lie.h_element) throw CompactFactorError("H-conditions need a noncompact factor, got " + r.lie.name);
  return r.drho(*r.lie.h_element) - r.h_prime;
}

}  // namespace detail

/// max over basis g of ||[d rho(H0) - H'0, d rho(g)]|| / ||d rho(g)||.
template <class S>
double check_h1(const RepRealization<S>& r) {
  const Mat<S> d = detail::h_defect(r);
  double worst = 0.0;
  for (const auto& img : r.images) {
    const auto den = frob2<S>(img);
    if (den == decltype(den)(0)) continue;
    worst = std::max(worst, ratio_of_norms(frob2<S>(commutator<S>(d, img)), den));
  }
  return worst;
}

/// Variant with an explicit target H-element, for perturbation studies.
template <class S>
double check_h1_against(const RepRealization<S>& r, const Mat<S>& h_prime) {
  RepRealization<S> t = r;
  t.h_prime = h_prime;
  return check_h1(t);
}

/// ||d rho(H0) - H'0|| (absolute Frobenius norm).
template <class S>
double check_h2(const RepRealization<S>& r) {
  return frob<S>(detail::h_defect(r));
}

/// ||exp(pi d rho(H)) - J0|| with H = H0 under H2, else the unitary extension.
template <class S>
double check_lemma_exp(const RepRealization<S>& r) {
  const auto h = r.lemma_element();
  if (!h) throw NoLemmaRouteError("no H2 and no unitary extension for " + kind_string(r.descriptor));
  const MatR a = std::numbers::pi * to_real<S>(r.drho(*h));
  return (expm(a) - to_real<S>(r.J0)).norm();
}

struct HCertificate {
  double h1_residual = 0.0;
  double h2_residual = 0.0;
  bool h2_expected = false;
  std::optional<double> lemma_exp_residual;
  std::string lemma_route;
  double tolerance = 1e-9;
  Verdict h1 = Verdict::Pass;
  Verdict h2 = Verdict::Pass;
  Verdict lemma = Verdict::Pass;

  bool dead_zone() const {
    return h1 == Verdict::DeadZone || h2 == Verdict::DeadZone || lemma == Verdict::DeadZone;
  }
  /// H1 holds, H2 matches the table flag, and the lemma identity holds.
  bool pass() const {
    const bool h2_ok = h2_expected ? h2 == Verdict::Pass : h2 == Verdict::Fail;
    return h1 == Verdict::Pass && h2_ok && lemma == Verdict::Pass;
  }
};

template <class S>
HCertificate certify(const RepRealization<S>& r, const Tolerances& tol) {
  HCertificate c;
  c.tolerance = tol.pass;
  c.h2_expected = r.descriptor.h2;
  c.h1_residual = check_h1(r);
  c.h2_residual = check_h2(r);
  c.h1 = classify_residual(c.h1_residual, tol);
  c.h2 = classify_residual(c.h2_residual, tol);
  if (r.lemma_element()) {
    c.lemma_exp_residual = check_lemma_exp(r);
    c.lemma_route = (r.descriptor.h2 && r.lie.h_element) ? "H0" : r.extension_name;
    c.lemma = classify_residual(*c.lemma_exp_residual, tol);
  } else {
    c.lemma_route = "none";
    c.lemma = Verdict::Fail;
  }
  return c;
}

/// The wedge identity on C^{p+1}: the k-th exterior power of H-tilde_0 equals
/// diag((i/2) I_{C(p,k)}, (-i/2) I_{C(p,k-1)}) in the positive-first basis.
/// Returns the Frobenius residual (exactly 0 in exact mode when it holds).
template <class S>
double wedge_h_tilde_identity_residual(int p, int k) {
  using T = scalar_traits<S>;
  const auto lie = build_real_form<S>(HermitianType::I, p + 1, RealForm{false, p, 1});
  Mat<S> h = zeros<S>(p + 1, p + 1);
  for (int j = 0; j < p; ++j) h(j, j) = T::imag_frac(1, 2 * k);
  h(p, p) = T::imag_frac(1 - 2 * k, 2 * k);
  const auto mod = detail::wedge_module<S>(lie, k);
  const Mat<S> w = mod.act(h);
  const int pp = static_cast<int>(binomial(p, k));
  const int qq = static_cast<int>(binomial(p, k - 1));
  if (mod.p_plus != pp || mod.dim != pp + qq) return std::numeric_limits<double>::infinity();
  Mat<S> expect = zeros<S>(pp + qq, pp + qq);
  for (int j = 0; j < pp + qq; ++j) expect(j, j) = T::imag_frac(j < pp ? 1 : -1, 2);
  return frob<S>(Mat<S>(w - expect));
}

}  // namespace kuga
