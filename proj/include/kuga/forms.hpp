#pragma once

// Invariant symmetric forms, the tensor alternating form and complex
// structure of each Galois block, block assembly and the positivity scaling.

#include "kuga/hconditions.hpp"
#include "kuga/rules.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuga {

using SpMat = Eigen::SparseMatrix<double>;

class NoInvariantFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScalingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvariantSymmetricForm {
  MatR gamma;
  std::string embedding;
  /// Dimension of the space of invariant symmetric forms.
  int solution_dim = 0;
  double invariance_residual = 0.0;
  double min_eigenvalue = 0.0;
  /// "projection" or "sampled".
  std::string selection;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Symmetric matrix from scaled coordinates (off-diagonal y = sqrt2 * Gamma).
inline MatR unpack_symmetric(const VecR& y, int d) {
  MatR g(d, d);
  int u = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b, ++u) {
      const double v = a == b ? y(u) : y(u) / std::numbers::sqrt2;
      g(a, b) = v;
      g(b, a) = v;
    }
  return g;
}

inline double max_invariance_residual(const std::vector<MatR>& gens, const MatR& g) {
  double worst = 0.0;
  for (const auto& x : gens) {
    const double nx = x.norm();
    if (nx == 0.0) continue;
    worst = std::max(worst, (x.transpose() * g + g * x).norm() / (nx * std::max(1.0, g.norm())));
  }
  return worst;
}

}  // namespace detail

/// Orthonormal basis (scaled coordinates) of the symmetric Gamma with
/// X^T Gamma + Gamma X = 0 for every generator X.  The system splits into
/// connected components of unknowns, each solved by a dense eigen-decomposition
/// of its normal matrix.
inline MatR invariant_symmetric_basis(const std::vector<MatR>& gens, int d) {
  const int nu = d * (d + 1) / 2;
  std::vector<int> base(d);
  for (int a = 0, u = 0; a < d; ++a) {
    base[a] = u - a;
    u += d - a;
  }
  const auto idx = [&](int a, int b) { return a <= b ? base[a] + b : base[b] + a; };
  const auto scale = [](int a, int b) { return a == b ? 1.0 : 1.0 / std::numbers::sqrt2; };

  struct Row {
    std::vector<std::pair<int, double>> terms;
  };
  std::vector<Row> rows;
  detail::UnionFind uf(nu);
  for (const auto& x0 : gens) {
    const double nx = x0.norm();
    if (nx == 0.0) continue;
    const MatR x = x0 / nx;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        std::map<int, double> acc;
        for (int c = 0; c < d; ++c) {
          if (x(c, a) != 0.0) acc[idx(c, b)] += x(c, a) * scale(c, b);
          if (x(c, b) != 0.0) acc[idx(a, c)] += x(c, b) * scale(a, c);
        }
        Row r;
        for (const auto& [u, v] : acc)
          if (v != 0.0) r.terms.emplace_back(u, v);
        if (r.terms.empty()) continue;
        for (std::size_t t = 1; t < r.terms.size(); ++t) uf.unite(r.terms[0].first, r.terms[t].first);
        rows.push_back(std::move(r));
      }
  }
  std::map<int, std::vector<int>> comp_unknowns;
  for (int u = 0; u < nu; ++u) comp_unknowns[uf.find(u)].push_back(u);
  std::map<int, std::vector<const Row*>> comp_rows;
  for (const auto& r : rows) comp_rows[uf.find(r.terms[0].first)].push_back(&r);

  std::vector<VecR> null;
  for (const auto& [root, unknowns] : comp_unknowns) {
    const int m = static_cast<int>(unknowns.size());
    std::map<int, int> local;
    for (int i = 0; i < m; ++i) local[unknowns[i]] = i;
    const auto it = comp_rows.find(root);
    if (it == comp_rows.end()) {
      for (int u : unknowns) {
        VecR v = VecR::Zero(nu);
        v(u) = 1.0;
        null.push_back(v);
      }
      continue;
    }
    SpMat A(static_cast<Eigen::Index>(it->second.size()), m);
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t r = 0; r < it->second.size(); ++r)
      for (const auto& [u, v] : it->second[r]->terms) trips.emplace_back(static_cast<int>(r), local[u], v);
    A.setFromTriplets(trips.begin(), trips.end());
    const MatR ata = MatR(SpMat(A.transpose() * A));
    Eigen::SelfAdjointEigenSolver<MatR> es(ata);
    const VecR& ev = es.eigenvalues();
    const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int j = 0; j < m; ++j) {
      if (ev(j) > 1e-10 * top) break;
      VecR v = VecR::Zero(nu);
      for (int i = 0; i < m; ++i) v(unknowns[i]) = es.eigenvectors()(i, j);
      null.push_back(v);
    }
  }
  MatR basis(nu, static_cast<Eigen::Index>(null.size()));
  for (std::size_t j = 0; j < null.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = null[j];
  return basis;
}

/// A positive definite invariant symmetric form: the orthogonal projection
/// of I onto the solution space, else a deterministic sample of positive
/// combinations of the basis.
inline InvariantSymmetricForm solve_invariant_form(const std::vector<MatR>& gens, int d, std::string embedding = {}) {
  InvariantSymmetricForm out;
  out.embedding = std::move(embedding);
  const MatR basis = invariant_symmetric_basis(gens, d);
  out.solution_dim = static_cast<int>(basis.cols());
  if (basis.cols() == 0) throw NoInvariantFormError("no invariant symmetric form at " + out.embedding);
  VecR yi = VecR::Zero(basis.rows());
  for (int a = 0, u = 0; a < d; ++a) {
    yi(u) = 1.0;
    u += d - a;
  }
  const auto accept = [&](const MatR& g, const char* how) {
    const double mn = min_symmetric_eigenvalue(g);
    if (mn <= 1e-12 * std::max(1.0, g.norm())) return false;
    out.gamma = g;
    out.min_eigenvalue = mn;
    out.selection = how;
    out.invariance_residual = detail::max_invariance_residual(gens, g);
    return true;
  };
  if (accept(detail::unpack_symmetric(basis * (basis.transpose() * yi), d), "projection")) return out;
  std::mt19937_64 rng(0x6b756761);
  std::uniform_real_distribution<double> coef(0.0, 1.0);
  for (int trial = 0; trial < 256; ++trial) {
    VecR w(basis.cols());
    for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = coef(rng) * (trial % 2 ? 1.0 : -1.0);
    MatR g = detail::unpack_symmetric(basis * w, d);
    if (accept(g, "sampled")) return out;
    if (accept(MatR(-g), "sampled")) return out;
  }
  throw NoInvariantFormError("no positive definite invariant symmetric form at " + out.embedding);
}

/// Invariant form for one leg: invariance under the full image at compact
/// embeddings, and under k (together with the centre of u(p,q) for type I)
/// at noncompact ones, where no positive definite G-invariant form exists.
template <class S>
InvariantSymmetricForm solve_invariant_form(const RepRealization<S>& r, std::string embedding = {}) {
  std::vector<MatR> gens;
  for (std::size_t i = 0; i < r.images.size(); ++i)
    if (r.lie.compact || r.lie.in_k[i]) gens.push_back(to_real<S>(r.images[i]));
  if (!r.lie.compact)
    for (const auto& z : r.lie.center_extension) gens.push_back(to_real<S>(r.drho(z)));
  return solve_invariant_form(gens, r.dim, std::move(embedding));
}

/// ||J^T gamma J - gamma|| relative to ||gamma||.
inline double j_invariance_residual(const MatR& gamma, const MatR& j) {
  return (j.transpose() * gamma * j - gamma).norm() / std::max(1.0, gamma.norm());
}

/// ||gamma J + (gamma J)^T|| relative to ||gamma||: gamma(x, Jy) + gamma(y, Jx) = 0.
inline double j_skew_residual(const MatR& gamma, const MatR& j) {
  const MatR gj = gamma * j;
  return (gj + gj.transpose()).norm() / std::max(1.0, gamma.norm());
}

// ---------------------------------------------------------------------------
// Tensor blocks

/// One tensor factor of a block: E at the distinguished leg, gamma elsewhere.
struct TensorLeg {
  MatR form;
  MatR complex_structure;  // J0 at the distinguished leg, identity elsewhere
  bool distinguished = false;
};

inline MatR kron_list(const std::vector<MatR>& fs) {
  MatR r = MatR::Identity(1, 1);
  for (const auto& f : fs) r = kroneckerProduct(r, f).eval();
  return r;
}

/// E-tilde = kron over legs of (E_alpha0 or gamma_beta); exactly one leg may
/// carry an alternating form.
inline MatR build_tensor_E(const std::vector<TensorLeg>& legs) {
  int count = 0;
  std::vector<MatR> fs;
  for (const auto& l : legs) {
    count += l.distinguished ? 1 : 0;
    fs.push_back(l.form);
  }
  if (count != 1) throw AssemblyError("support mismatch: need exactly one distinguished leg, got " + std::to_string(count));
  return kron_list(fs);
}

inline MatR build_J_tilde(const std::vector<TensorLeg>& legs) {
  std::vector<MatR> fs;
  for (const auto& l : legs) fs.push_back(l.distinguished ? l.complex_structure : MatR::Identity(l.form.rows(), l.form.cols()));
  return kron_list(fs);
}

/// Sparse I_before (x) m (x) I_after.
inline SpMat embed_sparse(const SpMat& m, Eigen::Index before, Eigen::Index after) {
  SpMat ib(before, before);
  ib.setIdentity();
  SpMat ia(after, after);
  ia.setIdentity();
  SpMat t = kroneckerProduct(ib, m);
  return kroneckerProduct(t, ia);
}

// ---------------------------------------------------------------------------
// Galois assembly

struct BlockLeg {
  Leg leg;
  bool noncompact = false;
  int dim = 0;
};

struct GaloisBlock {
  std::string sigma;  // cycle notation of the Galois element
  std::string summand_key;
  std::vector<BlockLeg> legs;
  std::string alpha0;  // the noncompact leg's embedding; empty if none
  int dim = 0;
  int offset = 0;
  double c = 1.0;
  MatR E_tilde;  // unscaled
  MatR J_tilde;
  MatR gram;  // E_tilde J_tilde
};

struct ScalingCertificate {
  long long N = 1;
  int doublings = 0;
  /// Per-embedding scalars alpha(c_j): N + 1 on S0, 1/2 at compact embeddings.
  std::map<std::string, double> c;
  double min_eigenvalue_identity_block = 0.0;
  double min_eigenvalue_search = 0.0;
  double min_eigenvalue = 0.0;
};

/// E and J are block diagonal over the Galois blocks; the dense matrices are
/// only materialized on request.
struct AssembledSymplecticData {
  std::vector<GaloisBlock> blocks;
  int dim = 0;
  ScalingCertificate scaling;

  MatR E() const {
    MatR m = MatR::Zero(dim, dim);
    for (const auto& b : blocks) m.block(b.offset, b.offset, b.dim, b.dim) = b.c * b.E_tilde;
    return m;
  }
  MatR J() const {
    MatR m = MatR::Zero(dim, dim);
    for (const auto& b : blocks) m.block(b.offset, b.offset, b.dim, b.dim) = b.J_tilde;
    return m;
  }
};

struct FormCertificate {
  double gamma_invariance = 0.0;
  double gamma_min_eigenvalue = 0.0;
  std::map<std::string, int> gamma_solution_dim;
  double j_invariance = 0.0;
  double j_skew = 0.0;
  std::string j_invariance_route;
  double j_square = 0.0;
  double e_alternating = 0.0;
  double symmetry = 0.0;
  double min_eigenvalue = 0.0;
  double full_h1 = 0.0;
  double full_h1_unscaled = 0.0;
  double full_e_invariance = 0.0;
  ScalingCertificate scaling;
  int dim = 0;
  int blocks = 0;
};

/// Cache of realizations and invariant forms per leg.
class LegLibrary {
 public:
  explicit LegLibrary(const GroupSpec& spec) : spec_(spec) {}

  struct Entry {
    LocalRepDescriptor descriptor;
    RepRealization<cd> rep;
    InvariantSymmetricForm gamma;
    MatR J0;
    MatR E0;
    MatR h_defect;  // d rho(H0) - J0/2 (noncompact only)
    MatR drho_h0;   // d rho(H0) (noncompact only)
    std::vector<SpMat> images;
  };

  const Entry& get(const Leg& leg) {
    const std::string key = leg.factor + ":" + leg.embedding + ":" + tag_string(leg.tag);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Entry e;
    e.descriptor = describe(spec_.factor(leg.factor), leg.embedding, leg.tag);
    if (!e.descriptor.admissible()) throw AssemblyError(leg.factor + ":" + leg.embedding + ": " + e.descriptor.reason);
    e.rep = realize<cd>(e.descriptor);
    e.gamma = solve_invariant_form(e.rep, leg.embedding);
    e.J0 = to_real<cd>(e.rep.J0);
    e.E0 = to_real<cd>(e.rep.E0);
    if (e.rep.lie.h_element) {
      e.drho_h0 = to_real<cd>(e.rep.drho(*e.rep.lie.h_element));
      e.h_defect = e.drho_h0 - e.J0 / 2.0;
    }
    for (const auto& img : e.rep.images) e.images.push_back(to_real<cd>(img).sparseView(0.0, 0.0));
    return cache_.emplace(key, std::move(e)).first->second;
  }

 private:
  const GroupSpec& spec_;
  std::map<std::string, Entry> cache_;
};

namespace detail {

inline double min_block_eigen(const MatR& gram) {
  return min_symmetric_eigenvalue(MatR((gram + gram.transpose()) / 2.0));
}

}  // namespace detail

/// Builds one block per Galois element holding mu^sigma for the first summand
/// mu of a primary candidate, finds N by doubling, applies the scalars c and
/// certifies the result.
inline AssembledSymplecticData assemble_trace_form(const GroupSpec& spec, const GlobalRepCandidate& cand,
                                                   LegLibrary& lib, long long max_n = 1LL << 40) {
  if (!is_primary(spec, cand)) throw AssemblyError("form assembly needs a primary candidate");
  const IrreducibleSummand mu = normalize(spec, cand).summands.front();
  AssembledSymplecticData out;
  int offset = 0;
  for (const auto& g : spec.group()) {
    GaloisBlock b;
    b.sigma = spec.cycle_string(g);
    IrreducibleSummand s = conjugate(spec, mu, g);
    s.multiplicity = 1;
    b.summand_key = summand_key(spec, s);
    std::vector<TensorLeg> tl;
    for (const auto& l : s.legs) {
      const auto& e = lib.get(l);
      const bool nc = spec.is_noncompact(l.embedding);
      b.legs.push_back({l, nc, e.rep.dim});
      if (nc) {
        if (!b.alpha0.empty()) throw AssemblyError("summand " + b.summand_key + " has two noncompact legs");
        b.alpha0 = l.embedding;
        tl.push_back({e.E0, e.J0, true});
      } else {
        tl.push_back({e.gamma.gamma, MatR(), false});
      }
    }
    if (b.alpha0.empty()) throw AssemblyError("summand " + b.summand_key + " is trivial on every noncompact embedding");
    b.E_tilde = build_tensor_E(tl);
    b.J_tilde = build_J_tilde(tl);
    b.gram = MatR(SpMat(SpMat(b.E_tilde.sparseView(0.0, 0.0)) * SpMat(b.J_tilde.sparseView(0.0, 0.0))));
    b.dim = static_cast<int>(b.E_tilde.rows());
    b.offset = offset;
    offset += b.dim;
    out.blocks.push_back(std::move(b));
  }
  out.dim = offset;

  std::vector<double> mins;
  for (const auto& b : out.blocks) mins.push_back(detail::min_block_eigen(b.gram));
  auto& sc = out.scaling;
  sc.min_eigenvalue_identity_block = mins.front();
  if (!(mins.front() > 0.0)) throw ScalingError("identity block form E(x, Jx) is not positive definite");
  const auto search_min = [&](long long n) {
    double m = static_cast<double>(n) * mins.front();
    for (std::size_t i = 1; i < mins.size(); ++i) m = std::min(m, mins[i]);
    return m;
  };
  while (!(search_min(sc.N) > 0.0)) {
    if (sc.N >= max_n) throw ScalingError("N search exceeded 2^40");
    sc.N *= 2;
    ++sc.doublings;
  }
  sc.min_eigenvalue_search = search_min(sc.N);
  for (const auto& l : spec.labels()) sc.c[l] = spec.is_noncompact(l) ? static_cast<double>(sc.N + 1) : 0.5;

  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    auto& b = out.blocks[i];
    b.c = sc.c.at(b.alpha0);
    mn = std::min(mn, b.c * mins[i]);
  }
  sc.min_eigenvalue = mn;
  return out;
}

/// H1 of the whole representation against J/2 and invariance of E, over the
/// real-form bases of every embedding, using sparse tensor embeddings.
struct FullRepResiduals {
  double h1 = 0.0;
  double e_invariance = 0.0;
};

inline FullRepResiduals full_representation_residuals(const GroupSpec& spec, const AssembledSymplecticData& data,
                                                      LegLibrary& lib, bool scaled = true) {
  FullRepResiduals out;
  struct Prepared {
    std::vector<SpMat> legs_images;
    SpMat D;
    SpMat E;
    double c = 1.0;
  };
  std::vector<Prepared> prep(data.blocks.size());
  for (std::size_t bi = 0; bi < data.blocks.size(); ++bi) {
    const auto& b = data.blocks[bi];
    SpMat D(b.dim, b.dim);
    Eigen::Index before = 1;
    for (const auto& bl : b.legs) {
      const auto& e = lib.get(bl.leg);
      const Eigen::Index after = b.dim / (before * bl.dim);
      if (bl.noncompact) D += embed_sparse(SpMat(e.drho_h0.sparseView(0.0, 0.0)), before, after);
      before *= bl.dim;
    }
    D -= SpMat((b.J_tilde / 2.0).sparseView(0.0, 0.0));
    prep[bi].D = D;
    const double c = scaled ? data.scaling.c.at(b.alpha0) : 1.0;
    prep[bi].c = c;
    prep[bi].E = SpMat((c * b.E_tilde).sparseView(0.0, 0.0));
  }
  for (const auto& label : spec.labels()) {
    const auto& f = spec.factor_of(label);
    const auto lie = build_real_form<cd>(f, label);
    for (std::size_t gi = 0; gi < lie.basis.size(); ++gi) {
      double num2 = 0.0;
      double den2 = 0.0;
      double inv2 = 0.0;
      for (std::size_t bi = 0; bi < data.blocks.size(); ++bi) {
        const auto& b = data.blocks[bi];
        Eigen::Index before = 1;
        for (const auto& bl : b.legs) {
          const Eigen::Index after = b.dim / (before * bl.dim);
          if (bl.leg.embedding == label) {
            const auto& e = lib.get(bl.leg);
            const SpMat img = embed_sparse(e.images[gi], before, after);
            const SpMat com = SpMat(prep[bi].D * img) - SpMat(img * prep[bi].D);
            const SpMat inv = SpMat(SpMat(img.transpose()) * prep[bi].E) + SpMat(prep[bi].E * img);
            num2 += com.squaredNorm();
            den2 += img.squaredNorm();
            inv2 += inv.squaredNorm() / (prep[bi].c * prep[bi].c);
          }
          before *= bl.dim;
        }
      }
      if (den2 == 0.0) continue;
      out.h1 = std::max(out.h1, std::sqrt(num2 / den2));
      out.e_invariance = std::max(out.e_invariance, std::sqrt(inv2 / den2));
    }
  }
  return out;
}

/// Runs assembly and every check of the form construction on a rigid
/// primary candidate.
inline FormCertificate certify_forms(const GroupSpec& spec, const GlobalRepCandidate& cand, LegLibrary& lib,
                                     AssembledSymplecticData* keep = nullptr) {
  FormCertificate fc;
  AssembledSymplecticData data = assemble_trace_form(spec, cand, lib);
  fc.dim = data.dim;
  fc.blocks = static_cast<int>(data.blocks.size());
  fc.scaling = data.scaling;
  fc.min_eigenvalue = data.scaling.min_eigenvalue;
  fc.gamma_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& b : data.blocks)
    for (const auto& bl : b.legs) {
      const auto& e = lib.get(bl.leg);
      fc.gamma_invariance = std::max(fc.gamma_invariance, e.gamma.invariance_residual);
      fc.gamma_min_eigenvalue = std::min(fc.gamma_min_eigenvalue, e.gamma.min_eigenvalue);
      fc.gamma_solution_dim[bl.leg.factor + ":" + bl.leg.embedding + ":" + tag_string(bl.leg.tag)] =
          e.gamma.solution_dim;
      if (bl.noncompact) {
        fc.j_invariance = std::max(fc.j_invariance, j_invariance_residual(e.gamma.gamma, e.J0));
        fc.j_skew = std::max(fc.j_skew, j_skew_residual(e.gamma.gamma, e.J0));
        fc.j_invariance_route = e.descriptor.h2 ? "H0" : e.rep.extension_name;
      }
    }
  double jj2 = 0.0;
  double alt2 = 0.0;
  double e2 = 0.0;
  double sym = 0.0;
  for (const auto& b : data.blocks) {
    const SpMat j = b.J_tilde.sparseView(0.0, 0.0);
    SpMat id(b.dim, b.dim);
    id.setIdentity();
    jj2 += SpMat(SpMat(j * j) + id).squaredNorm();
    alt2 += (b.c * (b.E_tilde + b.E_tilde.transpose())).squaredNorm();
    e2 += (b.c * b.E_tilde).squaredNorm();
    const MatR g = b.c * b.gram;
    sym = std::max(sym, (g - g.transpose()).norm() / std::max(1.0, g.norm()));
  }
  fc.j_square = std::sqrt(jj2);
  fc.e_alternating = std::sqrt(alt2) / std::max(1.0, std::sqrt(e2));
  fc.symmetry = sym;
  const auto full = full_representation_residuals(spec, data, lib, true);
  fc.full_h1 = full.h1;
  fc.full_e_invariance = full.e_invariance;
  fc.full_h1_unscaled = full_representation_residuals(spec, data, lib, false).h1;
  if (keep) *keep = std::move(data);
  return fc;
}

}  // namespace kuga
