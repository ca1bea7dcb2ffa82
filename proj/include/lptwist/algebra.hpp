#pragma once

#include <string>
#include <vector>

#include "lptwist/cocycle.hpp"
#include "lptwist/errors.hpp"
#include "lptwist/mackey.hpp"
#include "lptwist/pnorm.hpp"

namespace lptwist {

// finitely supported function on a finite group
struct GroupAlgElement {
  FiniteGroup group;
  Vec coeffs;
};

// finitely supported function on the arrows of a groupoid, multiplied with
// the twist carried by the cocycle
struct GroupoidAlgElement {
  GroupoidCocycle cocycle;
  Vec coeffs;

  const FiniteGroupoid& groupoid() const { return cocycle.groupoid; }
};

// a representation matrix together with the arrow/element basis it acts on
struct RepMatrix {
  Mat matrix;
  std::vector<int> basis;
};

inline GroupAlgElement delta(const FiniteGroup& g, int x) {
  Vec c = Vec::Zero(g.n);
  c[x] = 1.0;
  return GroupAlgElement{g, c};
}

inline GroupoidAlgElement delta(const GroupoidCocycle& sigma, int arrow) {
  Vec c = Vec::Zero(sigma.groupoid.n_arrows);
  c[arrow] = 1.0;
  return GroupoidAlgElement{sigma, c};
}

// (f * g)(x) = sum_y f(y) g(y^-1 x) sigma(y, y^-1 x)
inline GroupAlgElement convolve_group(const GroupAlgElement& f,
                                      const GroupAlgElement& g,
                                      const GroupCocycle& sigma) {
  if (f.group.mul != g.group.mul || f.group.mul != sigma.group.mul)
    throw Error(ErrorKind::MismatchedCarriers, "group convolution carriers differ");
  const FiniteGroup& grp = f.group;
  Vec out = Vec::Zero(grp.n);
  for (int y = 0; y < grp.n; ++y) {
    if (f.coeffs[y] == Cplx(0.0)) continue;
    for (int w = 0; w < grp.n; ++w) {
      int x = grp.mul[y][w];
      out[x] += f.coeffs[y] * g.coeffs[w] * sigma.at(y, w).value();
    }
  }
  return GroupAlgElement{grp, out};
}

// matrix of the integrated left representation: M[x][z] = f(x z^-1) sigma(x z^-1, z)
inline RepMatrix left_regular_matrix(const GroupAlgElement& f,
                                     const GroupCocycle& sigma) {
  if (f.group.mul != sigma.group.mul)
    throw Error(ErrorKind::MismatchedCarriers, "element and cocycle carriers differ");
  const FiniteGroup& g = f.group;
  Mat m = Mat::Zero(g.n, g.n);
  for (int x = 0; x < g.n; ++x)
    for (int z = 0; z < g.n; ++z) {
      int y = g.mul[x][g.inv[z]];
      m(x, z) = f.coeffs[y] * sigma.at(y, z).value();
    }
  std::vector<int> basis(g.n);
  for (int i = 0; i < g.n; ++i) basis[i] = i;
  return RepMatrix{m, basis};
}

inline Mat left_translation_matrix(const GroupCocycle& sigma, int y) {
  return left_regular_matrix(delta(sigma.group, y), sigma).matrix;
}

// matrix of the conjugate-twisted right translation: R[x][z] = conj(sigma(x,y)) [z == xy]
inline RepMatrix right_regular_matrix(const GroupCocycle& sigma, int y) {
  const FiniteGroup& g = sigma.group;
  Mat m = Mat::Zero(g.n, g.n);
  for (int x = 0; x < g.n; ++x)
    m(x, g.mul[x][y]) = std::conj(sigma.at(x, y).value());
  std::vector<int> basis(g.n);
  for (int i = 0; i < g.n; ++i) basis[i] = i;
  return RepMatrix{m, basis};
}

// Exact monomial matrix: one UnitScalar entry per column. Supports products
// and equality without leaving exact arithmetic; the representation matrices
// of basis elements all live here.
struct MonomialMatrix {
  std::vector<int> row_of_col;
  std::vector<UnitScalar> val_of_col;

  MonomialMatrix operator*(const MonomialMatrix& o) const {
    int n = int(row_of_col.size());
    MonomialMatrix out;
    out.row_of_col.resize(n);
    out.val_of_col.resize(n);
    for (int z = 0; z < n; ++z) {
      int mid = o.row_of_col[z];
      out.row_of_col[z] = row_of_col[mid];
      out.val_of_col[z] = val_of_col[mid] * o.val_of_col[z];
    }
    return out;
  }

  MonomialMatrix scaled(const UnitScalar& u) const {
    MonomialMatrix out = *this;
    for (auto& v : out.val_of_col) v = v * u;
    return out;
  }

  bool operator==(const MonomialMatrix& o) const {
    return row_of_col == o.row_of_col && val_of_col == o.val_of_col;
  }
};

inline MonomialMatrix exact_left_translation(const GroupCocycle& sigma, int y) {
  const FiniteGroup& g = sigma.group;
  MonomialMatrix m;
  m.row_of_col.resize(g.n);
  m.val_of_col.resize(g.n);
  for (int z = 0; z < g.n; ++z) {
    m.row_of_col[z] = g.mul[y][z];
    m.val_of_col[z] = sigma.at(y, z);
  }
  return m;
}

inline MonomialMatrix exact_right_translation(const GroupCocycle& sigma, int y) {
  const FiniteGroup& g = sigma.group;
  MonomialMatrix m;
  m.row_of_col.resize(g.n);
  m.val_of_col.resize(g.n);
  // column z = xy carries conj(sigma(x,y)) at row x
  for (int x = 0; x < g.n; ++x) {
    m.row_of_col[g.mul[x][y]] = x;
    m.val_of_col[g.mul[x][y]] = sigma.at(x, y).conj();
  }
  return m;
}

// (f * g)(c) = sum over alpha with s(alpha) = s(c): f(c alpha^-1) g(alpha)
//              sigma(c alpha^-1, alpha)
inline GroupoidAlgElement convolve_groupoid(const GroupoidAlgElement& f,
                                            const GroupoidAlgElement& g) {
  if (f.groupoid().mul != g.groupoid().mul)
    throw Error(ErrorKind::MismatchedCarriers, "groupoid carriers differ");
  const FiniteGroupoid& grp = f.groupoid();
  const GroupoidCocycle& sigma = f.cocycle;
  Vec out = Vec::Zero(grp.n_arrows);
  for (int b = 0; b < grp.n_arrows; ++b) {      // b = c alpha^-1
    if (f.coeffs[b] == Cplx(0.0)) continue;
    for (int a = 0; a < grp.n_arrows; ++a) {    // alpha
      if (!grp.composable(b, a)) continue;
      int c = grp.mul[b][a];
      out[c] += f.coeffs[b] * g.coeffs[a] * sigma.at(b, a).value();
    }
  }
  return GroupoidAlgElement{sigma, out};
}

// multiplicative identity: indicator of the unit space
inline GroupoidAlgElement unit_indicator(const GroupoidCocycle& sigma) {
  Vec c = Vec::Zero(sigma.groupoid.n_arrows);
  for (int u : sigma.groupoid.units) c[u] = 1.0;
  return GroupoidAlgElement{sigma, c};
}

// the twisted involution f*(c) = conj(sigma(c^-1, c) f(c^-1))
inline GroupoidAlgElement star_sigma(const GroupoidAlgElement& f) {
  const FiniteGroupoid& g = f.groupoid();
  Vec out = Vec::Zero(g.n_arrows);
  for (int c = 0; c < g.n_arrows; ++c)
    out[c] = std::conj(f.cocycle.at(g.inv[c], c).value() * f.coeffs[g.inv[c]]);
  return GroupoidAlgElement{f.cocycle, out};
}

// matrix of convolution by f on the arrows with source x:
// M[e][a] = f(e a^-1) sigma(e a^-1, a), both e and a in G_x
inline RepMatrix groupoid_rep_matrix(const GroupoidAlgElement& f, int x) {
  const FiniteGroupoid& g = f.groupoid();
  if (!g.is_unit(x))
    throw Error(ErrorKind::NotAUnit, std::to_string(x) + " is not a unit");
  std::vector<int> basis = g.arrows_from(x);
  int k = int(basis.size());
  Mat m = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int b = g.mul[basis[i]][g.inv[basis[j]]];  // e a^-1
      m(i, j) = f.coeffs[b] * f.cocycle.at(b, basis[j]).value();
    }
  return RepMatrix{m, basis};
}

// block-diagonal direct sum of the source-fiber matrices over all units
inline Mat groupoid_full_rep(const GroupoidAlgElement& f) {
  const FiniteGroupoid& g = f.groupoid();
  int total = 0;
  for (int x : g.units) total += int(g.arrows_from(x).size());
  Mat out = Mat::Zero(total, total);
  int off = 0;
  for (int x : g.units) {
    Mat block = groupoid_rep_matrix(f, x).matrix;
    out.block(off, off, block.rows(), block.cols()) = block;
    off += int(block.rows());
  }
  return out;
}

inline double sup_norm(const GroupoidAlgElement& f) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    best = std::max(best, std::abs(f.coeffs[i]));
  return best;
}

// max over units of the in/out l1 arrow sums
inline double i_norm(const GroupoidAlgElement& f) {
  const FiniteGroupoid& g = f.groupoid();
  double best = 0.0;
  for (int x : g.units) {
    double out_sum = 0.0, in_sum = 0.0;
    for (int a = 0; a < g.n_arrows; ++a) {
      if (g.src[a] == x) out_sum += std::abs(f.coeffs[a]);
      if (g.rng[a] == x) in_sum += std::abs(f.coeffs[a]);
    }
    best = std::max({best, out_sum, in_sum});
  }
  return best;
}

// max over units of the p -> p norm of the source-fiber convolution matrix
inline NormEstimate reduced_norm(const GroupoidAlgElement& f, double p,
                                 std::uint64_t seed = default_seed()) {
  check_exponent(p);
  NormEstimate out;
  out.method = "exact";
  for (int x : f.groupoid().units) {
    NormEstimate e = pnorm(groupoid_rep_matrix(f, x).matrix, p, seed);
    out.lower = std::max(out.lower, e.lower);
    out.upper = std::max(out.upper, e.upper);
    out.iterations += e.iterations;
    if (e.method != "exact") out.method = e.method;
  }
  return out;
}

// ---- Mackey carrier, embedding and mode decomposition ---------------------

// The embedding j(f)(z, x) = z f(x) is multiplicative from the sigma-twisted
// algebra into the group algebra of the extension built from conj(sigma):
// with that carrier the mode-k component convolves with twist sigma^k and the
// canonical-section lift block-diagonalizes into the sigma^k translations.
inline MackeyGroup mackey_carrier(const GroupCocycle& sigma,
                                  std::int64_t m_override = 0) {
  return mackey_group(sigma.conjugate(), m_override);
}

inline GroupAlgElement mackey_embed(const GroupAlgElement& f,
                                    const MackeyGroup& carrier) {
  if (f.group.mul != carrier.base.mul)
    throw Error(ErrorKind::MismatchedCarriers, "element does not live on the base");
  Vec out = Vec::Zero(carrier.group.n);
  for (std::int64_t k = 0; k < carrier.m; ++k) {
    Cplx z = UnitScalar::root_of_unity(k, carrier.m).value();
    for (int x = 0; x < carrier.base.n; ++x)
      out[carrier.id(k, x)] = z * f.coeffs[x];
  }
  return GroupAlgElement{carrier.group, out};
}

// xi_k(x) = (1/m) sum_z xi(z, x) z^-k
inline Vec fourier_component(const MackeyGroup& carrier, const Vec& xi,
                             std::int64_t k) {
  Vec out = Vec::Zero(carrier.base.n);
  for (std::int64_t j = 0; j < carrier.m; ++j) {
    Cplx w = UnitScalar::root_of_unity(-j * k, carrier.m).value();
    for (int x = 0; x < carrier.base.n; ++x)
      out[x] += xi[carrier.id(j, x)] * w;
  }
  return out / double(carrier.m);
}

// group convolution on the carrier against the fiber measure of mass 1
inline GroupAlgElement mackey_convolve(const MackeyGroup& carrier,
                                       const GroupAlgElement& xi,
                                       const GroupAlgElement& zeta) {
  GroupAlgElement out = convolve_group(
      xi, zeta, trivial_group_cocycle(carrier.group));
  out.coeffs /= double(carrier.m);
  return out;
}

// canonical-section lift: point masses at (1, x) weighted by f
inline GroupAlgElement mackey_lift(const GroupAlgElement& f,
                                   const MackeyGroup& carrier) {
  if (f.group.mul != carrier.base.mul)
    throw Error(ErrorKind::MismatchedCarriers, "element does not live on the base");
  Vec out = Vec::Zero(carrier.group.n);
  for (int x = 0; x < carrier.base.n; ++x) out[carrier.id(0, x)] = f.coeffs[x];
  return GroupAlgElement{carrier.group, out};
}

// l1 norm of a carrier function against the mass-1 fiber measure
inline double mackey_l1_norm(const MackeyGroup& carrier, const Vec& xi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) s += std::abs(xi[i]);
  return s / double(carrier.m);
}

}  // namespace lptwist
