#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/group.hpp"
#include "lptwist/lamperti.hpp"
#include "lptwist/pnorm.hpp"
#include "lptwist/smith.hpp"
#include "lptwist/unit_scalar.hpp"

namespace lptwist {

// A circle family { z * base : |z| = 1 } of invertible isometries inside an
// algebra; families are the connected components of the isometry group.
struct IsometryFamily {
  IsometryForm base;
  bool phase_free = true;
};

struct IsometryGroupResult {
  std::vector<IsometryFamily> families;
  FiniteGroup pi0;            // component group, indexed like families
  int identity_family = -1;   // index of the component of the unit
  int algebra_dim = 0;
  std::string note;
};

namespace isometry_detail {

// coefficients c with sum_j c_j B_j supported on the cells (phi[z], z),
// returned as the f-vectors of the members diag(f) P_phi
inline std::vector<Vec> pattern_members(const std::vector<Mat>& basis,
                                        const std::vector<int>& phi,
                                        double tol) {
  const int n = int(phi.size());
  const int k = int(basis.size());
  std::vector<std::pair<int, int>> off;
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x)
      if (x != phi[z]) off.push_back({x, z});

  if (off.empty()) {  // n == 1: every nonzero span member is a candidate
    for (const Mat& b : basis)
      if (std::abs(b(0, 0)) > tol) return {Vec::Constant(1, b(0, 0))};
    return {};
  }

  Mat sys(off.size(), k);
  for (size_t r = 0; r < off.size(); ++r)
    for (int j = 0; j < k; ++j) sys(r, j) = basis[j](off[r].first, off[r].second);

  Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::vector<Vec> members;
  Eigen::Index rank_limit = std::min<Eigen::Index>(sv.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (j < rank_limit && sv(j) > cutoff) continue;
    Vec c = svd.matrixV().col(j);
    Vec f = Vec::Zero(n);
    for (int z = 0; z < n; ++z)
      for (int b = 0; b < k; ++b) f[phi[z]] += c[b] * basis[b](phi[z], z);
    members.push_back(f);
  }
  return members;
}

}  // namespace isometry_detail

// Enumerates the invertible isometries diag(f) P_phi lying in the span of
// `basis` (permutation search over phi, then a linear membership solve and a
// unimodularity check on the solution family). Components of the result are
// indexed by the permutation part: two families are identified in pi0 iff
// their distance is below 2 - 1e-6, which happens exactly when the
// permutations agree.
inline IsometryGroupResult isometries_in_algebra(const std::vector<Mat>& basis,
                                                 double p, double tol = 1e-9) {
  check_exponent(p);
  if (p == 2.0)
    throw Error(ErrorKind::BadExponent, "isometry enumeration requires p != 2");
  if (basis.empty()) throw Error(ErrorKind::ValidationError, "empty basis");
  const int n = int(basis.front().rows());
  if (n > 6)
    throw Error(ErrorKind::SearchTooLarge,
                "permutation search capped at dimension 6");

  IsometryGroupResult out;
  out.algebra_dim = int(basis.size());

  std::vector<int> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = i;
  do {
    auto members = isometry_detail::pattern_members(basis, phi, tol);
    for (const Vec& f : members) {
      // unimodular scaling exists iff |f| is a nonzero constant
      double m0 = std::abs(f[0]);
      if (m0 < tol) continue;
      bool constant = true;
      for (int x = 1; x < n && constant; ++x)
        constant = std::abs(std::abs(f[x]) - m0) <= 1e-7 * m0;
      if (!constant) continue;
      IsometryForm base;
      base.phi = phi;
      base.f = f / m0;
      // deterministic representative: first entry positive real
      base.f *= std::conj(pnorm_detail::csign(base.f[0]));
      bool dup = false;
      for (const auto& fam : out.families)
        if (fam.base.phi == phi) dup = true;
      if (!dup) out.families.push_back(IsometryFamily{base, true});
      break;
    }
  } while (std::next_permutation(phi.begin(), phi.end()));

  // component group: compose representatives; the permutation part indexes
  // the component
  const int nf = int(out.families.size());
  if (nf == 0) {
    out.note = "no invertible isometries found in the span";
    return out;
  }
  std::vector<std::vector<int>> table(nf, std::vector<int>(nf, -1));
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < nf; ++b) {
      std::vector<int> comp(n);
      const auto& pa = out.families[a].base.phi;
      const auto& pb = out.families[b].base.phi;
      for (int z = 0; z < n; ++z) comp[z] = pa[pb[z]];
      for (int c = 0; c < nf; ++c)
        if (out.families[c].base.phi == comp) table[a][b] = c;
      if (table[a][b] < 0)
        throw Error(ErrorKind::ValidationError,
                    "isometry families are not closed under composition");
    }
  out.pi0 = build_group(table);
  std::vector<int> ident(n);
  for (int i = 0; i < n; ++i) ident[i] = i;
  for (int c = 0; c < nf; ++c)
    if (out.families[c].base.phi == ident) out.identity_family = c;
  return out;
}

// The finite subgroup { zeta_m^k * base : k, family } under matrix product.
// Requires all pairwise products to land back on the mu_m grid; that holds
// when the algebra came from an exact cocycle with values in mu_m.
inline FiniteGroup isometry_phase_group(const IsometryGroupResult& res,
                                        std::int64_t m, double tol = 1e-9) {
  const int nf = int(res.families.size());
  if (nf == 0) throw Error(ErrorKind::ValidationError, "no families");
  const int n = res.families.front().base.dim();
  const int order = int(m) * nf;
  auto id = [&](std::int64_t k, int fam) {
    return int(snf::mod_pos(k, m)) * nf + fam;
  };

  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int a = 0; a < nf; ++a)
    for (int b = 0; b < nf; ++b) {
      Mat prod = res.families[a].base.to_matrix() *
                 res.families[b].base.to_matrix();
      auto form = lamperti_decompose(prod, 3.0, tol);
      int target = -1;
      for (int c = 0; c < nf; ++c)
        if (res.families[c].base.phi == form.phi) target = c;
      if (target < 0)
        throw Error(ErrorKind::ValidationError, "product escapes the family set");
      // constant phase ratio against the target representative
      Cplx ratio = 0.0;
      for (int x = 0; x < n; ++x) {
        Cplx r = form.f[x] / res.families[target].base.f[x];
        if (x == 0)
          ratio = r;
        else if (std::abs(r - ratio) > 1e-7)
          throw Error(ErrorKind::PhaseInconsistent,
                      "product phase is not constant across the fiber");
      }
      auto snapped = UnitScalar::snap(ratio, m, 1e-7);
      if (!snapped)
        throw Error(ErrorKind::PhaseInconsistent,
                    "product phase is off the mu_m grid");
      std::int64_t ke = snapped->numerator() * (m / snapped->denominator());
      for (std::int64_t k1 = 0; k1 < m; ++k1)
        for (std::int64_t k2 = 0; k2 < m; ++k2)
          table[id(k1, a)][id(k2, b)] = id(k1 + k2 + ke, target);
    }
  return build_group(table);
}

}  // namespace lptwist
