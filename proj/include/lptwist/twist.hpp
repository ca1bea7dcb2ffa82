#pragma once

#include <cstdint>
#include <vector>

#include "lptwist/cocycle.hpp"
#include "lptwist/errors.hpp"
#include "lptwist/groupoid.hpp"
#include "lptwist/smith.hpp"

namespace lptwist {

// The finite twist E_sigma over a groupoid: arrows (a, z) with z in mu_m and
// product (a,z)(b,w) = (ab, z w sigma(a,b)). Arrow ids are k*n_arrows + a.
// pi forgets the fiber, i embeds units x mu_m, and z.eps rotates the fiber.
struct TwistGroupoid {
  FiniteGroupoid total;      // E_sigma
  FiniteGroupoid base;       // the underlying groupoid
  std::int64_t m = 1;

  int id(std::int64_t k, int a) const {
    return int(snf::mod_pos(k, m)) * base.n_arrows + a;
  }
  std::int64_t fiber_exponent(int e) const { return e / base.n_arrows; }

  // pi : E -> G
  int pi(int e) const { return e % base.n_arrows; }
  // i : units x mu_m -> E
  int i(int unit, std::int64_t k) const { return id(k, unit); }
  // the mu_m action z . eps
  int rotate(int e, std::int64_t k) const {
    return id(fiber_exponent(e) + k, pi(e));
  }

  // canonical section S(a) = (a, 1)
  int section(int a) const { return id(0, a); }
};

inline TwistGroupoid twist_groupoid(const GroupoidCocycle& sigma,
                                    std::int64_t m_override = 0) {
  if (!sigma.is_exact())
    throw Error(ErrorKind::NotExact, "twist construction needs an exact cocycle");
  const FiniteGroupoid& g = sigma.groupoid;
  std::int64_t m = sigma.modulus();
  if (m_override > 0) {
    if (m_override % m != 0)
      throw Error(ErrorKind::NotExact, "fiber order must contain the cocycle values");
    m = m_override;
  }

  int n = int(m) * g.n_arrows;
  auto id = [&](std::int64_t k, int a) {
    return int(snf::mod_pos(k, m)) * g.n_arrows + a;
  };
  std::vector<int> units, src(n), rng(n), inv(n);
  for (int u : g.units) units.push_back(id(0, u));
  for (std::int64_t k = 0; k < m; ++k)
    for (int a = 0; a < g.n_arrows; ++a) {
      src[id(k, a)] = id(0, g.src[a]);
      rng[id(k, a)] = id(0, g.rng[a]);
      const UnitScalar& s = sigma.at(g.inv[a], a);
      inv[id(k, a)] = id(-k - s.numerator() * (m / s.denominator()), g.inv[a]);
    }
  std::vector<std::vector<int>> mul;
  for (std::int64_t k1 = 0; k1 < m; ++k1)
    for (int a = 0; a < g.n_arrows; ++a)
      for (std::int64_t k2 = 0; k2 < m; ++k2)
        for (int b = 0; b < g.n_arrows; ++b) {
          if (!g.composable(a, b)) continue;
          const UnitScalar& s = sigma.at(a, b);
          std::int64_t ke = k1 + k2 + s.numerator() * (m / s.denominator());
          mul.push_back({id(k1, a), id(k2, b), id(ke, g.mul[a][b])});
        }
  FiniteGroupoid total = build_groupoid(n, units, src, rng, mul, inv);
  return TwistGroupoid{total, g, m};
}

// Recovers a cocycle from a section S of pi via
// S(a) S(b) S(ab)^{-1} = (r(a), omega(a,b)). Any section yields a cocycle
// cohomologous to the one the twist was built from; the canonical section
// returns it on the nose.
inline GroupoidCocycle cocycle_from_section(const TwistGroupoid& tw,
                                            const std::vector<int>& section) {
  const FiniteGroupoid& g = tw.base;
  if (int(section.size()) != g.n_arrows)
    throw Error(ErrorKind::ValidationError, "section size mismatch");
  for (int a = 0; a < g.n_arrows; ++a)
    if (tw.pi(section[a]) != a)
      throw Error(ErrorKind::ValidationError,
                  "not a section at arrow " + std::to_string(a));
  std::vector<std::vector<UnitScalar>> t(
      g.n_arrows, std::vector<UnitScalar>(g.n_arrows));
  for (int a = 0; a < g.n_arrows; ++a)
    for (int b = 0; b < g.n_arrows; ++b) {
      if (!g.composable(a, b)) continue;
      int prod = tw.total.mul[section[a]][section[b]];
      int back = tw.total.mul[prod][tw.total.inv[section[g.mul[a][b]]]];
      t[a][b] = UnitScalar::root_of_unity(tw.fiber_exponent(back), tw.m);
    }
  return validate_groupoid_cocycle(g, t);
}

}  // namespace lptwist
