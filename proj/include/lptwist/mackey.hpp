#pragma once

#include <cstdint>
#include <vector>

#include "lptwist/cocycle.hpp"
#include "lptwist/errors.hpp"
#include "lptwist/group.hpp"
#include "lptwist/smith.hpp"

namespace lptwist {

// The central extension mu_m x_sigma G: product
// (z1,x1)(z2,x2) = (z1 z2 sigma(x1,x2), x1 x2), inverse
// (z,x)^{-1} = (conj(z sigma(x^{-1},x)), x^{-1}).
// Element ids are k*|G| + x for fiber exponent k and base element x.
struct MackeyGroup {
  FiniteGroup group;     // the extension, order m*|G|
  FiniteGroup base;      // G
  std::int64_t m = 1;    // fiber order

  int id(std::int64_t k, int x) const {
    return int(snf::mod_pos(k, m)) * base.n + x;
  }
  std::int64_t fiber(int g) const { return g / base.n; }
  int base_of(int g) const { return g % base.n; }
};

inline MackeyGroup mackey_group(const GroupCocycle& sigma,
                                std::int64_t m_override = 0) {
  if (!sigma.is_exact())
    throw Error(ErrorKind::NotExact, "mackey group needs an exact cocycle");
  const FiniteGroup& g = sigma.group;
  std::int64_t m = sigma.modulus();
  if (m_override > 0) {
    if (m_override % m != 0)
      throw Error(ErrorKind::NotExact, "fiber order must contain the cocycle values");
    m = m_override;
  }

  int n = int(m) * g.n;
  auto id = [&](std::int64_t k, int x) {
    return int(snf::mod_pos(k, m)) * g.n + x;
  };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (std::int64_t k1 = 0; k1 < m; ++k1)
    for (int x1 = 0; x1 < g.n; ++x1)
      for (std::int64_t k2 = 0; k2 < m; ++k2)
        for (int x2 = 0; x2 < g.n; ++x2) {
          const UnitScalar& s = sigma.at(x1, x2);
          std::int64_t ke = k1 + k2 + s.numerator() * (m / s.denominator());
          mul[id(k1, x1)][id(k2, x2)] = id(ke, g.mul[x1][x2]);
        }
  return MackeyGroup{build_group(mul), g, m};
}

}  // namespace lptwist
