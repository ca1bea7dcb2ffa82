#pragma once

#include <string>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/group.hpp"
#include "lptwist/groupoid.hpp"
#include "lptwist/unit_scalar.hpp"

namespace lptwist {

// T-valued 2-cocycle on a finite group: normalized at the identity and
// satisfying s(x,y)s(xy,z) = s(x,yz)s(y,z) for all triples.
struct GroupCocycle {
  FiniteGroup group;
  std::vector<std::vector<UnitScalar>> table;  // table[x][y]

  const UnitScalar& at(int x, int y) const { return table[x][y]; }

  bool is_exact() const {
    for (const auto& row : table)
      for (const auto& v : row)
        if (!v.is_exact()) return false;
    return true;
  }

  // smallest m with all values in mu_m
  std::int64_t modulus() const {
    std::int64_t m = 1;
    for (const auto& row : table)
      for (const auto& v : row) {
        if (!v.is_exact()) throw Error(ErrorKind::NotExact, "float cocycle value");
        m = std::lcm(m, v.denominator());
      }
    return m;
  }

  GroupCocycle conjugate() const {
    GroupCocycle out = *this;
    for (auto& row : out.table)
      for (auto& v : row) v = v.conj();
    return out;
  }

  GroupCocycle power(std::int64_t k) const {
    GroupCocycle out = *this;
    for (auto& row : out.table)
      for (auto& v : row) v = v.pow(k);
    return out;
  }
};

struct GroupoidCocycle {
  FiniteGroupoid groupoid;
  // value per composable pair; entries off the composable set are unused
  std::vector<std::vector<UnitScalar>> table;

  const UnitScalar& at(int a, int b) const { return table[a][b]; }

  bool is_exact() const {
    for (int a = 0; a < groupoid.n_arrows; ++a)
      for (int b = 0; b < groupoid.n_arrows; ++b)
        if (groupoid.composable(a, b) && !table[a][b].is_exact()) return false;
    return true;
  }

  std::int64_t modulus() const {
    std::int64_t m = 1;
    for (int a = 0; a < groupoid.n_arrows; ++a)
      for (int b = 0; b < groupoid.n_arrows; ++b)
        if (groupoid.composable(a, b)) {
          if (!table[a][b].is_exact())
            throw Error(ErrorKind::NotExact, "float cocycle value");
          m = std::lcm(m, table[a][b].denominator());
        }
    return m;
  }

  GroupoidCocycle conjugate() const {
    GroupoidCocycle out = *this;
    for (auto& row : out.table)
      for (auto& v : row) v = v.conj();
    return out;
  }
};

inline GroupCocycle validate_group_cocycle(
    const FiniteGroup& g, const std::vector<std::vector<UnitScalar>>& table) {
  int n = g.n;
  if (int(table.size()) != n)
    throw Error(ErrorKind::ValidationError, "table size mismatch");
  for (const auto& row : table)
    if (int(row.size()) != n)
      throw Error(ErrorKind::ValidationError, "table size mismatch");
  for (int x = 0; x < n; ++x)
    if (!table[x][g.e].is_one() || !table[g.e][x].is_one())
      throw Error(ErrorKind::NotNormalized,
                  "sigma not 1 against identity at x=" + std::to_string(x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        UnitScalar lhs = table[x][y] * table[g.mul[x][y]][z];
        UnitScalar rhs = table[x][g.mul[y][z]] * table[y][z];
        if (lhs != rhs)
          throw Error(ErrorKind::CocycleIdentityFails,
                      "witness (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")");
      }
  return GroupCocycle{g, table};
}

inline GroupoidCocycle validate_groupoid_cocycle(
    const FiniteGroupoid& g, const std::vector<std::vector<UnitScalar>>& table) {
  int n = g.n_arrows;
  if (int(table.size()) != n)
    throw Error(ErrorKind::ValidationError, "table size mismatch");
  for (const auto& row : table)
    if (int(row.size()) != n)
      throw Error(ErrorKind::ValidationError, "table size mismatch");
  for (int a = 0; a < n; ++a) {
    if (!table[g.rng[a]][a].is_one() || !table[a][g.src[a]].is_one())
      throw Error(ErrorKind::NotNormalized,
                  "sigma not 1 against unit at arrow " + std::to_string(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        UnitScalar lhs = table[a][b] * table[g.mul[a][b]][c];
        UnitScalar rhs = table[b][c] * table[a][g.mul[b][c]];
        if (lhs != rhs)
          throw Error(ErrorKind::CocycleIdentityFails,
                      "witness (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
      }
    }
  return GroupoidCocycle{g, table};
}

inline GroupCocycle trivial_group_cocycle(const FiniteGroup& g) {
  std::vector<std::vector<UnitScalar>> t(g.n,
                                         std::vector<UnitScalar>(g.n));
  return GroupCocycle{g, t};
}

inline GroupoidCocycle trivial_groupoid_cocycle(const FiniteGroupoid& g) {
  std::vector<std::vector<UnitScalar>> t(
      g.n_arrows, std::vector<UnitScalar>(g.n_arrows));
  return GroupoidCocycle{g, t};
}

// Z2 with sigma(1,1) = -1.
inline GroupCocycle sign_cocycle() {
  FiniteGroup z2 = cyclic_group(2);
  auto t = trivial_group_cocycle(z2).table;
  t[1][1] = UnitScalar::minus_one();
  return validate_group_cocycle(z2, t);
}

// Rotation cocycle on Z_N x Z_N: sigma((m,n),(p,q)) = zeta_N^{k*m*q}.
// Element id is m*N + n.
inline GroupCocycle rotation_cocycle(int N, int k) {
  if (N < 1) throw Error(ErrorKind::BadTheta, "N must be >= 1");
  FiniteGroup g = direct_product(cyclic_group(N), cyclic_group(N));
  std::vector<std::vector<UnitScalar>> t(g.n, std::vector<UnitScalar>(g.n));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      int am = a / N, bq = b % N;
      t[a][b] = UnitScalar::root_of_unity(std::int64_t(k) * am * bq, N);
    }
  return validate_group_cocycle(g, t);
}

// A 1-cochain gamma with gamma = 1 on the identity (group) or on all units
// (groupoid); its differential is the 2-coboundary
// (d gamma)(x,y) = gamma(x) gamma(y) conj(gamma(xy)).
struct Coboundary {
  std::vector<UnitScalar> gamma;
};

inline GroupCocycle coboundary(const FiniteGroup& g,
                               const std::vector<UnitScalar>& gamma) {
  if (int(gamma.size()) != g.n)
    throw Error(ErrorKind::ValidationError, "gamma size mismatch");
  if (!gamma[g.e].is_one())
    throw Error(ErrorKind::NotNormalized, "gamma(e) != 1");
  std::vector<std::vector<UnitScalar>> t(g.n, std::vector<UnitScalar>(g.n));
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      t[x][y] = gamma[x] * gamma[y] * gamma[g.mul[x][y]].conj();
  return validate_group_cocycle(g, t);
}

inline GroupoidCocycle coboundary(const FiniteGroupoid& g,
                                  const std::vector<UnitScalar>& gamma) {
  if (int(gamma.size()) != g.n_arrows)
    throw Error(ErrorKind::ValidationError, "gamma size mismatch");
  for (int u : g.units)
    if (!gamma[u].is_one())
      throw Error(ErrorKind::NotNormalized,
                  "gamma != 1 at unit " + std::to_string(u));
  std::vector<std::vector<UnitScalar>> t(
      g.n_arrows, std::vector<UnitScalar>(g.n_arrows));
  for (int a = 0; a < g.n_arrows; ++a)
    for (int b = 0; b < g.n_arrows; ++b)
      if (g.composable(a, b))
        t[a][b] = gamma[a] * gamma[b] * gamma[g.mul[a][b]].conj();
  return validate_groupoid_cocycle(g, t);
}

}  // namespace lptwist
