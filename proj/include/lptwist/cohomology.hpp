#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lptwist/cocycle.hpp"
#include "lptwist/errors.hpp"
#include "lptwist/smith.hpp"

namespace lptwist {

// Outcome of a cohomologous-ness decision. A missing witness is a certified
// negative only when the solver ran over a modulus at least |G|*m; otherwise
// it just means "not found up to the search order", which the caller can see
// from modulus_used.
struct CohomologyVerdict {
  std::optional<Coboundary> gamma;
  bool certified_negative = false;
  std::int64_t modulus_used = 0;
  std::string note;

  bool cohomologous() const { return gamma.has_value(); }
};

namespace cohomology_detail {

using i64 = std::int64_t;

inline i64 default_group_modulus(const FiniteGroup& g, i64 m) {
  i64 orders = 1;
  for (int x = 0; x < g.n; ++x) orders = std::lcm(orders, i64(g.order_of(x)));
  return std::lcm(m, 2 * orders);
}

// Exponent of sigma * conj(kappa) in mu_m, additively.
inline std::vector<std::vector<i64>> difference_exponents(
    const GroupCocycle& sigma, const GroupCocycle& kappa, i64 m) {
  int n = sigma.group.n;
  std::vector<std::vector<i64>> t(n, std::vector<i64>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      UnitScalar d = sigma.at(x, y) * kappa.at(x, y).conj();
      t[x][y] = snf::mod_pos(d.numerator() * (m / d.denominator()), m);
    }
  return t;
}

}  // namespace cohomology_detail

// Decides whether two exact cocycles on the same group are cohomologous.
// The condition g(x) + g(y) - g(xy) = t(x,y) on mu_M exponents is a linear
// system over Z_M, solved by Smith diagonalization. M defaults to
// lcm(m, 2*lcm(element orders), |G|*m); a witness gamma over T with values
// of unbounded order cannot exist once none exists in mu_{|G|*m}, so a miss
// at that modulus is a certified negative.
inline CohomologyVerdict are_cohomologous(const GroupCocycle& sigma,
                                          const GroupCocycle& kappa,
                                          std::int64_t search_modulus = 0) {
  using cohomology_detail::default_group_modulus;
  using cohomology_detail::difference_exponents;
  using snf::i64;

  if (sigma.group.mul != kappa.group.mul)
    throw Error(ErrorKind::MismatchedCarriers, "cocycles live on different groups");
  if (!sigma.is_exact() || !kappa.is_exact())
    throw Error(ErrorKind::NotExact,
                "float cocycles need the search-based fallback");

  const FiniteGroup& g = sigma.group;
  i64 m = std::lcm(sigma.modulus(), kappa.modulus());
  i64 cert = m * g.n;
  i64 M = search_modulus > 0 ? std::lcm(search_modulus, m)
                             : std::lcm(default_group_modulus(g, m), cert);

  // difference exponents in mu_m, rescaled to mu_M
  auto t = difference_exponents(sigma, kappa, m);
  for (auto& row : t)
    for (auto& v : row) v = v * (M / m);

  snf::Mat A;
  std::vector<i64> b;
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      std::vector<i64> row(g.n, 0);
      row[x] += 1;
      row[y] += 1;
      row[g.mul[x][y]] -= 1;
      A.push_back(std::move(row));
      b.push_back(t[x][y]);
    }

  CohomologyVerdict out;
  out.modulus_used = M;
  auto sol = snf::solve_mod(A, b, M);
  if (sol) {
    Coboundary cb;
    cb.gamma.resize(g.n);
    for (int x = 0; x < g.n; ++x)
      cb.gamma[x] = UnitScalar::root_of_unity((*sol)[x], M);
    out.gamma = cb;
    out.note = "witness over mu_" + std::to_string(M);
  } else {
    out.certified_negative = (M % cert == 0);
    out.note = out.certified_negative
                   ? "no coboundary exists (searched mu_" + std::to_string(M) +
                         " >= |G|*m bound)"
                   : "not found up to search order mu_" + std::to_string(M);
  }
  return out;
}

// Search-based decision procedure. Assigns gamma on a generating set,
// propagates gamma(xy) = gamma(x) gamma(y) conj(t(x,y)) along products, and
// checks all pairs. Works for float tables; also serves as an independent
// oracle for the linear solver.
inline CohomologyVerdict are_cohomologous_search(const GroupCocycle& sigma,
                                                 const GroupCocycle& kappa,
                                                 std::int64_t search_modulus) {
  if (sigma.group.mul != kappa.group.mul)
    throw Error(ErrorKind::MismatchedCarriers, "cocycles live on different groups");
  if (search_modulus <= 0)
    throw Error(ErrorKind::NotExact, "search order m* must be configured");

  const FiniteGroup& g = sigma.group;
  const std::int64_t M = search_modulus;
  const double tol = 1e-7;
  int n = g.n;

  std::vector<std::complex<double>> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x * n + y] = sigma.at(x, y).value() * std::conj(kappa.at(x, y).value());

  // greedy generating sequence
  std::vector<int> gens;
  {
    std::vector<bool> reached(n, false);
    reached[g.e] = true;
    int count = 1;
    while (count < n) {
      int pick = -1;
      for (int x = 0; x < n && pick < 0; ++x)
        if (!reached[x]) pick = x;
      gens.push_back(pick);
      // closure
      bool grew = true;
      reached[pick] = true;
      ++count;
      while (grew) {
        grew = false;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if (reached[x] && reached[y] && !reached[g.mul[x][y]]) {
              reached[g.mul[x][y]] = true;
              ++count;
              grew = true;
            }
      }
    }
  }

  std::vector<std::complex<double>> gamma(n);
  std::vector<bool> have(n, false);

  // propagate from assigned generators; returns false on contradiction
  auto propagate = [&]() -> bool {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (!have[x] || !have[y]) continue;
          std::complex<double> v = gamma[x] * gamma[y] * std::conj(t[x * n + y]);
          int xy = g.mul[x][y];
          if (!have[xy]) {
            gamma[xy] = v;
            have[xy] = true;
            grew = true;
          } else if (std::abs(gamma[xy] - v) > tol) {
            return false;
          }
        }
    }
    return true;
  };

  std::vector<int> assignment(gens.size(), 0);
  std::function<bool(size_t)> rec = [&](size_t gi) -> bool {
    std::vector<std::complex<double>> save_gamma = gamma;
    std::vector<bool> save_have = have;
    if (gi == gens.size()) {
      if (!propagate()) return false;
      for (int x = 0; x < n; ++x)
        if (!have[x]) return false;
      // full check
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          std::complex<double> lhs =
              gamma[x] * gamma[y] * std::conj(gamma[g.mul[x][y]]);
          if (std::abs(lhs - t[x * n + y]) > tol) return false;
        }
      return true;
    }
    for (std::int64_t k = 0; k < M; ++k) {
      gamma = save_gamma;
      have = save_have;
      if (!have[gens[gi]]) {
        gamma[gens[gi]] = UnitScalar::root_of_unity(k, M).value();
        have[gens[gi]] = true;
      } else if (k > 0) {
        break;  // value was already forced by propagation
      }
      if (propagate() && rec(gi + 1)) return true;
    }
    gamma = save_gamma;
    have = save_have;
    return false;
  };

  gamma[g.e] = 1.0;
  have[g.e] = true;

  CohomologyVerdict out;
  out.modulus_used = M;
  if (rec(0)) {
    Coboundary cb;
    cb.gamma.resize(n);
    for (int x = 0; x < n; ++x) {
      auto s = UnitScalar::snap(gamma[x], M, 1e-6);
      cb.gamma[x] = s ? *s : UnitScalar::from_complex(gamma[x]);
    }
    out.gamma = cb;
    out.note = "witness found by generator search over mu_" + std::to_string(M);
  } else {
    out.note = "not found up to search order mu_" + std::to_string(M);
  }
  return out;
}

// Groupoid version of the linear solver: unknowns per arrow, gamma = 1 on
// units, one equation per composable pair.
inline CohomologyVerdict are_cohomologous(const GroupoidCocycle& sigma,
                                          const GroupoidCocycle& kappa,
                                          std::int64_t search_modulus = 0) {
  using snf::i64;
  if (sigma.groupoid.mul != kappa.groupoid.mul)
    throw Error(ErrorKind::MismatchedCarriers,
                "cocycles live on different groupoids");
  if (!sigma.is_exact() || !kappa.is_exact())
    throw Error(ErrorKind::NotExact, "groupoid solver needs exact tables");

  const FiniteGroupoid& g = sigma.groupoid;
  i64 m = std::lcm(sigma.modulus(), kappa.modulus());
  i64 cert = m * g.n_arrows;
  i64 M = search_modulus > 0 ? std::lcm(search_modulus, m)
                             : std::lcm(2 * m, cert);

  snf::Mat A;
  std::vector<i64> b;
  for (int x = 0; x < g.n_arrows; ++x)
    for (int y = 0; y < g.n_arrows; ++y) {
      if (!g.composable(x, y)) continue;
      UnitScalar d = sigma.at(x, y) * kappa.at(x, y).conj();
      std::vector<i64> row(g.n_arrows, 0);
      row[x] += 1;
      row[y] += 1;
      row[g.mul[x][y]] -= 1;
      A.push_back(std::move(row));
      b.push_back(snf::mod_pos(d.numerator() * (M / d.denominator()), M));
    }
  for (int u : g.units) {
    std::vector<i64> row(g.n_arrows, 0);
    row[u] = 1;
    A.push_back(std::move(row));
    b.push_back(0);
  }

  CohomologyVerdict out;
  out.modulus_used = M;
  auto sol = snf::solve_mod(A, b, M);
  if (sol) {
    Coboundary cb;
    cb.gamma.resize(g.n_arrows);
    for (int x = 0; x < g.n_arrows; ++x)
      cb.gamma[x] = UnitScalar::root_of_unity((*sol)[x], M);
    out.gamma = cb;
    out.note = "witness over mu_" + std::to_string(M);
  } else {
    out.certified_negative = (M % cert == 0);
    out.note = out.certified_negative
                   ? "no coboundary exists (searched mu_" + std::to_string(M) + ")"
                   : "not found up to search order mu_" + std::to_string(M);
  }
  return out;
}

}  // namespace lptwist
