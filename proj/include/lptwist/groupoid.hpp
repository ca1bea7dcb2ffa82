#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/group.hpp"

namespace lptwist {

// A finite discrete groupoid over dense arrow ids. The partial product is
// stored as a full table with -1 off the composable set.
struct FiniteGroupoid {
  int n_arrows = 0;
  std::vector<int> units;       // unit arrows, sorted
  std::vector<int> src;         // s(a), a unit id
  std::vector<int> rng;         // r(a), a unit id
  std::vector<std::vector<int>> mul;  // mul[a][b], -1 when not composable
  std::vector<int> inv;

  bool composable(int a, int b) const { return src[a] == rng[b]; }
  int op(int a, int b) const { return mul[a][b]; }
  bool is_unit(int a) const {
    return std::binary_search(units.begin(), units.end(), a);
  }

  // arrows with source x
  std::vector<int> arrows_from(int x) const {
    std::vector<int> out;
    for (int a = 0; a < n_arrows; ++a)
      if (src[a] == x) out.push_back(a);
    return out;
  }
  // arrows with range x
  std::vector<int> arrows_into(int x) const {
    std::vector<int> out;
    for (int a = 0; a < n_arrows; ++a)
      if (rng[a] == x) out.push_back(a);
    return out;
  }
};

inline FiniteGroupoid build_groupoid(
    int n_arrows, std::vector<int> units, const std::vector<int>& src,
    const std::vector<int>& rng,
    const std::vector<std::vector<int>>& partial_mul,
    const std::vector<int>& inv) {
  if (n_arrows <= 0) throw Error(ErrorKind::ValidationError, "no arrows");
  auto in_range = [&](int a) { return a >= 0 && a < n_arrows; };
  if (int(src.size()) != n_arrows || int(rng.size()) != n_arrows ||
      int(inv.size()) != n_arrows)
    throw Error(ErrorKind::ValidationError, "map sizes disagree with arrows");
  std::sort(units.begin(), units.end());
  for (int u : units)
    if (!in_range(u)) throw Error(ErrorKind::BadUnits, "unit id out of range");
  auto is_unit = [&](int a) {
    return std::binary_search(units.begin(), units.end(), a);
  };
  for (int a = 0; a < n_arrows; ++a) {
    if (!is_unit(src[a]) || !is_unit(rng[a]))
      throw Error(ErrorKind::BadUnits,
                  "s/r of arrow " + std::to_string(a) + " is not a unit");
    if (!in_range(inv[a]))
      throw Error(ErrorKind::BadInverse, "inverse id out of range");
  }

  // expand the partial product into a full table, rejecting escapes from the
  // composable set
  std::vector<std::vector<int>> mul(n_arrows, std::vector<int>(n_arrows, -1));
  for (const auto& t : partial_mul) {
    if (t.size() != 3)
      throw Error(ErrorKind::ValidationError, "mul rows must be [a,b,c]");
    int a = t[0], b = t[1], c = t[2];
    if (!in_range(a) || !in_range(b) || !in_range(c))
      throw Error(ErrorKind::ValidationError, "mul entry out of range");
    if (src[a] != rng[b])
      throw Error(ErrorKind::DomainMismatch,
                  "product defined on non-composable (" + std::to_string(a) +
                      "," + std::to_string(b) + ")");
    mul[a][b] = c;
  }
  for (int a = 0; a < n_arrows; ++a)
    for (int b = 0; b < n_arrows; ++b)
      if (src[a] == rng[b] && mul[a][b] < 0)
        throw Error(ErrorKind::DomainMismatch,
                    "product missing on composable (" + std::to_string(a) +
                        "," + std::to_string(b) + ")");

  for (int a = 0; a < n_arrows; ++a) {
    for (int b = 0; b < n_arrows; ++b) {
      int ab = mul[a][b];
      if (ab < 0) continue;
      if (rng[ab] != rng[a] || src[ab] != src[b])
        throw Error(ErrorKind::ValidationError,
                    "s/r incompatible with product at (" + std::to_string(a) +
                        "," + std::to_string(b) + ")");
    }
  }

  for (int a = 0; a < n_arrows; ++a) {
    int ia = inv[a];
    if (src[ia] != rng[a] || rng[ia] != src[a] || mul[a][ia] != rng[a] ||
        mul[ia][a] != src[a])
      throw Error(ErrorKind::BadInverse,
                  "inverse law fails at arrow " + std::to_string(a));
  }

  // units must be exactly the arrows a*inv(a), and act as identities
  std::set<int> derived;
  for (int a = 0; a < n_arrows; ++a) derived.insert(mul[a][inv[a]]);
  if (std::vector<int>(derived.begin(), derived.end()) != units)
    throw Error(ErrorKind::BadUnits,
                "declared units differ from arrows of the form a*inv(a)");
  for (int a = 0; a < n_arrows; ++a) {
    if (mul[rng[a]][a] != a || mul[a][src[a]] != a)
      throw Error(ErrorKind::BadUnits,
                  "unit does not act as identity at arrow " +
                      std::to_string(a));
  }

  for (int a = 0; a < n_arrows; ++a)
    for (int b = 0; b < n_arrows; ++b) {
      if (mul[a][b] < 0) continue;
      for (int c = 0; c < n_arrows; ++c) {
        if (mul[b][c] < 0) continue;
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw Error(ErrorKind::NotAssociative,
                      "witness (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
      }
    }

  return FiniteGroupoid{n_arrows, units, src, rng, mul, inv};
}

// Pair groupoid on k points: arrows (i,j) with id i*k+j, (i,j)(j,l) = (i,l).
inline FiniteGroupoid pair_groupoid(int k) {
  int n = k * k;
  auto id = [&](int i, int j) { return i * k + j; };
  std::vector<int> units, src(n), rng(n), inv(n);
  std::vector<std::vector<int>> mul;
  for (int i = 0; i < k; ++i) units.push_back(id(i, i));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      src[id(i, j)] = id(j, j);
      rng[id(i, j)] = id(i, i);
      inv[id(i, j)] = id(j, i);
      for (int l = 0; l < k; ++l)
        mul.push_back({id(i, j), id(j, l), id(i, l)});
    }
  return build_groupoid(n, units, src, rng, mul, inv);
}

inline FiniteGroupoid group_as_groupoid(const FiniteGroup& g) {
  std::vector<int> units{g.e}, src(g.n, g.e), rng(g.n, g.e);
  std::vector<std::vector<int>> mul;
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) mul.push_back({x, y, g.mul[x][y]});
  return build_groupoid(g.n, units, src, rng, mul, g.inv);
}

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a,
                                     const FiniteGroupoid& b) {
  int n = a.n_arrows + b.n_arrows;
  auto bid = [&](int x) { return a.n_arrows + x; };
  std::vector<int> units = a.units, src = a.src, rng = a.rng, inv = a.inv;
  for (int u : b.units) units.push_back(bid(u));
  src.resize(n);
  rng.resize(n);
  inv.resize(n);
  for (int x = 0; x < b.n_arrows; ++x) {
    src[bid(x)] = bid(b.src[x]);
    rng[bid(x)] = bid(b.rng[x]);
    inv[bid(x)] = bid(b.inv[x]);
  }
  std::vector<std::vector<int>> mul;
  for (int x = 0; x < a.n_arrows; ++x)
    for (int y = 0; y < a.n_arrows; ++y)
      if (a.mul[x][y] >= 0) mul.push_back({x, y, a.mul[x][y]});
  for (int x = 0; x < b.n_arrows; ++x)
    for (int y = 0; y < b.n_arrows; ++y)
      if (b.mul[x][y] >= 0) mul.push_back({bid(x), bid(y), bid(b.mul[x][y])});
  return build_groupoid(n, units, src, rng, mul, inv);
}

struct GroupoidProperties {
  bool is_principal = false;
  bool is_effective = false;
  std::map<int, FiniteGroup> isotropy;  // unit -> isotropy group
};

inline GroupoidProperties groupoid_properties(const FiniteGroupoid& g) {
  GroupoidProperties out;
  out.is_principal = true;
  for (int x : g.units) {
    std::vector<int> iso;
    for (int a = 0; a < g.n_arrows; ++a)
      if (g.src[a] == x && g.rng[a] == x) iso.push_back(a);
    if (iso.size() > 1) out.is_principal = false;
    std::vector<std::vector<int>> mul(iso.size(),
                                      std::vector<int>(iso.size()));
    for (size_t i = 0; i < iso.size(); ++i)
      for (size_t j = 0; j < iso.size(); ++j) {
        int p = g.mul[iso[i]][iso[j]];
        mul[i][j] =
            int(std::find(iso.begin(), iso.end(), p) - iso.begin());
      }
    out.isotropy.emplace(x, build_group(mul));
  }
  // finite discrete: every subset is open, so effective iff principal
  out.is_effective = out.is_principal;
  return out;
}

// A bisection: arrow subset on which both s and r are injective.
struct Bisection {
  std::vector<int> arrows;  // sorted
};

inline bool is_bisection(const FiniteGroupoid& g,
                         const std::vector<int>& arrows) {
  std::set<int> ss, rs;
  for (int a : arrows) {
    if (!ss.insert(g.src[a]).second) return false;
    if (!rs.insert(g.rng[a]).second) return false;
  }
  return true;
}

// The partial map beta_B(x) = r(Bx) on units.
inline std::map<int, int> beta_map(const FiniteGroupoid& g,
                                   const Bisection& b) {
  std::map<int, int> out;
  for (int a : b.arrows) out[g.src[a]] = g.rng[a];
  return out;
}

// Arrow-set product BC = {bc : s(b) = r(c)}.
inline Bisection compose_bisections(const FiniteGroupoid& g,
                                    const Bisection& b, const Bisection& c) {
  std::set<int> out;
  for (int x : b.arrows)
    for (int y : c.arrows)
      if (g.composable(x, y)) out.insert(g.mul[x][y]);
  return Bisection{std::vector<int>(out.begin(), out.end())};
}

inline Bisection invert_bisection(const FiniteGroupoid& g,
                                  const Bisection& b) {
  std::set<int> out;
  for (int a : b.arrows) out.insert(g.inv[a]);
  return Bisection{std::vector<int>(out.begin(), out.end())};
}

namespace detail {

inline void maximal_bisections_rec(const FiniteGroupoid& g, int next,
                                   std::vector<int>& cur,
                                   std::set<int>& used_s, std::set<int>& used_r,
                                   std::vector<Bisection>& out) {
  if (next == g.n_arrows) {
    // maximal iff no arrow can still be added
    for (int a = 0; a < g.n_arrows; ++a)
      if (!used_s.count(g.src[a]) && !used_r.count(g.rng[a])) return;
    out.push_back(Bisection{cur});
    return;
  }
  int a = next;
  if (!used_s.count(g.src[a]) && !used_r.count(g.rng[a])) {
    cur.push_back(a);
    used_s.insert(g.src[a]);
    used_r.insert(g.rng[a]);
    maximal_bisections_rec(g, next + 1, cur, used_s, used_r, out);
    cur.pop_back();
    used_s.erase(g.src[a]);
    used_r.erase(g.rng[a]);
  }
  maximal_bisections_rec(g, next + 1, cur, used_s, used_r, out);
}

}  // namespace detail

// All maximal bisections, built as maximal source/range matchings.
inline std::vector<Bisection> bisections(const FiniteGroupoid& g) {
  if (g.n_arrows > 24)
    throw Error(ErrorKind::TooLarge, "bisection enumeration capped at 24 arrows");
  std::vector<Bisection> out;
  std::vector<int> cur;
  std::set<int> used_s, used_r;
  detail::maximal_bisections_rec(g, 0, cur, used_s, used_r, out);
  return out;
}

}  // namespace lptwist
