#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lptwist/errors.hpp"

namespace lptwist {

// A finite group as a validated multiplication table over dense ids [0, n).
struct FiniteGroup {
  int n = 0;
  std::vector<std::vector<int>> mul;  // mul[x][y] = x*y
  int e = 0;
  std::vector<int> inv;

  int op(int x, int y) const { return mul[x][y]; }

  int order_of(int x) const {
    int k = 1, y = x;
    while (y != e) {
      y = mul[y][x];
      ++k;
    }
    return k;
  }

  std::vector<int> order_profile() const {
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = order_of(x);
    std::sort(p.begin(), p.end());
    return p;
  }
};

inline FiniteGroup build_group(const std::vector<std::vector<int>>& mul) {
  int n = int(mul.size());
  if (n == 0) throw Error(ErrorKind::ValidationError, "empty table");
  for (const auto& row : mul) {
    if (int(row.size()) != n)
      throw Error(ErrorKind::ValidationError, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw Error(ErrorKind::ValidationError,
                    "entry " + std::to_string(v) + " out of range");
  }

  int e = -1;
  for (int c = 0; c < n; ++c) {
    bool ident = true;
    for (int x = 0; x < n && ident; ++x)
      ident = (mul[c][x] == x && mul[x][c] == x);
    if (ident) {
      e = c;
      break;
    }
  }
  if (e < 0) throw Error(ErrorKind::NoIdentity, "no two-sided identity");

  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (mul[x][y] == e && mul[y][x] == e) {
        inv[x] = y;
        break;
      }
    }
    if (inv[x] < 0)
      throw Error(ErrorKind::NoInverse,
                  "element " + std::to_string(x) + " has no inverse");
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (mul[mul[x][y]][z] != mul[x][mul[y][z]])
          throw Error(ErrorKind::NotAssociative,
                      "witness (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")");

  return FiniteGroup{n, mul, e, inv};
}

inline FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) mul[x][y] = (x + y) % n;
  return build_group(mul);
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.n * b.n;
  auto id = [&](int x, int y) { return x * b.n + y; };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2)
          mul[id(x1, y1)][id(x2, y2)] = id(a.mul[x1][x2], b.mul[y1][y2]);
  return build_group(mul);
}

namespace detail {

inline bool extend_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                               std::vector<int>& map, std::vector<bool>& used,
                               int next) {
  if (next == g.n) return true;
  if (map[next] >= 0) return extend_isomorphism(g, h, map, used, next + 1);
  for (int img = 0; img < h.n; ++img) {
    if (used[img] || g.order_of(next) != h.order_of(img)) continue;
    map[next] = img;
    used[img] = true;
    bool ok = true;
    // check all products among currently mapped elements
    for (int x = 0; x < g.n && ok; ++x) {
      if (map[x] < 0) continue;
      for (int y = 0; y < g.n && ok; ++y) {
        if (map[y] < 0) continue;
        int m = map[g.mul[x][y]];
        if (m >= 0 && m != h.mul[map[x]][map[y]]) ok = false;
      }
    }
    if (ok && extend_isomorphism(g, h, map, used, next + 1)) return true;
    map[next] = -1;
    used[img] = false;
  }
  return false;
}

inline void all_isomorphisms_rec(const FiniteGroup& g, const FiniteGroup& h,
                                 std::vector<int>& map, std::vector<bool>& used,
                                 int next, std::vector<std::vector<int>>& out) {
  if (next == g.n) {
    out.push_back(map);
    return;
  }
  if (map[next] >= 0) {
    all_isomorphisms_rec(g, h, map, used, next + 1, out);
    return;
  }
  for (int img = 0; img < h.n; ++img) {
    if (used[img] || g.order_of(next) != h.order_of(img)) continue;
    map[next] = img;
    used[img] = true;
    bool ok = true;
    for (int x = 0; x < g.n && ok; ++x) {
      if (map[x] < 0) continue;
      for (int y = 0; y < g.n && ok; ++y) {
        if (map[y] < 0) continue;
        int m = map[g.mul[x][y]];
        if (m >= 0 && m != h.mul[map[x]][map[y]]) ok = false;
      }
    }
    if (ok) all_isomorphisms_rec(g, h, map, used, next + 1, out);
    map[next] = -1;
    used[img] = false;
  }
}

}  // namespace detail

// Backtracking isomorphism search; returns an element bijection or nullopt.
// Order profiles give a fast negative certificate.
inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g,
                                                        const FiniteGroup& h) {
  if (g.n != h.n) return std::nullopt;
  if (g.order_profile() != h.order_profile()) return std::nullopt;
  std::vector<int> map(g.n, -1);
  std::vector<bool> used(h.n, false);
  map[g.e] = h.e;
  used[h.e] = true;
  if (detail::extend_isomorphism(g, h, map, used, 0)) return map;
  return std::nullopt;
}

inline bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  return find_isomorphism(g, h).has_value();
}

inline std::vector<std::vector<int>> all_isomorphisms(const FiniteGroup& g,
                                                      const FiniteGroup& h) {
  std::vector<std::vector<int>> out;
  if (g.n != h.n || g.order_profile() != h.order_profile()) return out;
  std::vector<int> map(g.n, -1);
  std::vector<bool> used(h.n, false);
  map[g.e] = h.e;
  used[h.e] = true;
  detail::all_isomorphisms_rec(g, h, map, used, 0, out);
  return out;
}

}  // namespace lptwist
