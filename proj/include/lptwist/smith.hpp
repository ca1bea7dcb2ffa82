#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

namespace lptwist {

// Dense integer matrices, small sizes only. Used to solve A x = b over Z_M
// by diagonalizing A with unimodular row/column operations.

namespace snf {

using i64 = std::int64_t;
using Mat = std::vector<std::vector<i64>>;

inline i64 mod_pos(i64 a, i64 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  i64 x1, y1;
  i64 g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::optional<i64> mod_inverse(i64 a, i64 m) {
  i64 x, y;
  i64 g = egcd(mod_pos(a, m), m, x, y);
  if (g != 1) return std::nullopt;
  return mod_pos(x, m);
}

// Diagonalizes A in place by integer row/column operations, mirroring the
// row operations on b and accumulating the column operations in V, so that
// solutions of (diag) y = b correspond to x = V y.
inline void diagonalize(Mat& a, std::vector<i64>& b, Mat& v) {
  int r = int(a.size());
  int c = r ? int(a[0].size()) : 0;
  v.assign(c, std::vector<i64>(c, 0));
  for (int j = 0; j < c; ++j) v[j][j] = 1;

  int t = 0;
  while (t < r && t < c) {
    // locate a nonzero pivot of minimal magnitude
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (a[i][j] != 0 &&
            (pi < 0 || std::abs(a[i][j]) < std::abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    std::swap(b[t], b[pi]);
    for (int i = 0; i < r; ++i) std::swap(a[i][t], a[i][pj]);
    std::swap(v[t], v[pj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        i64 q = a[i][t] / a[t][t];
        for (int j = t; j < c; ++j) a[i][j] -= q * a[t][j];
        b[i] -= q * b[t];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          std::swap(b[t], b[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (a[t][j] == 0) continue;
        i64 q = a[t][j] / a[t][t];
        for (int i = 0; i < r; ++i) a[i][j] -= q * a[i][t];
        for (int k = 0; k < c; ++k) v[j][k] -= q * v[t][k];
        if (a[t][j] != 0) {
          for (int i = 0; i < r; ++i) std::swap(a[i][t], a[i][j]);
          std::swap(v[t], v[j]);
          clean = false;
        }
      }
    }
    ++t;
  }
}

// Solves A x = b (mod M); returns a solution with entries in [0, M) or
// nullopt when the system is inconsistent modulo M.
inline std::optional<std::vector<i64>> solve_mod(Mat a, std::vector<i64> b,
                                                 i64 m) {
  int r = int(a.size());
  int c = r ? int(a[0].size()) : 0;
  Mat v;
  diagonalize(a, b, v);

  std::vector<i64> y(c, 0);
  int rank = std::min(r, c);
  for (int t = 0; t < rank; ++t) {
    i64 d = a[t][t];
    i64 rhs = mod_pos(b[t], m);
    if (d == 0) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    i64 g = std::gcd(std::abs(d), m);
    if (rhs % g != 0) return std::nullopt;
    i64 mg = m / g;
    auto inv = mod_inverse((d / g), mg);
    if (!inv) return std::nullopt;  // cannot happen: d/g coprime to m/g
    y[t] = mod_pos((rhs / g) % mg * *inv, mg);
  }
  for (int t = rank; t < r; ++t)
    if (mod_pos(b[t], m) != 0) return std::nullopt;

  // x = V^T ... v rows hold the accumulated column basis: x_k = sum_t v[t][k] y_t
  std::vector<i64> x(c, 0);
  for (int t = 0; t < c; ++t) {
    if (y[t] == 0) continue;
    for (int k = 0; k < c; ++k)
      x[k] = mod_pos(x[k] + v[t][k] % m * y[t], m);
  }
  return x;
}

}  // namespace snf

}  // namespace lptwist
