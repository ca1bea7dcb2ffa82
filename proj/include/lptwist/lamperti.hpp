#pragma once

#include <string>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/pnorm.hpp"

namespace lptwist {

// An invertible l^p isometry in multiplier-times-permutation form:
// M = diag(f) P with P[x,z] = [x == phi[z]], so phi sends the column index
// to the row carrying its nonzero entry and f is read off rows.
struct IsometryForm {
  Vec f;                 // unimodular, indexed by rows
  std::vector<int> phi;  // column -> row bijection

  int dim() const { return int(phi.size()); }

  Mat to_matrix() const {
    int n = dim();
    Mat m = Mat::Zero(n, n);
    for (int z = 0; z < n; ++z) m(phi[z], z) = f[phi[z]];
    return m;
  }
};

// For counting measure and p != 2, an invertible isometry must be a
// unimodular diagonal times a permutation: one entry of modulus 1 per
// column. Rejects anything else.
inline IsometryForm lamperti_decompose(const Mat& m, double p,
                                       double tol = 1e-9) {
  check_exponent(p);
  if (p == 2.0)
    throw Error(ErrorKind::BadExponent, "decomposition requires p != 2");
  if (m.rows() != m.cols())
    throw Error(ErrorKind::NotAnIsometry, "matrix is not square");
  const int n = int(m.rows());

  IsometryForm out;
  out.f = Vec::Zero(n);
  out.phi.assign(n, -1);
  std::vector<bool> row_used(n, false);
  for (int z = 0; z < n; ++z) {
    int hit = -1;
    for (int x = 0; x < n; ++x) {
      if (std::abs(m(x, z)) <= tol) continue;
      if (hit >= 0)
        throw Error(ErrorKind::NotAnIsometry,
                    "column " + std::to_string(z) + " has two entries above tol");
      hit = x;
    }
    if (hit < 0)
      throw Error(ErrorKind::NotAnIsometry,
                  "column " + std::to_string(z) + " is zero");
    if (std::abs(std::abs(m(hit, z)) - 1.0) > tol)
      throw Error(ErrorKind::NotAnIsometry,
                  "entry modulus is not 1 in column " + std::to_string(z));
    if (row_used[hit])
      throw Error(ErrorKind::NotAnIsometry, "row hit twice; not a bijection");
    row_used[hit] = true;
    out.phi[z] = hit;
    out.f[hit] = m(hit, z);
  }
  return out;
}

// max(||f-g||_inf, 2 [phi != psi])
inline double isometry_distance(const IsometryForm& a, const IsometryForm& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::MismatchedCarriers, "dimension mismatch");
  if (a.phi != b.phi) return 2.0;
  double d = 0.0;
  for (int x = 0; x < a.dim(); ++x)
    d = std::max(d, std::abs(a.f[x] - b.f[x]));
  return d;
}

}  // namespace lptwist
