#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/pnorm.hpp"

namespace lptwist {

// Solves X M_i = M_i X for all i as a linear system on vec(X) and returns a
// Frobenius-orthonormal basis of the solution space.
inline std::vector<Mat> commutant(const std::vector<Mat>& mats,
                                  double tol = 1e-10) {
  if (mats.empty()) throw Error(ErrorKind::ValidationError, "no matrices");
  const Eigen::Index n = mats.front().rows();
  for (const Mat& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw Error(ErrorKind::ValidationError, "sizes disagree");

  // vec is column-major: vec(XM) = (M^T (x) I) vec(X), vec(MX) = (I (x) M) vec(X)
  const Eigen::Index nn = n * n;
  Mat sys(mats.size() * nn, nn);
  sys.setZero();
  for (size_t k = 0; k < mats.size(); ++k) {
    const Mat& m = mats[k];
    for (Eigen::Index col = 0; col < n; ++col)
      for (Eigen::Index row = 0; row < n; ++row) {
        Eigen::Index x_idx = col * n + row;  // X(row, col)
        // (XM)(row, j) += X(row, col) M(col, j)
        for (Eigen::Index j = 0; j < n; ++j)
          sys(k * nn + j * n + row, x_idx) += m(col, j);
        // (MX)(i, col) += M(i, row) X(row, col)
        for (Eigen::Index i = 0; i < n; ++i)
          sys(k * nn + col * n + i, x_idx) -= m(i, row);
      }
  }

  Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::vector<Mat> basis;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv(j) > cutoff) continue;
    Vec v = svd.matrixV().col(j);
    Mat x(n, n);
    for (Eigen::Index col = 0; col < n; ++col)
      for (Eigen::Index row = 0; row < n; ++row) x(row, col) = v[col * n + row];
    basis.push_back(x);
  }
  // columns with singular value ~0 beyond rank are already orthonormal in V
  return basis;
}

inline std::vector<Mat> double_commutant(const std::vector<Mat>& mats,
                                         double tol = 1e-10) {
  return commutant(commutant(mats, tol), tol);
}

}  // namespace lptwist
