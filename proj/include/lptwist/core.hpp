#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <random>
#include <string>
#include <vector>

#include "lptwist/errors.hpp"
#include "lptwist/pnorm.hpp"

namespace lptwist {

struct HermitianVerdict {
  bool hermitian = false;
  bool conclusive = false;
  double worst_excess = 0.0;  // max over the grid of (lower bound - 1)
  double worst_t = 0.0;

  explicit operator bool() const { return hermitian; }
};

// Evidence-grade check of || exp(itA) || = 1 on a symmetric grid, refined
// near candidate failures. A lower bound above 1 + tol at any t is a
// conclusive rejection; upper bounds at most 1 + tol everywhere is a pass.
// Anything else is flagged inconclusive rather than silently passed.
inline HermitianVerdict hermitian_test(const Mat& a, double p,
                                       double tol = 1e-7, double t_max = 5.0,
                                       int grid_points = 41,
                                       std::uint64_t seed = default_seed()) {
  check_exponent(p);
  if (p == 2.0)
    throw Error(ErrorKind::BadExponent, "hermitian test requires p != 2");
  if (grid_points < 3 || t_max <= 0.0)
    throw Error(ErrorKind::ValidationError, "bad grid");

  HermitianVerdict out;
  std::vector<double> suspicious;
  double worst_upper = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double t = -t_max + 2.0 * t_max * double(i) / (grid_points - 1);
    Mat e = (Cplx(0.0, t) * a).exp();
    NormEstimate est = pnorm(e, p, seed, 8);
    if (est.lower - 1.0 > out.worst_excess) {
      out.worst_excess = est.lower - 1.0;
      out.worst_t = t;
    }
    if (est.lower > 1.0 + tol) {
      out.hermitian = false;
      out.conclusive = true;
      return out;
    }
    if (est.upper > 1.0 + tol) suspicious.push_back(t);
    worst_upper = std::max(worst_upper, est.upper);
  }

  // refine around grid points whose upper bound was not conclusive
  double step = t_max / (grid_points - 1);
  for (double t0 : suspicious) {
    for (int k = -2; k <= 2; ++k) {
      double t = t0 + 0.5 * step * k;
      Mat e = (Cplx(0.0, t) * a).exp();
      NormEstimate est = pnorm(e, p, seed, 32);
      if (est.lower - 1.0 > out.worst_excess) {
        out.worst_excess = est.lower - 1.0;
        out.worst_t = t;
      }
      if (est.lower > 1.0 + tol) {
        out.hermitian = false;
        out.conclusive = true;
        return out;
      }
    }
  }

  if (worst_upper <= 1.0 + tol) {
    out.hermitian = true;
    out.conclusive = true;
  } else {
    // brackets never rose above tol on the lower side but the upper bounds
    // did not certify the pass either
    out.hermitian = true;
    out.conclusive = false;
  }
  return out;
}

struct CoreResult {
  std::vector<Mat> hermitian_basis;  // real basis of the hermitian part
  int complex_dim = 0;               // dim of core = A_h + iA_h over C
  bool conclusive = false;
  std::string note;
};

// The largest self-adjoint-like subalgebra: hermitian elements of the span
// plus i times them. Candidates come from the real-diagonal slice of the
// algebra (solved as a real linear system); each candidate is verified with
// the grid test and the probe directions outside the slice must fail it.
inline CoreResult core_basis(const std::vector<Mat>& basis, double p,
                             double tol = 1e-7,
                             std::uint64_t seed = default_seed()) {
  check_exponent(p);
  if (p == 2.0)
    throw Error(ErrorKind::BadExponent, "the core computation requires p != 2");
  if (basis.empty()) throw Error(ErrorKind::ValidationError, "empty basis");
  const Eigen::Index n = basis.front().rows();
  const int k = int(basis.size());

  // real unknowns (a_j, b_j) with sum (a_j + i b_j) B_j real diagonal
  Eigen::MatrixXd sys(2 * n * n, 2 * k);
  sys.setZero();
  for (int j = 0; j < k; ++j)
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        Cplx v = basis[j](r, c);
        Eigen::Index row_re = 2 * (r * n + c), row_im = row_re + 1;
        if (r == c) {
          // diagonal: imaginary part must vanish
          sys(row_im, 2 * j) = v.imag();
          sys(row_im, 2 * j + 1) = v.real();
        } else {
          // off-diagonal: both parts must vanish
          sys(row_re, 2 * j) = v.real();
          sys(row_re, 2 * j + 1) = -v.imag();
          sys(row_im, 2 * j) = v.imag();
          sys(row_im, 2 * j + 1) = v.real();
        }
      }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);

  CoreResult out;
  out.conclusive = true;
  for (Eigen::Index j = 0; j < 2 * k; ++j) {
    if (j < sv.size() && sv(j) > cutoff) continue;
    Eigen::VectorXd c = svd.matrixV().col(j);
    Mat h = Mat::Zero(n, n);
    for (int b = 0; b < k; ++b) h += Cplx(c[2 * b], c[2 * b + 1]) * basis[b];
    if (h.cwiseAbs().maxCoeff() < 1e-12) continue;
    h /= h.cwiseAbs().maxCoeff();
    auto verdict = hermitian_test(h, p, tol, 5.0, 41, seed);
    if (!verdict.hermitian) {
      out.conclusive = false;
      out.note = "real-diagonal candidate failed the grid test";
      continue;
    }
    if (!verdict.conclusive) out.conclusive = false;
    out.hermitian_basis.push_back(h);
  }
  out.complex_dim = int(out.hermitian_basis.size());

  // probe directions outside the slice: none may pass the grid test
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto project_off = [&](Mat v) {
    for (const Mat& h : out.hermitian_basis) {
      Cplx hh = (h.adjoint() * h).trace();
      v -= ((h.adjoint() * v).trace() / hh) * h;
      // the core is closed under i, so remove that direction as well
      Mat ih = Cplx(0, 1) * h;
      v -= ((ih.adjoint() * v).trace() / hh) * ih;
    }
    return v;
  };
  int probes = 0;
  for (int j = 0; j < k && probes < 2 * k + 8; ++j, ++probes) {
    Mat v = project_off(basis[j]);
    if (v.cwiseAbs().maxCoeff() < 1e-9) continue;
    v /= v.cwiseAbs().maxCoeff();
    auto verdict = hermitian_test(v, p, tol, 5.0, 21, seed);
    if (verdict.hermitian && verdict.conclusive) {
      out.conclusive = false;
      out.note = "a direction outside the real-diagonal slice passed the test";
    }
  }
  for (int j = 0; j < 8; ++j) {
    Mat v = Mat::Zero(n, n);
    for (const Mat& b : basis) v += Cplx(u(rng), u(rng)) * b;
    v = project_off(v);
    if (v.cwiseAbs().maxCoeff() < 1e-9) continue;
    v /= v.cwiseAbs().maxCoeff();
    auto verdict = hermitian_test(v, p, tol, 5.0, 21, seed);
    if (verdict.hermitian && verdict.conclusive) {
      out.conclusive = false;
      out.note = "a direction outside the real-diagonal slice passed the test";
    }
  }
  return out;
}

}  // namespace lptwist
