#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lptwist/errors.hpp"

namespace lptwist {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

inline constexpr double kPInfinity = std::numeric_limits<double>::infinity();

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("LPTWIST_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 7157ULL;
}

// A two-sided bracket on an operator norm. lower == upper when method is
// "exact".
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  int iterations = 0;
};

inline void check_exponent(double p) {
  if (std::isnan(p) || (p < 1.0 && !std::isinf(p)))
    throw Error(ErrorKind::BadExponent, "p must satisfy 1 <= p <= inf");
}

inline double vector_pnorm(const Vec& v, double p) {
  if (std::isinf(p)) return v.lpNorm<Eigen::Infinity>();
  if (p == 1.0) return v.lpNorm<1>();
  if (p == 2.0) return v.norm();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

inline double one_norm(const Mat& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    best = std::max(best, m.col(j).lpNorm<1>());
  return best;
}

inline double infinity_norm(const Mat& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    best = std::max(best, m.row(i).lpNorm<1>());
  return best;
}

// spectral norm via the largest eigenvalue of M^H M
inline double two_norm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

namespace pnorm_detail {

inline Cplx csign(Cplx z) {
  double a = std::abs(z);
  return a == 0.0 ? Cplx(0.0) : z / a;
}

// duality map xi -> |xi|^{p-1} sign(xi)
inline Vec dual_map(const Vec& v, double p) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    out[i] = a == 0.0 ? Cplx(0.0) : std::pow(a, p - 1.0) * csign(v[i]);
  }
  return out;
}

// nonlinear power iteration from one start; returns the best ||Ax||_p seen
inline double boyd_iterate(const Mat& a, Vec x, double p, int max_iters,
                           int& used) {
  double q = p / (p - 1.0);
  double nx = vector_pnorm(x, p);
  if (nx == 0.0) return 0.0;
  x /= nx;
  double best = 0.0;
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    ++used;
    Vec y = a * x;
    double est = vector_pnorm(y, p);
    best = std::max(best, est);
    if (est == 0.0) break;
    if (prev >= 0.0 && std::abs(est - prev) <= 1e-10 * std::max(1.0, est))
      break;
    prev = est;
    Vec z = a.adjoint() * dual_map(y, p);
    x = dual_map(z, q);
    double n = vector_pnorm(x, p);
    if (n == 0.0) break;
    x /= n;
  }
  return best;
}

}  // namespace pnorm_detail

// Subordinate p->p matrix norm. Exact for p in {1, 2, inf}; otherwise a
// multistart nonlinear power iteration gives the lower bound and the upper
// bound is min(||A||_1^{1/p} ||A||_inf^{1-1/p}, sqrt(n) ||A||_2).
// Deterministic for a fixed seed.
inline NormEstimate pnorm(const Mat& m, double p,
                          std::uint64_t seed = default_seed(),
                          int random_starts = 32) {
  check_exponent(p);
  NormEstimate out;
  if (std::isinf(p)) {
    out.lower = out.upper = infinity_norm(m);
    out.method = "exact";
    return out;
  }
  if (p == 1.0) {
    out.lower = out.upper = one_norm(m);
    out.method = "exact";
    return out;
  }
  if (p == 2.0) {
    out.lower = out.upper = two_norm(m);
    out.method = "exact";
    return out;
  }

  const Eigen::Index n = m.cols();
  int used = 0;
  double lower = 0.0;

  // all basis starts when small; a strided subset for large matrices
  Eigen::Index stride = n > 64 ? (n + 31) / 32 : 1;
  for (Eigen::Index j = 0; j < n; j += stride) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    lower = std::max(lower, pnorm_detail::boyd_iterate(m, e, p, 10000, used));
  }
  if (n <= 8) {
    const Cplx phases[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        for (Cplx ph : phases) {
          Vec v = Vec::Zero(n);
          v[i] = 1.0;
          v[j] = ph;
          lower =
              std::max(lower, pnorm_detail::boyd_iterate(m, v, p, 10000, used));
        }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < random_starts; ++s) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
    lower = std::max(lower, pnorm_detail::boyd_iterate(m, v, p, 10000, used));
  }

  double riesz_thorin =
      std::pow(one_norm(m), 1.0 / p) * std::pow(infinity_norm(m), 1.0 - 1.0 / p);
  double upper = riesz_thorin;
  if (n <= 256) {
    double crude = std::sqrt(double(n)) * two_norm(m);
    upper = std::min(upper, crude);
  }
  out.lower = lower;
  out.upper = std::max(upper, lower);
  out.method = "power-iteration";
  out.iterations = used;
  return out;
}

namespace pnorm_detail {

// shrinking-step coordinate hill climb on the p-sphere, 2n real coordinates
inline double hill_climb(const Mat& m, Vec x, double p, int max_evals) {
  const Eigen::Index n = x.size();
  auto eval = [&](const Vec& v) -> double {
    double nv = vector_pnorm(v, p);
    if (nv == 0.0) return 0.0;
    return vector_pnorm(m * v, p) / nv;
  };
  double best = eval(x);
  double step = 0.1;
  int evals = 0;
  while (step > 1e-9 && evals < max_evals) {
    bool improved = false;
    for (Eigen::Index i = 0; i < n && evals < max_evals; ++i) {
      const Cplx dirs[4] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
      for (Cplx d : dirs) {
        Vec y = x;
        y[i] += d;
        double v = eval(y);
        ++evals;
        if (v > best) {
          best = v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace pnorm_detail

// Brute-force norm for n <= 3: deterministic grid over the complex p-sphere
// (first coordinate real by phase invariance) refined by local ascent.
// Test oracle only; independent of the power-iteration path.
inline double pnorm_oracle(const Mat& m, double p, int magnitude_steps = 24,
                           int phase_steps = 24) {
  check_exponent(p);
  const Eigen::Index n = m.cols();
  if (n > 3) throw Error(ErrorKind::TooLarge, "oracle limited to dimension 3");
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(m(0, 0));

  if (std::isinf(p)) {
    // extreme points: align phases against one row at a time
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Vec x(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        Cplx s = pnorm_detail::csign(m(i, j));
        x[j] = s == Cplx(0.0) ? Cplx(1.0) : std::conj(s);
      }
      best = std::max(best, vector_pnorm(m * x, kPInfinity));
    }
    return best;
  }

  const double two_pi = 2.0 * std::numbers::pi;
  double best = 0.0;
  Vec best_x;

  if (n == 2) {
    int K = magnitude_steps * magnitude_steps;  // finer 1-d magnitude grid
    for (int a = 0; a <= K; ++a) {
      double t = double(a) / K;
      double r0 = std::pow(1.0 - t, 1.0 / p), r1 = std::pow(t, 1.0 / p);
      for (int ph = 0; ph < phase_steps * 4; ++ph) {
        Vec x(2);
        x[0] = r0;
        x[1] = std::polar(r1, two_pi * ph / (phase_steps * 4));
        double v = vector_pnorm(m * x, p);
        if (v > best) {
          best = v;
          best_x = x;
        }
      }
    }
  } else {
    for (int a = 0; a <= magnitude_steps; ++a)
      for (int b = 0; a + b <= magnitude_steps; ++b) {
        double t1 = double(a) / magnitude_steps;
        double t2 = double(b) / magnitude_steps;
        double r0 = std::pow(std::max(0.0, 1.0 - t1 - t2), 1.0 / p);
        double r1 = std::pow(t1, 1.0 / p), r2 = std::pow(t2, 1.0 / p);
        for (int p2 = 0; p2 < phase_steps; ++p2)
          for (int p3 = 0; p3 < phase_steps; ++p3) {
            Vec x(3);
            x[0] = r0;
            x[1] = std::polar(r1, two_pi * p2 / phase_steps);
            x[2] = std::polar(r2, two_pi * p3 / phase_steps);
            double v = vector_pnorm(m * x, p);
            if (v > best) {
              best = v;
              best_x = x;
            }
          }
      }
  }
  if (best_x.size() > 0)
    best = std::max(best, pnorm_detail::hill_climb(m, best_x, p, 40000));
  return best;
}

// Conservative isometry test: exercises basis vectors, two-point vectors
// with fourth-root phases, and seeded random vectors, plus invertibility.
inline bool is_p_isometry(const Mat& m, double p, double tol = 1e-9,
                          std::uint64_t seed = default_seed(),
                          int random_checks = 16) {
  check_exponent(p);
  if (m.rows() != m.cols()) return false;
  const Eigen::Index n = m.rows();
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) return false;

  auto preserves = [&](const Vec& v) {
    double nv = vector_pnorm(v, p);
    return std::abs(vector_pnorm(m * v, p) - nv) <= tol * std::max(1.0, nv);
  };

  for (Eigen::Index j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    if (!preserves(e)) return false;
  }
  const Cplx phases[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Cplx ph : phases) {
        Vec v = Vec::Zero(n);
        v[i] = 1.0;
        v[j] = ph;
        if (!preserves(v)) return false;
      }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < random_checks; ++s) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
    if (!preserves(v)) return false;
  }
  return true;
}

}  // namespace lptwist
