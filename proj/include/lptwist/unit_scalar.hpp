#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>

#include "lptwist/errors.hpp"

namespace lptwist {

// An element of the circle group. Exact values are stored as reduced
// fractions k/m meaning e^{2*pi*i*k/m}; anything else falls back to a unit
// complex float. Mixing exact with float demotes to float.
class UnitScalar {
 public:
  static constexpr double kModulusTol = 1e-9;

  UnitScalar() : exact_(true), k_(0), m_(1), z_(1.0, 0.0) {}

  static UnitScalar root_of_unity(std::int64_t k, std::int64_t m) {
    if (m < 1) throw Error(ErrorKind::NotExact, "denominator must be >= 1");
    k %= m;
    if (k < 0) k += m;
    std::int64_t g = std::gcd(k, m);
    if (g == 0) g = m;
    UnitScalar u;
    u.exact_ = true;
    u.k_ = k / g;
    u.m_ = m / g;
    u.z_ = std::polar(1.0, 2.0 * std::numbers::pi * double(u.k_) / double(u.m_));
    return u;
  }

  static UnitScalar one() { return root_of_unity(0, 1); }
  static UnitScalar minus_one() { return root_of_unity(1, 2); }
  static UnitScalar i() { return root_of_unity(1, 4); }

  static UnitScalar from_complex(std::complex<double> z) {
    double r = std::abs(z);
    if (std::abs(r - 1.0) > kModulusTol)
      throw Error(ErrorKind::ValidationError,
                  "modulus " + std::to_string(r) + " is not 1 within 1e-9");
    UnitScalar u;
    u.exact_ = false;
    u.z_ = z / r;
    return u;
  }

  // Snaps a unit complex to the mu_m grid when it is within tol of a grid
  // point; otherwise returns nullopt.
  static std::optional<UnitScalar> snap(std::complex<double> z, std::int64_t m,
                                        double tol = 1e-9) {
    double r = std::abs(z);
    if (std::abs(r - 1.0) > tol) return std::nullopt;
    double arg = std::arg(z) / (2.0 * std::numbers::pi) * double(m);
    std::int64_t k = std::llround(arg);
    UnitScalar u = root_of_unity(k, m);
    if (std::abs(u.value() - z / r) > tol) return std::nullopt;
    return u;
  }

  bool is_exact() const { return exact_; }
  std::int64_t numerator() const { return k_; }
  std::int64_t denominator() const { return m_; }
  std::complex<double> value() const { return z_; }

  UnitScalar operator*(const UnitScalar& o) const {
    if (exact_ && o.exact_) {
      std::int64_t m = std::lcm(m_, o.m_);
      return root_of_unity(k_ * (m / m_) + o.k_ * (m / o.m_), m);
    }
    return from_complex(z_ * o.z_);
  }

  UnitScalar inverse() const {
    if (exact_) return root_of_unity(-k_, m_);
    return from_complex(std::conj(z_));
  }

  UnitScalar conj() const { return inverse(); }

  UnitScalar pow(std::int64_t e) const {
    if (exact_) return root_of_unity(k_ * e, m_);
    return from_complex(std::polar(1.0, std::arg(z_) * double(e)));
  }

  bool operator==(const UnitScalar& o) const {
    if (exact_ && o.exact_) return k_ == o.k_ && m_ == o.m_;
    return std::abs(z_ - o.z_) <= kModulusTol;
  }
  bool operator!=(const UnitScalar& o) const { return !(*this == o); }

  bool is_one() const { return *this == one(); }

 private:
  bool exact_;
  std::int64_t k_ = 0;
  std::int64_t m_ = 1;
  std::complex<double> z_;
};

}  // namespace lptwist
