// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace conestokes {

using cxd = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cxd, 3>;

constexpr double pi = 3.14159265358979323846;

// Thrown when input violates a documented precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when an iterative or quadrature process fails to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline CVec3 operator+(const CVec3& a, const CVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline CVec3 operator-(const CVec3& a, const CVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline CVec3 operator*(const cxd& c, const CVec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline cxd dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double cnorm(const CVec3& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// Square root with positive real part; on the imaginary axis the limit
// from Re s > 0 is used (principal branch does exactly that).
inline cxd sqrt_prh(const cxd& s) { return std::sqrt(s); }

// s^(p/2) with the same branch as sqrt_prh.
inline cxd pow_half(const cxd& s, int twice_power) {
  if (twice_power == 0) return {1.0, 0.0};
  const cxd rt = sqrt_prh(s);
  cxd out = std::pow(rt, std::abs(twice_power));
  if (twice_power < 0) out = 1.0 / out;
  return out;
}

// Compensated (Kahan) accumulator; keeps grid reductions deterministic and
// insensitive to the summation length.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

class KahanSumC {
 public:
  void add(const cxd& x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cxd value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

// Number of worker threads, controlled by the CONESTOKES_THREADS environment
// variable (the only environment knob). Defaults to 1.
int thread_count();

// Deterministic parallel map-reduce: f(i) is evaluated for i in [0, n) on
// thread_count() workers, results are merged in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace conestokes
