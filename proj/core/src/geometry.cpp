// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/geometry.hpp"

#include <algorithm>
#include <cstdio>

namespace conestokes {

int thread_count() {
  static const int n = [] {
    const char* env = std::getenv("CONESTOKES_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return v > 0 ? v : 1;
  }();
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const int nw = thread_count();
  if (nw <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> workers;
  std::size_t chunk = (n + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : workers) t.join();
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

double smoothstep_d2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
}

ConeSpec ConeSpec::circular(double theta0) {
  const double cap = std::sin(std::min(theta0, pi - theta0));
  return circular(theta0, 0.5 * cap);
}

ConeSpec ConeSpec::circular(double theta0, double delta_c) {
  if (!(theta0 > 0.0 && theta0 < pi)) throw DomainError("ConeSpec: half_angle must lie in (0, pi)");
  const double bound = std::sin(std::min(theta0, pi - theta0));
  if (!(delta_c > 0.0 && delta_c <= bound))
    throw DomainError("ConeSpec: layer_width must lie in (0, sin(min(theta0, pi-theta0))]");
  ConeSpec c;
  c.half_angle = theta0;
  c.layer_width = delta_c;
  c.cap_area = 2.0 * pi * (1.0 - std::cos(theta0));
  return c;
}

double ConeSpec::nu_hat(double theta) const {
  const double d = half_angle - theta;
  if (d <= 0.5 * pi) return std::sin(d);
  return 1.0;  // nearest boundary point is the vertex
}

double ConeSpec::lap_nu_factor(double theta) const {
  const double d = half_angle - theta;
  return 2.0 * std::sin(d) - std::cos(2.0 * theta - half_angle) / std::sin(theta);
}

Vec3 SpatialPoint::cartesian() const {
  const double st = std::sin(theta);
  return {r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta)};
}

SpatialPoint SpatialPoint::from_cartesian(const Vec3& x) {
  SpatialPoint p;
  p.r = norm(x);
  if (p.r == 0.0) throw DomainError("SpatialPoint: vertex is not an interior point");
  p.theta = std::acos(std::clamp(x[2] / p.r, -1.0, 1.0));
  p.phi = std::atan2(x[1], x[0]);
  if (p.phi < 0.0) p.phi += 2.0 * pi;
  return p;
}

void require_inside(const ConeSpec& cone, const SpatialPoint& p) {
  if (!(p.r > 0.0)) throw DomainError("point has r <= 0");
  if (!(p.theta >= 0.0 && p.theta < cone.half_angle))
    throw DomainError("point lies outside the open cone");
}

double distance_to_boundary(const ConeSpec& cone, const SpatialPoint& p) {
  if (!(p.r > 0.0) || p.theta > cone.half_angle)
    throw DomainError("distance_to_boundary: point outside the closed cone");
  return p.r * cone.nu_hat(p.theta);
}

Vec3 distance_gradient(const ConeSpec& cone, const SpatialPoint& p) {
  require_inside(cone, p);
  if (!cone.in_collar(p.theta))
    throw DomainError("distance_gradient: point outside the smooth collar");
  const double d = cone.half_angle - p.theta;
  const Vec3 er = e_r(p.theta, p.phi);
  const Vec3 et = e_theta(p.theta, p.phi);
  return std::sin(d) * er + (-std::cos(d)) * et;
}

std::pair<double, Vec3> split_tangential(const ConeSpec& cone, const SpatialPoint& p, const Vec3& v) {
  const Vec3 n = distance_gradient(cone, p);
  const double vn = dot(v, n);
  return {vn, v - vn * n};
}

double chi_cutoff(const ConeSpec& cone, double t) {
  const double h = 0.5 * cone.layer_width;
  return 1.0 - smoothstep((t - h) / h);
}

double chi_cutoff_d1(const ConeSpec& cone, double t) {
  const double h = 0.5 * cone.layer_width;
  return -smoothstep_d1((t - h) / h) / h;
}

double chi_cutoff_d2(const ConeSpec& cone, double t) {
  const double h = 0.5 * cone.layer_width;
  return -smoothstep_d2((t - h) / h) / (h * h);
}

double eta_cutoff(double t) { return smoothstep(2.0 * t - 1.0); }
double eta_cutoff_d1(double t) { return 2.0 * smoothstep_d1(2.0 * t - 1.0); }
double eta_cutoff_d2(double t) { return 4.0 * smoothstep_d2(2.0 * t - 1.0); }

double eta_s_cutoff(const cxd& s, double r) { return eta_cutoff(std::abs(s) * r * r); }

Vec3 e_r(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Vec3 e_theta(double theta, double phi) {
  const double ct = std::cos(theta);
  return {ct * std::cos(phi), ct * std::sin(phi), -std::sin(theta)};
}

Vec3 e_phi(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

}  // namespace conestokes
