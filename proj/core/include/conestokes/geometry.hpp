// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "conestokes/common.hpp"

namespace conestokes {

// C2 quintic smoothstep: 0 for x<=0, 1 for x>=1, 6x^5-15x^4+10x^3 between.
double smoothstep(double x);
double smoothstep_d1(double x);
double smoothstep_d2(double x);

// Circular cone K = { x : x/|x| in the cap of half-angle theta0 }.
//
// layer_width is the fraction delta_c of the collar nu(x) < delta_c * |x| on
// which the boundary-distance function is smooth with |grad nu| = 1.  For a
// circular cone any delta_c <= sin(min(theta0, pi - theta0)) qualifies; the
// default takes half of that bound.
struct ConeSpec {
  double half_angle = 0.0;  // theta0 in (0, pi)
  double layer_width = 0.0; // delta_c in (0, 1]
  double cap_area = 0.0;    // 2*pi*(1 - cos(theta0))

  static ConeSpec circular(double theta0);
  static ConeSpec circular(double theta0, double delta_c);

  // nu(x)/|x| as a function of the polar angle (exact distance factor).
  double nu_hat(double theta) const;
  // Smooth extension sin(theta0 - theta) used inside boundary-layer factors;
  // it agrees with nu_hat wherever the collar cutoff is nonzero.
  double nu_hat_smooth(double theta) const { return std::sin(half_angle - theta); }
  double nu_hat_smooth_d1(double theta) const { return -std::cos(half_angle - theta); }
  double nu_hat_smooth_d2(double theta) const { return -std::sin(half_angle - theta); }

  // r * (Laplacian of nu) in the collar, a function of theta only.
  double lap_nu_factor(double theta) const;

  bool in_collar(double theta) const { return nu_hat(theta) < layer_width; }
};

struct SpatialPoint {
  double r = 0.0;      // radial distance > 0
  double theta = 0.0;  // polar angle in [0, theta0)
  double phi = 0.0;    // azimuth in [0, 2pi)

  Vec3 cartesian() const;
  static SpatialPoint from_cartesian(const Vec3& x);
};

// Validates that p lies strictly inside the cone.
void require_inside(const ConeSpec& cone, const SpatialPoint& p);

// Exact Euclidean distance from p to the boundary of the cone.  Positively
// homogeneous of degree 1; throws DomainError outside the closed cone.
double distance_to_boundary(const ConeSpec& cone, const SpatialPoint& p);

// grad nu at a collar point (unit vector); throws DomainError outside the
// collar where the distance function is not guaranteed smooth.
Vec3 distance_gradient(const ConeSpec& cone, const SpatialPoint& p);

// Splits v into the normal scalar v_nu = v . grad nu and the tangential part
// v_tau = v - v_nu grad nu.  Collar points only.
std::pair<double, Vec3> split_tangential(const ConeSpec& cone, const SpatialPoint& p, const Vec3& v);

// Collar cutoff: 1 for 2t < delta_c, 0 for t > delta_c, C2 in between.
double chi_cutoff(const ConeSpec& cone, double t);
double chi_cutoff_d1(const ConeSpec& cone, double t);
double chi_cutoff_d2(const ConeSpec& cone, double t);

// Radial cutoff: 0 for t < 1/2, 1 for t > 1, C2 in between.
double eta_cutoff(double t);
double eta_cutoff_d1(double t);
double eta_cutoff_d2(double t);

// eta(|s| r^2), the scale-adapted cutoff.
double eta_s_cutoff(const cxd& s, double r);

// Spherical orthonormal frame at (theta, phi).
Vec3 e_r(double theta, double phi);
Vec3 e_theta(double theta, double phi);
Vec3 e_phi(double phi);

}  // namespace conestokes
