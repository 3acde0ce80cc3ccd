// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/quadrature.hpp"

#include <algorithm>

namespace conestokes {

GaussRule::GaussRule(int n) : x(n), w(n) {
  if (n < 1) throw DomainError("GaussRule: order must be positive");
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    const double dp = n * (z * p0 - p1) / (z * z - 1.0);
    x[n - 1 - i] = z;
    w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

void gauss_on_interval(const GaussRule& g, double a, double b,
                       std::vector<double>& x, std::vector<double>& w) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    x.push_back(mid + half * g.x[i]);
    w.push_back(half * g.w[i]);
  }
}

CapRule::CapRule(const ConeSpec& cone, int n_theta, int n_phi, int n_collar) {
  if (n_theta < 2 || n_phi < 2) throw DomainError("CapRule: too few nodes");
  const double u_lo = std::cos(cone.half_angle), u_hi = 1.0;
  // Split in u = cos(theta); the collar panel sits next to u_lo.
  double u_split = u_lo;
  if (n_collar > 0) {
    const double theta_c = cone.half_angle - std::asin(std::min(1.0, cone.layer_width));
    u_split = std::cos(theta_c);
  }
  std::vector<double> u, wu;
  if (n_collar > 0) {
    GaussRule gc(n_collar);
    gauss_on_interval(gc, u_lo, u_split, u, wu);
  }
  GaussRule gi(n_theta);
  gauss_on_interval(gi, n_collar > 0 ? u_split : u_lo, u_hi, u, wu);
  theta.resize(u.size());
  wtheta.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    theta[i] = std::acos(std::clamp(u[i], -1.0, 1.0));
    wtheta[i] = wu[i];  // du already carries the sin(theta) Jacobian
  }
  phi.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) phi[j] = 2.0 * pi * j / n_phi;
  wphi = 2.0 * pi / n_phi;
}

RadialRule::RadialRule(double r_min, double r_max, int panels, int order, double grading) {
  if (!(r_min > 0.0 && r_max > r_min)) throw DomainError("RadialRule: need 0 < r_min < r_max");
  if (panels < 1 || order < 1) throw DomainError("RadialRule: bad panel/order counts");
  // Geometric breakpoints accumulate toward r_min.
  std::vector<double> bp(panels + 1);
  const double q = std::pow(r_max / r_min, 1.0 / panels);
  (void)grading;
  bp[0] = r_min;
  for (int i = 1; i <= panels; ++i) bp[i] = bp[i - 1] * q;
  bp[panels] = r_max;
  GaussRule g(order);
  for (int i = 0; i < panels; ++i) gauss_on_interval(g, bp[i], bp[i + 1], r, w);
}

QuadratureGrid::QuadratureGrid(const ConeSpec& c, double r_min, double r_max, int radial_panels,
                               int radial_order, int n_theta, int n_phi, int n_collar)
    : cone(c),
      radial(r_min, r_max, radial_panels, radial_order),
      cap(c, n_theta, n_phi, n_collar) {}

cxd QuadratureGrid::integrate(const std::function<cxd(const SpatialPoint&)>& f) const {
  KahanSumC acc;
  for (std::size_t ir = 0; ir < radial.r.size(); ++ir) {
    const double rr = radial.r[ir];
    const double wr = radial.w[ir] * rr * rr;
    for (std::size_t it = 0; it < cap.theta.size(); ++it) {
      for (double p : cap.phi) {
        SpatialPoint pt{rr, cap.theta[it], p};
        acc.add(wr * cap.wtheta[it] * cap.wphi * f(pt));
      }
    }
  }
  return acc.value();
}

}  // namespace conestokes
