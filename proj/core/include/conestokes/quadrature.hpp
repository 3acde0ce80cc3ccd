// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "conestokes/geometry.hpp"

namespace conestokes {

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on Legendre P_n).
struct GaussRule {
  std::vector<double> x, w;
  explicit GaussRule(int n);
};

// Nodes/weights mapped to [a, b].
void gauss_on_interval(const GaussRule& g, double a, double b,
                       std::vector<double>& x, std::vector<double>& w);

// Quadrature over the spherical cap: Gauss-Legendre in cos(theta) times a
// uniform (trapezoidal) azimuth grid.  An optional collar panel refines the
// band next to the cap boundary, where boundary-layer integrands live.
struct CapRule {
  std::vector<double> theta, wtheta;  // nodes and weights of the polar factor
  std::vector<double> phi;            // azimuth nodes, weight 2*pi/n each
  double wphi = 0.0;

  CapRule(const ConeSpec& cone, int n_theta, int n_phi, int n_collar = 0);

  // integrates f(theta, phi) over the cap
  template <typename F>
  auto integrate(F&& f) const -> decltype(f(0.0, 0.0)) {
    using R = decltype(f(0.0, 0.0));
    R acc{};
    for (std::size_t i = 0; i < theta.size(); ++i) {
      R row{};
      for (double p : phi) row += f(theta[i], p);
      acc += wtheta[i] * wphi * row;
    }
    return acc;
  }
};

// Radial quadrature on [r_min, r_max]: per-panel Gauss with geometric panel
// grading toward r_min (power-law integrands).
struct RadialRule {
  std::vector<double> r, w;
  RadialRule(double r_min, double r_max, int panels, int order, double grading = 1.6);
};

// Tensor grid over the truncated cone (radial x cap), with positive weights
// including the r^2 volume factor.
struct QuadratureGrid {
  ConeSpec cone;
  RadialRule radial;
  CapRule cap;

  QuadratureGrid(const ConeSpec& c, double r_min, double r_max, int radial_panels,
                 int radial_order, int n_theta, int n_phi, int n_collar = 0);

  // Sum of w * f(point) with the full volume weight r^2 sin(theta).
  cxd integrate(const std::function<cxd(const SpatialPoint&)>& f) const;

  std::size_t size() const { return radial.r.size() * cap.theta.size() * cap.phi.size(); }
};

}  // namespace conestokes
