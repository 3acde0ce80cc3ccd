// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/norms.hpp"

namespace conestokes {

WeightedNormSpec::WeightedNormSpec(SpaceTag t, int l, double b) : tag(t), order(l), beta(b) {
  if (l < 0 || l > 2) throw DomainError("WeightedNormSpec: order must be 0, 1 or 2");
  if ((t == SpaceTag::X || t == SpaceTag::DualXPart) && l != 1)
    throw DomainError("WeightedNormSpec: tag X requires order 1");
}

namespace {

SpatialPoint shift(const SpatialPoint& p, int axis, double h) {
  Vec3 x = p.cartesian();
  x[axis] += h;
  return SpatialPoint::from_cartesian(x);
}

}  // namespace

CVec3 FieldSample::grad_or_fd(const SpatialPoint& p) const {
  if (gradient) return (*gradient)(p);
  CVec3 g;
  const double h = fd_step_rel * p.r;
  for (int a = 0; a < 3; ++a)
    g[a] = (value(shift(p, a, h)) - value(shift(p, a, -h))) / (2.0 * h);
  return g;
}

std::array<cxd, 9> FieldSample::hess_or_fd(const SpatialPoint& p) const {
  if (hessian) return (*hessian)(p);
  std::array<cxd, 9> H;
  const double h = fd_step_rel * p.r;
  const cxd f0 = value(p);
  for (int a = 0; a < 3; ++a) {
    H[4 * a] = (value(shift(p, a, h)) - 2.0 * f0 + value(shift(p, a, -h))) / (h * h);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      Vec3 x = p.cartesian();
      auto at = [&](double da, double db) {
        Vec3 y = x;
        y[a] += da;
        y[b] += db;
        return value(SpatialPoint::from_cartesian(y));
      };
      const cxd v = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
      H[3 * a + b] = v;
      H[3 * b + a] = v;
    }
  return H;
}

double weighted_norm_sq(const WeightedNormSpec& spec, const FieldSample& field,
                        const QuadratureGrid& grid) {
  if (spec.tag == SpaceTag::X) {
    // |g|_{V_beta^1}^2 + |g|_{V_{beta+1}^0}^2; the second term bounds the
    // dual part of the norm from above.
    const double v1 = weighted_norm_sq({SpaceTag::V, 1, spec.beta}, field, grid);
    const double v0 = weighted_norm_sq({SpaceTag::V, 0, spec.beta + 1.0}, field, grid);
    return v1 + v0;
  }
  if (spec.tag == SpaceTag::DualXPart)
    return weighted_norm_sq({SpaceTag::V, 0, spec.beta + 1.0}, field, grid);

  const int l = spec.order;
  const bool is_e = spec.tag == SpaceTag::E;
  KahanSum acc;
  const auto& rad = grid.radial;
  const auto& cap = grid.cap;
  for (std::size_t ir = 0; ir < rad.r.size(); ++ir) {
    const double rr = rad.r[ir];
    const double wvol = rad.w[ir] * rr * rr;
    for (std::size_t it = 0; it < cap.theta.size(); ++it) {
      const double wang = cap.wtheta[it] * cap.wphi;
      for (double ph : cap.phi) {
        SpatialPoint p{rr, cap.theta[it], ph};
        double cell = 0.0;
        auto weight = [&](int order_of_term) {
          const double wv = std::pow(rr, 2.0 * (spec.beta - l + order_of_term));
          if (!is_e) return wv;
          return std::pow(rr, 2.0 * spec.beta) + wv;
        };
        const cxd v = field.value(p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw NumericError("weighted_norm: non-finite sample");
        cell += weight(0) * std::norm(v);
        if (l >= 1) {
          const CVec3 g = field.grad_or_fd(p);
          cell += weight(1) * (std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
        }
        if (l >= 2) {
          const auto H = field.hess_or_fd(p);
          double s2 = 0.0;
          for (const auto& h : H) s2 += std::norm(h);
          cell += weight(2) * s2;
        }
        acc.add(wvol * wang * cell);
      }
    }
  }
  return acc.value();
}

double weighted_norm(const WeightedNormSpec& spec, const FieldSample& field,
                     const QuadratureGrid& grid) {
  return std::sqrt(weighted_norm_sq(spec, field, grid));
}

}  // namespace conestokes
