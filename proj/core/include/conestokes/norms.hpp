// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "conestokes/quadrature.hpp"

namespace conestokes {

enum class SpaceTag { V, E, X, DualXPart };

// Weighted-space descriptor.  V and E are the radially weighted Sobolev
// scales of order l and weight beta; X is the order-1 combination whose dual
// part is evaluated through the V_{beta+1}^0 upper bound (the exact dual norm
// would require a solve).
struct WeightedNormSpec {
  SpaceTag tag = SpaceTag::V;
  int order = 0;     // l in {0, 1, 2}; tag X requires l == 1
  double beta = 0.0;

  WeightedNormSpec(SpaceTag t, int l, double b);
};

// A field together with optional analytic derivatives.  Missing derivatives
// are filled in by centered differences with a relative step.
struct FieldSample {
  std::function<cxd(const SpatialPoint&)> value;
  // first derivatives d/dx_i, optional
  std::optional<std::function<CVec3(const SpatialPoint&)>> gradient;
  // flattened second derivatives d2/dx_i dx_j (row-major 3x3), optional
  std::optional<std::function<std::array<cxd, 9>(const SpatialPoint&)>> hessian;
  double fd_step_rel = 1e-5;

  CVec3 grad_or_fd(const SpatialPoint& p) const;
  std::array<cxd, 9> hess_or_fd(const SpatialPoint& p) const;
};

// Discrete approximation of the weighted norm of a scalar field on the given
// grid.  Vector fields are handled componentwise by summing squares.
double weighted_norm(const WeightedNormSpec& spec, const FieldSample& field,
                     const QuadratureGrid& grid);

double weighted_norm_sq(const WeightedNormSpec& spec, const FieldSample& field,
                        const QuadratureGrid& grid);

}  // namespace conestokes
