// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <memory>

#include "conestokes/common.hpp"

namespace conestokes {

// Chebyshev-Gauss-Lobatto collocation basis on [a, b], nodes in ascending
// order.  The differentiation matrix uses the negative-sum trick to keep the
// diagonal consistent with the off-diagonal roundoff.
class ChebBasis {
 public:
  ChebBasis(int n, double a, double b);

  int size() const { return n_; }
  double lo() const { return a_; }
  double hi() const { return b_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::MatrixXd& diff() const { return D_; }

  // Barycentric interpolation of nodal values at x (exact at nodes).
  cxd interpolate(const Eigen::VectorXcd& vals, double x) const;

  // Polynomial extrapolation of the interior values to node 0 (the left
  // endpoint), used for removable singularities on the cone axis.
  cxd extrapolate_to_lo(const Eigen::VectorXcd& vals) const;

 private:
  int n_;
  double a_, b_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd bary_;  // barycentric weights
  Eigen::MatrixXd D_;
};

using ChebBasisPtr = std::shared_ptr<const ChebBasis>;

ChebBasisPtr make_cheb_basis(int n, double a, double b);

}  // namespace conestokes
