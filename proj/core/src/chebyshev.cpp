// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/chebyshev.hpp"

namespace conestokes {

ChebBasis::ChebBasis(int n, double a, double b) : n_(n), a_(a), b_(b) {
  if (n < 4) throw DomainError("ChebBasis: need at least 4 nodes");
  nodes_.resize(n);
  bary_.resize(n);
  // Standard CGL points cos(pi k / (n-1)) mapped to [a, b], ascending.
  for (int k = 0; k < n; ++k) {
    const double t = std::cos(pi * k / (n - 1));  // 1 .. -1
    nodes_[k] = a + 0.5 * (b - a) * (1.0 - t);    // ascending, nodes_[0] == a
  }
  for (int k = 0; k < n; ++k) {
    bary_[k] = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == 0 || k == n - 1) bary_[k] *= 0.5;
  }
  D_.resize(n, n);
  // c_j weights of the classical CGL differentiation matrix.
  auto c = [n](int j) { return (j == 0 || j == n - 1) ? 2.0 : 1.0; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      D_(i, j) = (c(i) / c(j)) * sgn / (nodes_[i] - nodes_[j]);
    }
  }
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) s += D_(i, j);
    D_(i, i) = -s;  // rows of D annihilate constants exactly
  }
}

cxd ChebBasis::interpolate(const Eigen::VectorXcd& vals, double x) const {
  cxd num = 0.0;
  double den = 0.0;
  for (int k = 0; k < n_; ++k) {
    const double d = x - nodes_[k];
    if (std::abs(d) < 1e-14 * (std::abs(b_ - a_))) return vals[k];
    const double w = bary_[k] / d;
    num += w * vals[k];
    den += w;
  }
  return num / den;
}

cxd ChebBasis::extrapolate_to_lo(const Eigen::VectorXcd& vals) const {
  // Neville scheme through the first interior nodes.
  const int m = std::min(8, n_ - 1);
  std::vector<cxd> p(m);
  std::vector<double> xs(m);
  for (int i = 0; i < m; ++i) {
    p[i] = vals[i + 1];
    xs[i] = nodes_[i + 1];
  }
  const double x = nodes_[0];
  for (int level = 1; level < m; ++level)
    for (int i = 0; i < m - level; ++i)
      p[i] = ((x - xs[i + level]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + level]);
  return p[0];
}

ChebBasisPtr make_cheb_basis(int n, double a, double b) {
  return std::make_shared<const ChebBasis>(n, a, b);
}

}  // namespace conestokes
