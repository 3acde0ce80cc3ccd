// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/profiles.hpp"

namespace conestokes {

ThetaProfile::ThetaProfile(ChebBasisPtr basis, Eigen::VectorXcd vals)
    : basis_(std::move(basis)), vals_(std::move(vals)) {
  if (basis_ && vals_.size() != basis_->size())
    throw DomainError("ThetaProfile: value/basis size mismatch");
}

ThetaProfile ThetaProfile::constant(ChebBasisPtr basis, cxd value) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(basis->size(), value);
  return ThetaProfile(std::move(basis), std::move(v));
}

ThetaProfile ThetaProfile::from_function(ChebBasisPtr basis, const std::function<cxd(double)>& f) {
  Eigen::VectorXcd v(basis->size());
  for (int i = 0; i < basis->size(); ++i) v[i] = f(basis->nodes()[i]);
  return ThetaProfile(std::move(basis), std::move(v));
}

double ThetaProfile::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < vals_.size(); ++i) m = std::max(m, std::abs(vals_[i]));
  return m;
}

ThetaProfile ThetaProfile::derivative() const {
  return ThetaProfile(basis_, basis_->diff() * vals_);
}

ThetaProfile ThetaProfile::times(const ThetaProfile& o) const {
  return ThetaProfile(basis_, vals_.cwiseProduct(o.vals_));
}

ThetaProfile ThetaProfile::times_fn(const std::function<double(double)>& f) const {
  Eigen::VectorXcd v = vals_;
  for (int i = 0; i < v.size(); ++i) v[i] *= f(basis_->nodes()[i]);
  return ThetaProfile(basis_, std::move(v));
}

ThetaProfile ThetaProfile::scaled(cxd a) const { return ThetaProfile(basis_, a * vals_); }

ThetaProfile ThetaProfile::plus(const ThetaProfile& o) const {
  return ThetaProfile(basis_, vals_ + o.vals_);
}

ThetaProfile ThetaProfile::resample(const ChebBasisPtr& target) const {
  Eigen::VectorXcd v(target->size());
  for (int i = 0; i < target->size(); ++i) v[i] = eval(target->nodes()[i]);
  return ThetaProfile(target, std::move(v));
}

ThetaProfile ThetaProfile::map_interior(const std::function<cxd(int, double)>& f) const {
  // On a basis touching the axis the left endpoint value of a coordinate-
  // singular combination is recovered by extrapolation; away from the axis
  // every node is evaluated directly.
  const bool at_axis = basis_->lo() <= 1e-12;
  Eigen::VectorXcd v(vals_.size());
  for (int i = at_axis ? 1 : 0; i < vals_.size(); ++i) v[i] = f(i, basis_->nodes()[i]);
  if (!at_axis) return ThetaProfile(basis_, std::move(v));
  v[0] = 0.0;
  ThetaProfile out(basis_, std::move(v));
  out.vals_[0] = basis_->extrapolate_to_lo(out.vals_);
  return out;
}

ThetaProfile ThetaProfile::over_sin() const {
  return map_interior([this](int i, double th) { return vals_[i] / std::sin(th); });
}

ThetaProfile ThetaProfile::times_cot() const {
  return map_interior([this](int i, double th) { return vals_[i] * std::cos(th) / std::sin(th); });
}

ThetaProfile ThetaProfile::surface_laplacian(int m) const {
  const Eigen::VectorXcd d1 = basis_->diff() * vals_;
  const Eigen::VectorXcd d2 = basis_->diff() * d1;
  ThetaProfile tmp;
  return map_interior([&](int i, double th) {
    const double s = std::sin(th);
    return d2[i] + d1[i] * std::cos(th) / s - double(m) * double(m) * vals_[i] / (s * s);
  });
}

double trig_factor(Parity p, int m, double phi) {
  return p == Parity::Cos ? std::cos(m * phi) : std::sin(m * phi);
}

double trig_factor_phi_slot(Parity p, int m, double phi) {
  return p == Parity::Cos ? std::sin(m * phi) : std::cos(m * phi);
}

}  // namespace conestokes
