// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "conestokes/chebyshev.hpp"
#include "conestokes/geometry.hpp"

namespace conestokes {

// Azimuthal symmetry class.  A scalar of order m carries cos(m phi) (Cos) or
// sin(m phi) (Sin).  Vector fields in the spherical frame keep the scalar
// factor on the r- and theta-components while the phi-component carries the
// opposite trigonometric factor:
//   Cos:  (a_r cos, a_th cos, a_ph sin)
//   Sin:  (a_r sin, a_th sin, a_ph cos)
// This class is closed under gradients, divergences, vector Laplacians and
// multiplication by axisymmetric functions.
enum class Parity { Cos, Sin };

// Nodal function of theta on a shared Chebyshev-Gauss-Lobatto basis whose
// left endpoint is the cone axis.  Operations that divide by sin(theta)
// recover the axis value by polynomial extrapolation (all fields handled
// here are smooth on the axis).
class ThetaProfile {
 public:
  ThetaProfile() = default;
  ThetaProfile(ChebBasisPtr basis, Eigen::VectorXcd vals);

  static ThetaProfile constant(ChebBasisPtr basis, cxd value);
  static ThetaProfile from_function(ChebBasisPtr basis, const std::function<cxd(double)>& f);

  bool empty() const { return !basis_; }
  const ChebBasisPtr& basis() const { return basis_; }
  const Eigen::VectorXcd& values() const { return vals_; }

  cxd eval(double theta) const { return basis_->interpolate(vals_, theta); }
  double max_abs() const;

  // Barycentric resampling onto another basis (spectrally accurate for
  // smooth data; target nodes must lie inside the source interval).
  ThetaProfile resample(const ChebBasisPtr& target) const;

  ThetaProfile derivative() const;
  ThetaProfile times(const ThetaProfile& o) const;
  ThetaProfile times_fn(const std::function<double(double)>& f) const;
  ThetaProfile scaled(cxd a) const;
  ThetaProfile plus(const ThetaProfile& o) const;
  // A / sin(theta); requires A(0) = 0, the axis node is extrapolated.
  ThetaProfile over_sin() const;
  // A * cot(theta); the axis node is extrapolated.
  ThetaProfile times_cot() const;
  // A'' + cot A' - m^2 A / sin^2 (surface Laplacian of A trig(m phi)); the
  // axis node is extrapolated since the pieces are separately singular.
  ThetaProfile surface_laplacian(int m) const;

 private:
  ChebBasisPtr basis_;
  Eigen::VectorXcd vals_;
  ThetaProfile map_interior(const std::function<cxd(int, double)>& f) const;
};

// Scalar angular factor A(theta) * trig(m phi).
struct ScalarAngular {
  ThetaProfile A;
  int m = 0;
  Parity parity = Parity::Cos;
};

// Vector angular factor in the spherical frame, see Parity.
struct VectorAngular {
  ThetaProfile ar, ath, aph;
  int m = 0;
  Parity parity = Parity::Cos;
};

// Value of the trigonometric factor carried by a scalar of the class.
double trig_factor(Parity p, int m, double phi);
// Value of the factor carried by the phi-slot of a vector of the class.
double trig_factor_phi_slot(Parity p, int m, double phi);

}  // namespace conestokes
