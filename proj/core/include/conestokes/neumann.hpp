// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "conestokes/profiles.hpp"

namespace conestokes {

// Orthonormalized angular eigenfunction factor: values(theta) * trig(m phi),
// with integral of the square over the cap equal to 1.
struct AngularProfile {
  int m = 0;
  Parity parity = Parity::Cos;
  ThetaProfile values;
  double normalization = 1.0;  // constant applied to the raw shooting solution
};

// One eigenvalue of the Neumann pencil on the cap, with all azimuthal orders
// that share it.  profiles.size() == multiplicity: order m = 0 contributes a
// single profile, m >= 1 contributes a Cos and a Sin copy.
struct NeumannEigenvalue {
  int index_j = 0;                  // j >= 1 ascending; j <= -1 mirrored branch
  double mu = 0.0;                  // degree
  double beltrami_eigenvalue = 0.0; // mu * (mu + 1)
  int multiplicity = 0;
  std::vector<int> m_list;
  std::vector<AngularProfile> profiles;
};

struct SpectrumOptions {
  double scan_step = 0.05;     // scan step in mu
  double bisect_tol = 1e-10;
  int profile_nodes = 96;      // Chebyshev nodes for stored eigenfunctions
  double tangency_rel = 1e-7;  // |F| dip (relative) flagged as a possible double root
};

struct NeumannSpectrum {
  std::vector<NeumannEigenvalue> eigenvalues;
  std::vector<std::string> tangency_flags;  // suspicious scan cells, never silently merged
};

// Integrates the associated Legendre equation of degree mu and order m from a
// series start on the axis to theta0; returns (value, d/dtheta) there.
// Preconditions: mu >= -1/2 and m >= 0.
std::pair<double, double> legendre_shoot(double mu, int m, double theta0);

// Same, also filling nodal values of the (unnormalized) solution on `basis`.
std::pair<double, double> legendre_shoot_collect(double mu, int m, double theta0,
                                                 const ChebBasis& basis,
                                                 Eigen::VectorXd& nodal_values);

// All Neumann eigenvalues with 0 <= mu <= mu_max over azimuthal orders up to
// m_max, with orthonormalized eigenfunctions; mu = 0 (constant) is always
// present.
NeumannSpectrum neumann_spectrum(const ConeSpec& cone, double mu_max, int m_max,
                                 const SpectrumOptions& opts = {});

// Mirror record with mu -> -1 - mu, same profiles.  Requires index_j >= 1.
NeumannEigenvalue negative_branch(const NeumannEigenvalue& e);

// Finite-difference residual of the eigen-equation on a uniform theta grid.
//   interior_max:  max over the grid of |delta(phi) + M phi| (raw operator)
//   legendre_form_max: the same residual scaled by sin^2(theta), i.e. the
//       residual of the associated Legendre equation in standard form; near
//       the axis the raw operator is coordinate-degenerate, the standard
//       form is the meaningful second-order-convergent quantity.
//   boundary_flux: |d phi / d theta| at theta0 (one-sided difference).
struct BeltramiResidualReport {
  double interior_max = 0.0;
  double legendre_form_max = 0.0;
  double boundary_flux = 0.0;
};

BeltramiResidualReport beltrami_residual(const NeumannEigenvalue& e, const AngularProfile& profile,
                                         int n_grid);

// Finds the eigenvalue record with given index, throws if absent.
const NeumannEigenvalue& eigen_by_index(const NeumannSpectrum& spec, int j);

}  // namespace conestokes
