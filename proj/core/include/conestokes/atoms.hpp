// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "conestokes/profiles.hpp"

namespace conestokes {

// A singular atom is the product
//
//   coef * s^(s2/2) * r^(mu + r_off) * (log r)^log_pow
//        * [ (nu sqrt(s))^nu_pow * exp(-nu sqrt(s)) ]   (layer atoms)
//        * [ chi(nu / r) ]                              (collar-wrapped atoms)
//        * angular factor (theta profile x azimuthal trig)
//
// where nu is the boundary distance and mu the base radial exponent owned by
// the surrounding ledger.  Exponent bookkeeping is exact integer arithmetic;
// only the theta profiles are numeric.
struct AtomExponents {
  int s2 = 0;       // twice the s-exponent
  int r_off = 0;    // radial exponent offset against mu
  int log_pow = 0;  // power of log r
  int nu_pow = 0;   // power of (nu sqrt(s)); layer atoms only
  bool layer = false;
  bool chi = false;

  // order in the residual grading: deficit of the radial exponent below mu
  int deficit() const { return -r_off; }
};

struct ScalarAtom {
  cxd coef = 1.0;
  AtomExponents e;
  ScalarAngular ang;
};

struct VectorAtom {
  cxd coef = 1.0;
  AtomExponents e;
  VectorAngular ang;
};

using ScalarAtoms = std::vector<ScalarAtom>;
using VectorAtoms = std::vector<VectorAtom>;

// Shared evaluation context.  Interior atoms carry profiles on the full
// basis [0, theta0]; layer atoms live on the collar basis, which stays clear
// of the axis so that the coordinate factors 1/sin(theta) are benign there.
struct AtomContext {
  ConeSpec cone;
  ChebBasisPtr basis;         // [0, theta0]
  ChebBasisPtr collar_basis;  // [theta_c, theta0], covers the collar cutoff

  double collar_theta_lo() const {
    return cone.half_angle - std::asin(std::min(1.0, cone.layer_width));
  }
};

AtomContext make_atom_context(const ConeSpec& cone, int n_full = 96, int n_collar = 96);

// --- algebra -------------------------------------------------------------

ScalarAtoms merge_atoms(ScalarAtoms in);
VectorAtoms merge_atoms(VectorAtoms in);

// Drops atoms whose weight |coef| * sup|profile| falls below rel_tol times
// the largest weight in the list (layer atoms measure the sup on the collar,
// where they are meaningful).
ScalarAtoms prune_atoms(const AtomContext& ctx, ScalarAtoms in, double rel_tol = 1e-11);
VectorAtoms prune_atoms(const AtomContext& ctx, VectorAtoms in, double rel_tol = 1e-11);

VectorAtoms gradient(const AtomContext& ctx, const ScalarAtoms& p, double mu);
ScalarAtoms divergence(const AtomContext& ctx, const VectorAtoms& u, double mu);
VectorAtoms vector_laplacian(const AtomContext& ctx, const VectorAtoms& u, double mu);
ScalarAtoms scalar_laplacian(const AtomContext& ctx, const ScalarAtoms& p, double mu);

// (s - Laplacian) u + grad p as a symbolic ledger.  Collar cutoffs are
// treated as locally constant; their commutator terms live on the cutoff
// ring only and are produced by the pointwise operator evaluator instead.
VectorAtoms stokes_force(const AtomContext& ctx, const VectorAtoms& u, const ScalarAtoms& p,
                         double mu);

// Normal/tangential split against grad(nu) on the collar (profile level).
ScalarAngular normal_component(const AtomContext& ctx, const VectorAngular& v);
VectorAngular tangential_component(const AtomContext& ctx, const VectorAngular& v);

// Symbolic radial derivative (exact in r, log r and the layer factors).
ScalarAtoms radial_derivative(const ScalarAtoms& p, double mu);
VectorAtoms radial_derivative(const VectorAtoms& u, double mu);

// --- evaluation ----------------------------------------------------------

cxd eval_scalar(const AtomContext& ctx, const ScalarAtoms& atoms, double mu,
                const SpatialPoint& x, const cxd& s);
CVec3 eval_vector(const AtomContext& ctx, const VectorAtoms& atoms, double mu,
                  const SpatialPoint& x, const cxd& s);

// Largest atom weight of a ledger (used for grading assertions).
double ledger_scale(const AtomContext& ctx, const ScalarAtoms& atoms);
double ledger_scale(const AtomContext& ctx, const VectorAtoms& atoms);

}  // namespace conestokes
