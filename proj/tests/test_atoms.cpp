// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "conestokes/atoms.hpp"

using namespace conestokes;

namespace {

AtomContext make_ctx(double theta0) { return make_atom_context(ConeSpec::circular(theta0)); }

// 4th-order centered differences of a scalar callable in Cartesian x.
cxd fd_d(const std::function<cxd(const Vec3&)>& f, Vec3 x, int a, double h) {
  Vec3 xp2 = x, xp = x, xm = x, xm2 = x;
  xp2[a] += 2 * h;
  xp[a] += h;
  xm[a] -= h;
  xm2[a] -= 2 * h;
  return (-f(xp2) + 8.0 * f(xp) - 8.0 * f(xm) + f(xm2)) / (12.0 * h);
}

cxd fd_lap(const std::function<cxd(const Vec3&)>& f, const Vec3& x, double h) {
  cxd acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    Vec3 xp2 = x, xp = x, xm = x, xm2 = x;
    xp2[a] += 2 * h;
    xp[a] += h;
    xm[a] -= h;
    xm2[a] -= 2 * h;
    acc += (-f(xp2) + 16.0 * f(xp) - 30.0 * f(x) + 16.0 * f(xm) - f(xm2)) / (12.0 * h * h);
  }
  return acc;
}

}  // namespace

TEST_CASE("atom calculus against Cartesian finite differences") {
  const AtomContext ctx = make_ctx(2.0 * pi / 5);
  const double mu = 1.3;
  const cxd s(0.8, 1.7);

  // scalar atom families to exercise: interior m=0, interior m=2 sin-class,
  // layer atom with a (nu sqrt s) power and a log factor
  std::vector<ScalarAtom> cases;
  {
    ScalarAtom a;
    a.coef = cxd(0.7, -0.3);
    a.e = {2, -1, 0, 0, false, false};
    a.ang = {ThetaProfile::from_function(ctx.basis, [](double th) { return std::cos(th) + 0.3; }),
             0, Parity::Cos};
    cases.push_back(a);
  }
  {
    ScalarAtom a;
    a.coef = cxd(-1.1, 0.2);
    a.e = {-1, 0, 1, 0, false, false};
    a.ang = {ThetaProfile::from_function(
                 ctx.basis, [](double th) { return std::sin(th) * std::sin(th) * (1.1 + th); }),
             2, Parity::Sin};
    cases.push_back(a);
  }
  {
    ScalarAtom a;
    a.coef = cxd(0.4, 0.9);
    a.e = {0, -2, 1, 2, true, false};
    a.ang = {ThetaProfile::from_function(ctx.collar_basis,
                                         [](double th) { return std::sin(th) * 0.8; }),
             1, Parity::Cos};
    cases.push_back(a);
  }

  for (std::size_t ic = 0; ic < cases.size(); ++ic) {
    CAPTURE(ic);
    const ScalarAtoms P{cases[ic]};
    auto eval = [&](const Vec3& x) {
      return eval_scalar(ctx, P, mu, SpatialPoint::from_cartesian(x), s);
    };
    const SpatialPoint pt{1.4, 2.0 * pi / 5 - 0.25, 0.9};
    const Vec3 x = pt.cartesian();
    const double h = 2e-3;
    const double scale = std::abs(eval(x)) + 1.0;

    SUBCASE("gradient") {
      const VectorAtoms G = gradient(ctx, P, mu);
      const CVec3 g = eval_vector(ctx, G, mu, pt, s);
      for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(g[a] - fd_d(eval, x, a, h)) < 2e-8 * scale);
      }
    }
    SUBCASE("scalar laplacian") {
      const ScalarAtoms L = scalar_laplacian(ctx, P, mu);
      const cxd lap = eval_scalar(ctx, L, mu, pt, s);
      CHECK(std::abs(lap - fd_lap(eval, x, h)) < 2e-6 * scale);
    }
    SUBCASE("radial derivative") {
      const ScalarAtoms R = radial_derivative(P, mu);
      const cxd dr = eval_scalar(ctx, R, mu, pt, s);
      auto along_r = [&](double rr) { return eval_scalar(ctx, P, mu, {rr, pt.theta, pt.phi}, s); };
      const double hr = 1e-4;
      const cxd fd =
          (-along_r(pt.r + 2 * hr) + 8.0 * along_r(pt.r + hr) - 8.0 * along_r(pt.r - hr) +
           along_r(pt.r - 2 * hr)) /
          (12.0 * hr);
      CHECK(std::abs(dr - fd) < 1e-9 * scale);
    }
    SUBCASE("divergence and vector laplacian on the gradient field") {
      const VectorAtoms G = gradient(ctx, P, mu);
      auto evalv = [&](const Vec3& y, int comp) {
        return eval_vector(ctx, G, mu, SpatialPoint::from_cartesian(y), s)[comp];
      };
      const ScalarAtoms D = divergence(ctx, G, mu);
      const cxd div = eval_scalar(ctx, D, mu, pt, s);
      cxd fd_div = 0.0;
      for (int a = 0; a < 3; ++a)
        fd_div += fd_d([&](const Vec3& y) { return evalv(y, a); }, x, a, h);
      const double gscale = cnorm(eval_vector(ctx, G, mu, pt, s)) + 1.0;
      CHECK(std::abs(div - fd_div) < 5e-7 * gscale);

      const VectorAtoms L = vector_laplacian(ctx, G, mu);
      const CVec3 lap = eval_vector(ctx, L, mu, pt, s);
      for (int a = 0; a < 3; ++a) {
        const cxd fd = fd_lap([&](const Vec3& y) { return evalv(y, a); }, x, h);
        CHECK(std::abs(lap[a] - fd) < 2e-5 * gscale);
      }
    }
  }
}

TEST_CASE("laplacian annihilates harmonic atoms") {
  const AtomContext ctx = make_ctx(2.0 * pi / 5);
  const cxd s(1.0, 0.0);
  // r^1 sin(theta) cos(phi) = x, harmonic
  ScalarAtom a;
  a.e = {0, 0, 0, 0, false, false};
  a.ang = {ThetaProfile::from_function(ctx.basis, [](double th) { return std::sin(th); }), 1,
           Parity::Cos};
  const ScalarAtoms L = scalar_laplacian(ctx, {a}, 1.0);
  for (double th : {0.2, 0.7, 1.1}) {
    const cxd v = eval_scalar(ctx, L, 1.0, {1.3, th, 0.4}, s);
    CHECK(std::abs(v) < 1e-10);
  }
  // gradient of x is curl-free and divergence-free: vector laplacian vanishes
  const VectorAtoms G = gradient(ctx, {a}, 1.0);
  const VectorAtoms VL = vector_laplacian(ctx, G, 1.0);
  for (double th : {0.2, 0.8}) {
    CHECK(cnorm(eval_vector(ctx, VL, 1.0, {0.9, th, 1.3}, s)) < 1e-9);
  }
}

TEST_CASE("tangential split at the profile level") {
  const AtomContext ctx = make_ctx(pi / 2);
  // constant Cartesian field e1 expressed in the spherical frame, order 1
  VectorAngular v;
  v.m = 1;
  v.parity = Parity::Cos;
  v.ar = ThetaProfile::from_function(ctx.basis, [](double th) { return std::sin(th); });
  v.ath = ThetaProfile::from_function(ctx.basis, [](double th) { return std::cos(th); });
  v.aph = ThetaProfile::constant(ctx.basis, -1.0);
  const VectorAngular vt = tangential_component(ctx, v);
  const ScalarAngular vn = normal_component(ctx, v);
  // on the half-space cone grad nu = e_z, so v_nu = e1 . e_z = 0
  CHECK(vn.A.max_abs() < 1e-12);
  CHECK(vt.ar.plus(v.ar.scaled(-1.0)).max_abs() < 1e-12);
}

TEST_CASE("merge and prune") {
  const AtomContext ctx = make_ctx(pi / 3);
  ScalarAtom a;
  a.coef = 2.0;
  a.e = {0, 0, 0, 0, false, false};
  a.ang = {ThetaProfile::constant(ctx.basis, 1.0), 0, Parity::Cos};
  ScalarAtom b = a;
  b.coef = -2.0;
  const ScalarAtoms merged = merge_atoms({a, b});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].ang.A.max_abs() < 1e-15);
  CHECK(prune_atoms(ctx, merged).empty());
}
