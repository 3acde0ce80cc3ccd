// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "conestokes/norms.hpp"

using namespace conestokes;

namespace {

// Independent oracle: minimize |x - y| over boundary rays.  For each sampled
// azimuth the minimization along the ray is exact (projection onto the ray,
// clamped at the vertex); the azimuth is sampled densely.
double boundary_distance_bruteforce(const ConeSpec& cone, const SpatialPoint& p) {
  const Vec3 x = p.cartesian();
  const double st = std::sin(cone.half_angle), ct = std::cos(cone.half_angle);
  double best = norm(x);  // vertex
  const int nphi = 200000;
  for (int ip = 0; ip < nphi; ++ip) {
    const double py = 2.0 * pi * ip / nphi;
    const Vec3 d{st * std::cos(py), st * std::sin(py), ct};
    const double proj = std::max(0.0, dot(x, d));
    best = std::min(best, norm(x - proj * d));
  }
  return best;
}

}  // namespace

TEST_CASE("cone construction and cap area") {
  const ConeSpec c = ConeSpec::circular(pi / 3);
  CHECK(c.cap_area == doctest::Approx(2.0 * pi * (1.0 - 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(ConeSpec::circular(0.0), DomainError);
  CHECK_THROWS_AS(ConeSpec::circular(pi / 3, 0.95), DomainError);  // > sin bound
}

TEST_CASE("distance to boundary: axis point under half-space cone") {
  const ConeSpec c = ConeSpec::circular(pi / 2);
  CHECK(distance_to_boundary(c, {1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distance to boundary vanishes toward the cap") {
  const ConeSpec c = ConeSpec::circular(pi / 3);
  CHECK(distance_to_boundary(c, {1.0, pi / 3 - 1e-9, 0.3}) < 1e-8);
}

TEST_CASE("distance against brute-force boundary minimization") {
  const ConeSpec c = ConeSpec::circular(pi / 3);
  const SpatialPoint p{2.0, pi / 6, 1.1};
  const double nu = distance_to_boundary(c, p);
  CHECK(nu == doctest::Approx(2.0 * std::sin(pi / 6)).epsilon(1e-12));
  CHECK(std::abs(nu - boundary_distance_bruteforce(c, p)) < 1e-6);
  // and for a wide cone where the vertex is the closest boundary point
  const ConeSpec wide = ConeSpec::circular(2.8);
  const SpatialPoint q{1.5, 0.05, 0.0};
  CHECK(distance_to_boundary(wide, q) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(distance_to_boundary(wide, q) - boundary_distance_bruteforce(wide, q)) < 1e-6);
  CHECK_THROWS_AS(distance_to_boundary(c, {1.0, pi / 2, 0.0}), DomainError);
}

TEST_CASE("distance homogeneity nu(lambda x) = lambda nu(x)") {
  const ConeSpec c = ConeSpec::circular(2.0 * pi / 5);
  for (double th : {0.1, 0.5, 1.0, 1.2}) {
    for (double lam : {0.25, 3.0, 17.0}) {
      const double a = distance_to_boundary(c, {lam * 2.3, th, 0.7});
      const double b = lam * distance_to_boundary(c, {2.3, th, 0.7});
      CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
    }
  }
}

TEST_CASE("gradient of the distance has unit length (finite differences)") {
  const ConeSpec c = ConeSpec::circular(pi / 3);
  const SpatialPoint p{1.7, pi / 3 - 0.12, 2.0};
  REQUIRE(c.in_collar(p.theta));
  const double h = 1e-6;
  Vec3 g;
  const Vec3 x = p.cartesian();
  for (int a = 0; a < 3; ++a) {
    Vec3 xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    g[a] = (distance_to_boundary(c, SpatialPoint::from_cartesian(xp)) -
            distance_to_boundary(c, SpatialPoint::from_cartesian(xm))) /
           (2.0 * h);
  }
  CHECK(std::abs(norm(g) - 1.0) < 1e-6);
  const Vec3 ga = distance_gradient(c, p);
  CHECK(norm(g - ga) < 1e-6);
}

TEST_CASE("tangential split") {
  const ConeSpec c = ConeSpec::circular(pi / 2);
  const SpatialPoint p = SpatialPoint::from_cartesian({1.0, 0.0, 0.5});
  SUBCASE("normal vector maps to (1, 0)") {
    const Vec3 n = distance_gradient(c, p);
    auto [vn, vt] = split_tangential(c, p, n);
    CHECK(vn == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(vt) < 1e-14);
  }
  SUBCASE("tangent vector maps to (0, v)") {
    const Vec3 v{0.0, 1.0, 0.0};  // perpendicular to grad nu = e_z
    auto [vn, vt] = split_tangential(c, p, v);
    CHECK(std::abs(vn) < 1e-14);
    CHECK(norm(vt - v) < 1e-14);
  }
  SUBCASE("half-space cone: e_z splits into (1, 0)") {
    auto [vn, vt] = split_tangential(c, p, {0.0, 0.0, 1.0});
    CHECK(vn == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(vt) < 1e-13);
  }
  SUBCASE("reassembly and orthogonality") {
    const Vec3 v{0.3, -0.2, 0.9};
    auto [vn, vt] = split_tangential(c, p, v);
    const Vec3 n = distance_gradient(c, p);
    CHECK(norm(vt + vn * n - v) < 1e-14);
    CHECK(std::abs(dot(vt, n)) < 1e-14);
  }
  SUBCASE("outside the collar is rejected") {
    const ConeSpec narrow = ConeSpec::circular(pi / 3);
    CHECK_THROWS_AS(split_tangential(narrow, {1.0, 0.01, 0.0}, {1.0, 0.0, 0.0}), DomainError);
  }
}

TEST_CASE("cutoffs") {
  const ConeSpec c = ConeSpec::circular(pi / 3);
  SUBCASE("radial cutoff plateaus") {
    CHECK(eta_cutoff(0.4) == 0.0);
    CHECK(eta_cutoff(1.2) == 1.0);
    CHECK(eta_s_cutoff(cxd(0.0, 2.0), std::sqrt(0.2)) == 0.0);   // |s| r^2 = 0.4
    CHECK(eta_s_cutoff(cxd(3.0, 0.0), std::sqrt(0.4)) == 1.0);   // |s| r^2 = 1.2
  }
  SUBCASE("eta_s depends on (s, r) only through |s| r^2") {
    for (double t : {0.55, 0.71, 0.93}) {
      const double a = eta_s_cutoff(cxd(0.0, t / 0.49), 0.7);
      const double b = eta_s_cutoff(cxd(t / 4.0, 0.0), 2.0);
      const double c2 = eta_cutoff(t);
      CHECK(a == doctest::Approx(c2).epsilon(1e-14));
      CHECK(b == doctest::Approx(c2).epsilon(1e-14));
    }
  }
  SUBCASE("collar cutoff is C2 at both knots (finite differences)") {
    // the analytic derivatives agree with finite differences away from knots
    const double h = 1e-5;
    for (double t : {0.6 * c.layer_width, 0.8 * c.layer_width, 0.95 * c.layer_width}) {
      const double d1 = (chi_cutoff(c, t + h) - chi_cutoff(c, t - h)) / (2 * h);
      const double d2 =
          (chi_cutoff(c, t + h) - 2 * chi_cutoff(c, t) + chi_cutoff(c, t - h)) / (h * h);
      CHECK(std::abs(d1 - chi_cutoff_d1(c, t)) < 2e-7);
      CHECK(std::abs(d2 - chi_cutoff_d2(c, t)) < 1e-4);
    }
    // with the derivatives validated, C2 continuity across the knots follows
    // from matching one-sided limits of the value and two derivatives
    const double eps = 1e-10;
    for (double t0 : {0.5 * c.layer_width, c.layer_width}) {
      CHECK(std::abs(chi_cutoff(c, t0 + eps) - chi_cutoff(c, t0 - eps)) < 1e-6);
      CHECK(std::abs(chi_cutoff_d1(c, t0 + eps) - chi_cutoff_d1(c, t0 - eps)) < 1e-6);
      CHECK(std::abs(chi_cutoff_d2(c, t0 + eps) - chi_cutoff_d2(c, t0 - eps)) < 1e-6);
    }
    CHECK(chi_cutoff(c, 0.2 * c.layer_width) == 1.0);
    CHECK(chi_cutoff(c, 1.2 * c.layer_width) == 0.0);
  }
}

TEST_CASE("cap quadrature integrates the constant to the cap area") {
  for (double th0 : {pi / 6, pi / 3, pi / 2, 2.0}) {
    const ConeSpec c = ConeSpec::circular(th0);
    const CapRule cap(c, 24, 16, 12);
    const double area = cap.integrate([](double, double) { return 1.0; });
    CHECK(std::abs(area - c.cap_area) < 1e-12 * c.cap_area);
  }
}

TEST_CASE("cap quadrature is exact for polynomials in cos(theta)") {
  const ConeSpec c = ConeSpec::circular(pi / 2);
  const CapRule cap(c, 16, 8);
  for (int deg : {3, 7, 15, 29}) {
    const double got = cap.integrate([&](double th, double) { return std::pow(std::cos(th), deg); });
    const double exact = 2.0 * pi / (deg + 1);  // integral of u^deg du over [0, 1]
    CHECK(std::abs(got - exact) < 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("weighted norms") {
  const ConeSpec c = ConeSpec::circular(pi / 2);
  const QuadratureGrid grid(c, 1.0, 2.0, 24, 10, 20, 12);
  SUBCASE("zero field") {
    FieldSample f{[](const SpatialPoint&) { return cxd(0.0); }, {}, {}, 1e-5};
    CHECK(weighted_norm({SpaceTag::V, 0, 0.0}, f, grid) == 0.0);
  }
  SUBCASE("power law against the radial integral") {
    // u = r^-2 on [1,2], beta = 0, l = 0: V-norm^2 = 2 pi (1 - 1/2) = pi
    FieldSample f{[](const SpatialPoint& p) { return cxd(std::pow(p.r, -2.0)); }, {}, {}, 1e-5};
    const double v2 = weighted_norm_sq({SpaceTag::V, 0, 0.0}, f, grid);
    CHECK(v2 == doctest::Approx(pi).epsilon(1e-10));
    // E and V coincide at l = 0 up to the extra r^{2 beta} term: exactly 2x here
    const double e2 = weighted_norm_sq({SpaceTag::E, 0, 0.0}, f, grid);
    CHECK(e2 == doctest::Approx(2.0 * v2).epsilon(1e-12));
  }
  SUBCASE("X norm combines V1 with the dual surrogate") {
    FieldSample f{[](const SpatialPoint& p) { return cxd(p.r); },
                  std::function<CVec3(const SpatialPoint&)>([](const SpatialPoint& p) {
                    const Vec3 x = p.cartesian();
                    return CVec3{x[0] / p.r, x[1] / p.r, x[2] / p.r};
                  }),
                  {},
                  1e-5};
    const double x2 = weighted_norm_sq({SpaceTag::X, 1, 0.5}, f, grid);
    const double v2 = weighted_norm_sq({SpaceTag::V, 1, 0.5}, f, grid);
    const double d2 = weighted_norm_sq({SpaceTag::DualXPart, 1, 0.5}, f, grid);
    CHECK(x2 == doctest::Approx(v2 + d2).epsilon(1e-13));
  }
  SUBCASE("non-finite samples are rejected") {
    FieldSample f{[](const SpatialPoint&) { return cxd(std::nan("")); }, {}, {}, 1e-5};
    CHECK_THROWS_AS(weighted_norm({SpaceTag::V, 0, 0.0}, f, grid), NumericError);
  }
}
