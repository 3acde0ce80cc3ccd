// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "conestokes/layer_polynomials.hpp"

using namespace conestokes;

namespace {

// Test-side check of the three defining identities, in exact arithmetic and
// independent of how the closed forms were assembled.
bool identities_hold(int k) {
  const LayerPolynomials P = layer_polynomials(k);
  RationalPoly nu_k;  // nu^k
  nu_k.c.assign(k + 1, Rational(0));
  nu_k.c[k] = Rational(1);

  const RationalPoly id1 = P.normal.derivative() - P.normal - nu_k;
  RationalPoly id2 = P.tangential.derivative().derivative() -
                     P.tangential.derivative().scaled(Rational(2));
  id2 = id2 - nu_k.scaled(Rational(-1));
  const RationalPoly rhs3 =
      P.normal.derivative().derivative() - P.normal.derivative().scaled(Rational(2));
  const RationalPoly id3 = P.pressure.derivative() - P.pressure - rhs3;
  return id1.is_zero() && id2.is_zero() && id3.is_zero();
}

}  // namespace

TEST_CASE("layer polynomials at k = 0") {
  const LayerPolynomials P = layer_polynomials(0);
  REQUIRE(P.normal.c.size() == 1);
  CHECK(P.normal.c[0] == Rational(-1));
  REQUIRE(P.tangential.c.size() == 2);
  CHECK(P.tangential.c[0] == Rational(0));
  CHECK(P.tangential.c[1] == Rational(__int128(1), __int128(2)));
  CHECK(P.pressure.is_zero());
  CHECK(identities_hold(0));
}

TEST_CASE("layer polynomials at k = 1") {
  const LayerPolynomials P = layer_polynomials(1);
  // normal = -1 - nu, pressure = -2
  REQUIRE(P.normal.c.size() == 2);
  CHECK(P.normal.c[0] == Rational(-1));
  CHECK(P.normal.c[1] == Rational(-1));
  REQUIRE(P.pressure.c.size() == 1);
  CHECK(P.pressure.c[0] == Rational(-2));
  // pressure' - pressure = 2 = normal'' - 2 normal'
  CHECK(identities_hold(1));
}

TEST_CASE("layer polynomial identities hold exactly for k <= 10") {
  for (int k = 0; k <= 10; ++k) CHECK_MESSAGE(identities_hold(k), "k = ", k);
}

TEST_CASE("tangential polynomial vanishes at zero for all k") {
  for (int k = 0; k <= 12; ++k) {
    const LayerPolynomials P = layer_polynomials(k);
    CHECK(P.tangential.coeff(0) == Rational(0));
  }
}

TEST_CASE("index guard") {
  CHECK_THROWS_AS(layer_polynomials(33), DomainError);
  CHECK_NOTHROW(layer_polynomials(32));
}
