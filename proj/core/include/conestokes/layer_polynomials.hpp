// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "conestokes/common.hpp"

namespace conestokes {

// Exact rational scalar on 128-bit integers; throws on overflow.  Sized for
// the layer polynomials up to index 32 (factorial growth guard).
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(__int128 n, __int128 d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Dense polynomial with exact coefficients, index = power.
struct RationalPoly {
  std::vector<Rational> c;

  Rational coeff(std::size_t j) const { return j < c.size() ? c[j] : Rational(0); }
  RationalPoly derivative() const;
  RationalPoly operator-(const RationalPoly& o) const;
  RationalPoly scaled(const Rational& a) const;
  bool is_zero() const;
  cxd eval(const cxd& z) const;
  std::vector<double> coeffs_double() const;
};

// The three boundary-layer corrector polynomials of index k.  They satisfy,
// exactly in rational arithmetic,
//   normal'     - normal     = nu^k
//   tangential'' - 2 tangential' = -nu^k
//   pressure'   - pressure   = normal'' - 2 normal'
// and tangential(0) = 0, pressure = 0 for k = 0.
struct LayerPolynomials {
  RationalPoly normal;      // multiplies g * grad(nu) in the velocity and f_nu in the pressure
  RationalPoly tangential;  // multiplies f_tau in the velocity
  RationalPoly pressure;    // multiplies g in the pressure
};

// k <= 32; beyond that the exact coefficients overflow the integer type.
LayerPolynomials layer_polynomials(int k);

}  // namespace conestokes
