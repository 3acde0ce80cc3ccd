// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/layer_polynomials.hpp"

namespace conestokes {

namespace {

__int128 igcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
  if (a == 0 || b == 0) return 0;
  const __int128 r = a * b;
  if (r / b != a) throw NumericError("Rational: 128-bit overflow; reduce the polynomial index");
  return r;
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
  if (den == 0) throw NumericError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = igcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  const __int128 g = igcd(den, o.den);
  const __int128 dl = den / g;
  return Rational(checked_mul(num, o.den / g) + checked_mul(o.num, dl), checked_mul(dl, o.den));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num, o.den);
}

Rational Rational::operator*(const Rational& o) const {
  const __int128 g1 = igcd(num, o.den);
  const __int128 g2 = igcd(o.num, den);
  return Rational(checked_mul(num / g1, o.num / g2), checked_mul(den / g2, o.den / g1));
}

RationalPoly RationalPoly::derivative() const {
  RationalPoly d;
  if (c.size() <= 1) return d;
  d.c.resize(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d.c[j - 1] = c[j] * Rational((long long)j);
  return d;
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
  RationalPoly r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] = coeff(j) - o.coeff(j);
  return r;
}

RationalPoly RationalPoly::scaled(const Rational& a) const {
  RationalPoly r = *this;
  for (auto& cc : r.c) cc = cc * a;
  return r;
}

bool RationalPoly::is_zero() const {
  for (const auto& cc : c)
    if (cc.num != 0) return false;
  return true;
}

cxd RationalPoly::eval(const cxd& z) const {
  cxd acc = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) acc = acc * z + cxd(c[j].to_double(), 0.0);
  return acc;
}

std::vector<double> RationalPoly::coeffs_double() const {
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j].to_double();
  return out;
}

LayerPolynomials layer_polynomials(int k) {
  if (k < 0 || k > 32) throw DomainError("layer_polynomials: index must lie in [0, 32]");
  LayerPolynomials P;
  // factorials as rationals
  auto fact = [](int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f = f * Rational(i);
    return f;
  };
  const Rational kf = fact(k);

  // normal(nu) = -k! sum_{j=0}^{k} nu^j / j!
  P.normal.c.resize(k + 1);
  {
    Rational invjf(1);
    for (int j = 0; j <= k; ++j) {
      if (j > 0) invjf = invjf * Rational(__int128(1), __int128(j));
      P.normal.c[j] = Rational(-1) * kf * invjf;
    }
  }
  // tangential(nu) = 2^{-k-2} k! sum_{j=1}^{k+1} (2 nu)^j / j!
  P.tangential.c.resize(k + 2);
  {
    Rational term = kf;  // builds k! 2^{j-k-2} / j!
    // start at j = 1: k! * 2^{1-k-2} / 1!
    __int128 two_pow = 1;
    for (int i = 0; i < k + 1; ++i) two_pow *= 2;  // 2^{k+1}
    term = term * Rational(__int128(1), two_pow);
    P.tangential.c[0] = Rational(0);
    for (int j = 1; j <= k + 1; ++j) {
      P.tangential.c[j] = term;
      term = term * Rational(__int128(2), __int128(j + 1));
    }
  }
  // pressure(nu) = -k! sum_{j=0}^{k-1} (k - j + 1) nu^j / j!   (zero for k = 0)
  if (k > 0) {
    P.pressure.c.resize(k);
    Rational invjf(1);
    for (int j = 0; j <= k - 1; ++j) {
      if (j > 0) invjf = invjf * Rational(__int128(1), __int128(j));
      P.pressure.c[j] = Rational(-1) * kf * invjf * Rational(k - j + 1);
    }
  }
  return P;
}

}  // namespace conestokes
