// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/neumann.hpp"

#include <algorithm>
#include <map>

#include "conestokes/quadrature.hpp"

namespace conestokes {

namespace {

constexpr double theta_series_start = 1e-4;

// Six-term Frobenius expansion of the regular solution u ~ theta^m near the
// axis; returns (u, u') at theta.
std::pair<double, double> series_start(double mu, int m, double theta) {
  const double L = mu * (mu + 1.0);
  const double m2 = double(m) * double(m);
  std::array<double, 6> a{};
  a[0] = 1.0;
  for (int i = 1; i < 6; ++i) {
    double rhs = 0.0;
    // from a_{i-1}: L - (m + 2i - 2 + m^2)/3
    rhs += a[i - 1] * (L - (m + 2.0 * i - 2.0 + m2) / 3.0);
    if (i >= 2) rhs += a[i - 2] * (-(m + 2.0 * i - 4.0) / 45.0 - m2 / 15.0);
    if (i >= 3) rhs += a[i - 3] * (-2.0 * (m + 2.0 * i - 6.0) / 945.0 - 2.0 * m2 / 189.0);
    if (i >= 4) rhs += a[i - 4] * (-(m + 2.0 * i - 8.0) / 4725.0 - m2 / 675.0);
    a[i] = -rhs / (4.0 * i * (m + i));
  }
  double u = 0.0, du = 0.0;
  for (int i = 5; i >= 0; --i) {
    const double p = m + 2.0 * i;
    u = u * theta * theta + a[i];
    du = du * theta * theta + a[i] * p;
  }
  u *= std::pow(theta, m);
  du *= std::pow(theta, m > 0 ? m - 1 : 0);
  if (m == 0) du *= theta;  // d/dtheta of sum a_i theta^{2i} = sum a_i 2i theta^{2i-1}
  return {u, du};
}

struct State {
  double u, du;
};

State ode_rhs(double th, const State& y, double L, double m2) {
  const double s = std::sin(th);
  return {y.du, -std::cos(th) / s * y.du - (L - m2 / (s * s)) * y.u};
}

// Adaptive Cash-Karp RK45 from th0 to th1.
State integrate_legendre(double mu, int m, double th0, double th1, State y) {
  const double L = mu * (mu + 1.0);
  const double m2 = double(m) * double(m);
  const double rtol = 1e-12, atol = 1e-14;
  double th = th0;
  double h = (th1 - th0) * 0.1;
  if (h <= 0.0) return y;
  int steps = 0;
  while (th < th1) {
    if (++steps > 1000000)
      throw NumericError("legendre_shoot: step count exceeded (mu=" + std::to_string(mu) +
                         ", m=" + std::to_string(m) + ")");
    h = std::min(h, th1 - th);
    auto f = [&](double t, const State& s) { return ode_rhs(t, s, L, m2); };
    const State k1 = f(th, y);
    auto step = [&](double c, std::initializer_list<double> bs,
                    std::initializer_list<const State*> ks) {
      State s = y;
      auto b = bs.begin();
      for (const State* k : ks) {
        s.u += h * (*b) * k->u;
        s.du += h * (*b) * k->du;
        ++b;
      }
      return f(th + c * h, s);
    };
    const State k2 = step(1.0 / 5, {1.0 / 5}, {&k1});
    const State k3 = step(3.0 / 10, {3.0 / 40, 9.0 / 40}, {&k1, &k2});
    const State k4 = step(3.0 / 5, {3.0 / 10, -9.0 / 10, 6.0 / 5}, {&k1, &k2, &k3});
    const State k5 = step(1.0, {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27}, {&k1, &k2, &k3, &k4});
    const State k6 = step(7.0 / 8,
                          {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096},
                          {&k1, &k2, &k3, &k4, &k5});
    auto comb = [&](double c1, double c3, double c4, double c5, double c6) {
      return State{y.u + h * (c1 * k1.u + c3 * k3.u + c4 * k4.u + c5 * k5.u + c6 * k6.u),
                   y.du + h * (c1 * k1.du + c3 * k3.du + c4 * k4.du + c5 * k5.du + c6 * k6.du)};
    };
    const State y5 = comb(37.0 / 378, 250.0 / 621, 125.0 / 594, 0.0, 512.0 / 1771);
    const State y4 = comb(2825.0 / 27648, 18575.0 / 48384, 13525.0 / 55296, 277.0 / 14336, 0.25);
    const double sc = atol + rtol * std::max({std::abs(y.u), std::abs(y.du), std::abs(y5.u),
                                              std::abs(y5.du)});
    const double err = std::max(std::abs(y5.u - y4.u), std::abs(y5.du - y4.du)) / sc;
    if (err <= 1.0) {
      th += h;
      y = y5;
    }
    const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    if (h < 1e-15)
      throw NumericError("legendre_shoot: step size underflow (mu=" + std::to_string(mu) +
                         ", m=" + std::to_string(m) + ", theta=" + std::to_string(th) + ")");
  }
  return y;
}

}  // namespace

std::pair<double, double> legendre_shoot(double mu, int m, double theta0) {
  if (mu < -0.5) throw DomainError("legendre_shoot: mu must be >= -1/2");
  if (m < 0) throw DomainError("legendre_shoot: m must be >= 0");
  auto [u0, du0] = series_start(mu, m, theta_series_start);
  const State y = integrate_legendre(mu, m, theta_series_start, theta0, {u0, du0});
  return {y.u, y.du};
}

std::pair<double, double> legendre_shoot_collect(double mu, int m, double theta0,
                                                 const ChebBasis& basis,
                                                 Eigen::VectorXd& nodal_values) {
  nodal_values.resize(basis.size());
  auto [u0, du0] = series_start(mu, m, theta_series_start);
  State y{u0, du0};
  double pos = theta_series_start;
  for (int i = 0; i < basis.size(); ++i) {
    const double th = basis.nodes()[i];
    if (th <= theta_series_start) {
      nodal_values[i] = series_start(mu, m, std::max(th, 0.0)).first;
      if (th <= 0.0) nodal_values[i] = (m == 0) ? 1.0 : 0.0;
      continue;
    }
    y = integrate_legendre(mu, m, pos, th, y);
    pos = th;
    nodal_values[i] = y.u;
  }
  if (pos < theta0) y = integrate_legendre(mu, m, pos, theta0, y);
  return {y.u, y.du};
}

namespace {

struct RawRoot {
  double mu;
  int m;
};

double boundary_derivative(double mu, int m, double theta0) {
  return legendre_shoot(mu, m, theta0).second;
}

}  // namespace

NeumannSpectrum neumann_spectrum(const ConeSpec& cone, double mu_max, int m_max,
                                 const SpectrumOptions& opts) {
  if (!(mu_max > 0.0)) throw DomainError("neumann_spectrum: mu_max must be positive");
  if (m_max < 0) throw DomainError("neumann_spectrum: m_max must be >= 0");
  const double th0 = cone.half_angle;
  NeumannSpectrum out;
  std::vector<RawRoot> roots;
  roots.push_back({0.0, 0});  // constant eigenfunction, always present

  for (int m = 0; m <= m_max; ++m) {
    // For m = 0 the root mu = 0 is known; start the scan clear of it.
    double lo = (m == 0) ? 0.75 * opts.scan_step : 0.0;
    double flo = boundary_derivative(lo, m, th0);
    double prev_abs = std::abs(flo);
    double prev2_abs = prev_abs;
    double scale = std::abs(flo);
    for (double hi = lo + opts.scan_step; lo < mu_max; hi = lo + opts.scan_step) {
      hi = std::min(hi, mu_max);
      const double fhi = boundary_derivative(hi, m, th0);
      scale = std::max(scale, std::abs(fhi));
      if (flo == 0.0) {
        roots.push_back({lo, m});
      } else if (flo * fhi < 0.0) {
        double a = lo, b = hi, fa = flo;
        while (b - a > opts.bisect_tol) {
          const double mid = 0.5 * (a + b);
          const double fm = boundary_derivative(mid, m, th0);
          if (fa * fm <= 0.0)
            b = mid;
          else {
            a = mid;
            fa = fm;
          }
        }
        roots.push_back({0.5 * (a + b), m});
      } else if (prev2_abs > prev_abs && std::abs(fhi) > prev_abs &&
                 prev_abs < opts.tangency_rel * scale) {
        out.tangency_flags.push_back("possible double root near mu=" + std::to_string(lo) +
                                     ", m=" + std::to_string(m));
      }
      prev2_abs = prev_abs;
      prev_abs = std::abs(fhi);
      if (hi >= mu_max) break;
      lo = hi;
      flo = fhi;
    }
  }

  std::sort(roots.begin(), roots.end(), [](const RawRoot& a, const RawRoot& b) {
    return a.mu < b.mu || (a.mu == b.mu && a.m < b.m);
  });

  // Group by mu within tolerance, assemble multiplicities and profiles.
  const auto basis = make_cheb_basis(opts.profile_nodes, 0.0, th0);
  const GaussRule quad(128);
  std::vector<NeumannEigenvalue> eigs;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j].mu - roots[i].mu < 1e-8) ++j;
    NeumannEigenvalue e;
    e.mu = roots[i].mu;
    e.beltrami_eigenvalue = e.mu * (e.mu + 1.0);
    for (std::size_t k = i; k < j; ++k) {
      const int m = roots[k].m;
      e.m_list.push_back(m);
      Eigen::VectorXd nodal;
      legendre_shoot_collect(e.mu, m, th0, *basis, nodal);
      // Orthonormalize: integral over the cap of (c u trig)^2 equals 1.
      Eigen::VectorXcd cvals = nodal.cast<cxd>();
      ThetaProfile raw(basis, cvals);
      double ssq = 0.0;
      for (std::size_t q = 0; q < quad.x.size(); ++q) {
        const double u = std::cos(th0) + 0.5 * (1.0 - std::cos(th0)) * (quad.x[q] + 1.0);
        const double w = 0.5 * (1.0 - std::cos(th0)) * quad.w[q];
        const double th = std::acos(std::clamp(u, -1.0, 1.0));
        ssq += w * std::norm(raw.eval(th));
      }
      const double azim = (m == 0) ? 2.0 * pi : pi;
      double c = 1.0 / std::sqrt(azim * ssq);
      if (raw.eval(th0).real() < 0.0) c = -c;  // fix the sign at the cap boundary
      AngularProfile prof;
      prof.m = m;
      prof.values = raw.scaled(c);
      prof.normalization = c;
      prof.parity = Parity::Cos;
      e.profiles.push_back(prof);
      if (m >= 1) {
        prof.parity = Parity::Sin;
        e.profiles.push_back(prof);
      }
      e.multiplicity += (m == 0) ? 1 : 2;
    }
    eigs.push_back(std::move(e));
    i = j;
  }
  for (std::size_t k = 0; k < eigs.size(); ++k) eigs[k].index_j = int(k) + 1;
  out.eigenvalues = std::move(eigs);
  return out;
}

NeumannEigenvalue negative_branch(const NeumannEigenvalue& e) {
  if (e.index_j < 1) throw DomainError("negative_branch: requires a j >= 1 record");
  NeumannEigenvalue n = e;
  n.index_j = -e.index_j;
  n.mu = -1.0 - e.mu;
  n.beltrami_eigenvalue = n.mu * (n.mu + 1.0);  // invariant under mu -> -1-mu
  return n;
}

BeltramiResidualReport beltrami_residual(const NeumannEigenvalue& e, const AngularProfile& profile,
                                         int n_grid) {
  if (n_grid < 200) throw DomainError("beltrami_residual: need at least 200 nodes");
  const double th0 = profile.values.basis()->hi();
  const double h = th0 / n_grid;
  const double M = e.beltrami_eigenvalue;
  const double m2 = double(profile.m) * double(profile.m);
  BeltramiResidualReport rep;
  auto phi = [&](double th) { return profile.values.eval(th).real(); };
  for (int i = 1; i < n_grid; ++i) {
    const double th = i * h;
    const double fm = phi(th - h), f0 = phi(th), fp = phi(th + h);
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const double s = std::sin(th);
    const double delta = d2 + d1 * std::cos(th) / s - m2 * f0 / (s * s);
    const double res = -(delta)-M * f0;  // -(delta phi) - M phi
    rep.interior_max = std::max(rep.interior_max, std::abs(res));
    rep.legendre_form_max = std::max(rep.legendre_form_max, s * s * std::abs(res));
  }
  // one-sided second-order difference for the boundary flux
  const double f0 = phi(th0), f1 = phi(th0 - h), f2 = phi(th0 - 2.0 * h);
  rep.boundary_flux = std::abs((3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h));
  return rep;
}

const NeumannEigenvalue& eigen_by_index(const NeumannSpectrum& spec, int j) {
  for (const auto& e : spec.eigenvalues)
    if (e.index_j == j) return e;
  throw DomainError("eigen_by_index: no eigenvalue with index " + std::to_string(j));
}

}  // namespace conestokes
