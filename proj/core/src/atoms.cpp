// Copyright (c) 2026 The conestokes authors
// SPDX-License-Identifier: Apache-2.0

#include "conestokes/atoms.hpp"

#include <map>
#include <tuple>

namespace conestokes {

namespace {

using Key = std::tuple<int, int, int, int, bool, bool, int, int>;

Key key_of(const AtomExponents& e, int m, Parity p) {
  return {e.s2, e.r_off, e.log_pow, e.nu_pow, e.layer, e.chi, m, int(p)};
}

// sign carried by d/dphi when a scalar-slot profile moves to the phi slot
double sigma_grad(Parity p) { return p == Parity::Cos ? -1.0 : 1.0; }
// sign carried by d/dphi when a phi-slot profile moves to a scalar slot
double sigma_div(Parity p) { return p == Parity::Cos ? 1.0 : -1.0; }

double sup_profile(const ThetaProfile& p, const AtomContext& ctx, bool collar_only) {
  if (p.empty()) return 0.0;
  if (!collar_only) return p.max_abs();
  const double lo = ctx.collar_theta_lo();
  double m = 0.0;
  const auto& nodes = p.basis()->nodes();
  for (int i = 0; i < nodes.size(); ++i)
    if (nodes[i] >= lo) m = std::max(m, std::abs(p.values()[i]));
  return m;
}

double atom_weight(const AtomContext& ctx, const ScalarAtom& a) {
  return std::abs(a.coef) * sup_profile(a.ang.A, ctx, a.e.layer || a.e.chi);
}

double atom_weight(const AtomContext& ctx, const VectorAtom& a) {
  const bool c = a.e.layer || a.e.chi;
  return std::abs(a.coef) * std::max({sup_profile(a.ang.ar, ctx, c), sup_profile(a.ang.ath, ctx, c),
                                      sup_profile(a.ang.aph, ctx, c)});
}

}  // namespace


AtomContext make_atom_context(const ConeSpec& cone, int n_full, int n_collar) {
  AtomContext ctx;
  ctx.cone = cone;
  ctx.basis = make_cheb_basis(n_full, 0.0, cone.half_angle);
  const double th0 = cone.half_angle;
  double lo = th0 - 1.35 * std::asin(std::min(1.0, cone.layer_width));
  lo = std::max(lo, 0.01 * th0);
  ctx.collar_basis = make_cheb_basis(n_collar, lo, th0);
  return ctx;
}

ScalarAtoms merge_atoms(ScalarAtoms in) {
  std::map<Key, std::size_t> slot;
  ScalarAtoms out;
  for (auto& a : in) {
    if (a.coef == 0.0) continue;
    const Key k = key_of(a.e, a.ang.m, a.ang.parity);
    auto it = slot.find(k);
    if (it == slot.end()) {
      a.ang.A = a.ang.A.scaled(a.coef);
      a.coef = 1.0;
      slot[k] = out.size();
      out.push_back(std::move(a));
    } else {
      ScalarAtom& dst = out[it->second];
      dst.ang.A = dst.ang.A.plus(a.ang.A.scaled(a.coef));
    }
  }
  return out;
}

VectorAtoms merge_atoms(VectorAtoms in) {
  std::map<Key, std::size_t> slot;
  VectorAtoms out;
  for (auto& a : in) {
    if (a.coef == 0.0) continue;
    const Key k = key_of(a.e, a.ang.m, a.ang.parity);
    auto it = slot.find(k);
    if (it == slot.end()) {
      a.ang.ar = a.ang.ar.scaled(a.coef);
      a.ang.ath = a.ang.ath.scaled(a.coef);
      a.ang.aph = a.ang.aph.scaled(a.coef);
      a.coef = 1.0;
      slot[k] = out.size();
      out.push_back(std::move(a));
    } else {
      VectorAtom& dst = out[it->second];
      dst.ang.ar = dst.ang.ar.plus(a.ang.ar.scaled(a.coef));
      dst.ang.ath = dst.ang.ath.plus(a.ang.ath.scaled(a.coef));
      dst.ang.aph = dst.ang.aph.plus(a.ang.aph.scaled(a.coef));
    }
  }
  return out;
}

ScalarAtoms prune_atoms(const AtomContext& ctx, ScalarAtoms in, double rel_tol) {
  double scale = 0.0;
  for (const auto& a : in) scale = std::max(scale, atom_weight(ctx, a));
  ScalarAtoms out;
  for (auto& a : in)
    if (atom_weight(ctx, a) > rel_tol * scale) out.push_back(std::move(a));
  return out;
}

VectorAtoms prune_atoms(const AtomContext& ctx, VectorAtoms in, double rel_tol) {
  double scale = 0.0;
  for (const auto& a : in) scale = std::max(scale, atom_weight(ctx, a));
  VectorAtoms out;
  for (auto& a : in)
    if (atom_weight(ctx, a) > rel_tol * scale) out.push_back(std::move(a));
  return out;
}

double ledger_scale(const AtomContext& ctx, const ScalarAtoms& atoms) {
  double s = 0.0;
  for (const auto& a : atoms) s = std::max(s, atom_weight(ctx, a));
  return s;
}

double ledger_scale(const AtomContext& ctx, const VectorAtoms& atoms) {
  double s = 0.0;
  for (const auto& a : atoms) s = std::max(s, atom_weight(ctx, a));
  return s;
}

namespace {

// d/dr applied to the radial and layer factors of one atom.  Profiles ride
// along unchanged (the exponent update is exact).
template <typename Atom>
void d_r_per_atom(const Atom& a, double mu, std::vector<Atom>& out) {
  {
    Atom t = a;
    t.e.r_off -= 1;
    t.coef *= (mu + a.e.r_off + a.e.nu_pow);
    out.push_back(std::move(t));
  }
  if (a.e.log_pow >= 1) {
    Atom t = a;
    t.e.r_off -= 1;
    t.e.log_pow -= 1;
    t.coef *= a.e.log_pow;
    out.push_back(std::move(t));
  }
  if (a.e.layer) {
    Atom t = a;
    t.e.r_off -= 1;
    t.e.nu_pow += 1;
    t.coef *= -1.0;
    out.push_back(std::move(t));
  }
}

using PutFn = std::function<void(AtomExponents, cxd, ThetaProfile)>;

// (1/r) d/dtheta of a scalar-slot profile P, including the layer factors.
void d_theta_over_r(const AtomContext& ctx, const AtomExponents& e, const cxd& coef,
                    const ThetaProfile& P, const PutFn& put) {
  {
    AtomExponents t = e;
    t.r_off -= 1;
    put(t, coef, P.derivative());
  }
  if (e.layer) {
    auto nh1 = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
    if (e.nu_pow >= 1) {
      AtomExponents t = e;
      t.s2 += 1;
      t.nu_pow -= 1;
      put(t, coef * double(e.nu_pow), P.times_fn(nh1));
    }
    AtomExponents t = e;
    t.s2 += 1;
    put(t, -coef, P.times_fn(nh1));
  }
}

// Surface part of the scalar Laplacian of one slot with azimuthal order m,
// including the layer factors; contributes at r_off-2 plus sqrt(s)-weighted
// collar terms.
void angular_laplacian(const AtomContext& ctx, const AtomExponents& e, const cxd& coef,
                       const ThetaProfile& P, int m, const PutFn& put) {
  {
    AtomExponents t = e;
    t.r_off -= 2;
    put(t, coef, P.surface_laplacian(m));
  }
  if (!e.layer) return;
  auto nh1 = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
  auto nh2 = [&](double th) { return ctx.cone.nu_hat_smooth_d2(th); };
  const int i = e.nu_pow;
  const ThetaProfile Pd = P.derivative();
  auto put_rho1 = [&](cxd c, const ThetaProfile& prof, int dnu) {
    AtomExponents t = e;
    t.s2 += 1;
    t.r_off -= 1;
    t.nu_pow += dnu;
    put(t, c, prof);
  };
  auto put_rho2 = [&](cxd c, const ThetaProfile& prof, int dnu) {
    AtomExponents t = e;
    t.s2 += 2;
    t.nu_pow += dnu;
    put(t, c, prof);
  };
  // with X_i = (nu sqrt(s))^i e^{-nu sqrt(s)}:
  //   dtheta X_i = nu' rho (i X_{i-1} - X_i),      rho = r sqrt(s)
  //   d2theta X_i = nu'' rho (i X_{i-1} - X_i)
  //               + (nu' rho)^2 (i(i-1) X_{i-2} - 2i X_{i-1} + X_i)
  // 2 P' dtheta X_i:
  if (i >= 1) put_rho1(coef * 2.0 * double(i), Pd.times_fn(nh1), -1);
  put_rho1(-coef * 2.0, Pd.times_fn(nh1), 0);
  // P nu'' rho (...):
  if (i >= 1) put_rho1(coef * double(i), P.times_fn(nh2), -1);
  put_rho1(-coef, P.times_fn(nh2), 0);
  // P cot nu' rho (...):
  const ThetaProfile Pcn = P.times_fn(nh1).times_cot();
  if (i >= 1) put_rho1(coef * double(i), Pcn, -1);
  put_rho1(-coef, Pcn, 0);
  // P (nu' rho)^2 (...):
  auto nh1sq = [&](double th) {
    const double d = ctx.cone.nu_hat_smooth_d1(th);
    return d * d;
  };
  const ThetaProfile Pn2 = P.times_fn(nh1sq);
  if (i >= 2) put_rho2(coef * double(i) * double(i - 1), Pn2, -2);
  if (i >= 1) put_rho2(-coef * 2.0 * double(i), Pn2, -1);
  put_rho2(coef, Pn2, 0);
}

// Full scalar Laplacian of one slot: d_rr + (2/r) d_r + surface part.
void slot_laplacian(const AtomContext& ctx, double mu, const AtomExponents& e, const cxd& coef,
                    const ThetaProfile& P, int m, const PutFn& put) {
  struct Term {
    AtomExponents e;
    cxd c;
  };
  std::vector<Term> first;
  {
    Term t{e, coef * (mu + e.r_off + e.nu_pow)};
    t.e.r_off -= 1;
    first.push_back(t);
    if (e.log_pow >= 1) {
      Term l{e, coef * double(e.log_pow)};
      l.e.r_off -= 1;
      l.e.log_pow -= 1;
      first.push_back(l);
    }
    if (e.layer) {
      Term x{e, -coef};
      x.e.r_off -= 1;
      x.e.nu_pow += 1;
      first.push_back(x);
    }
  }
  for (const Term& t : first) {
    {
      Term u{t.e, t.c * (mu + t.e.r_off + t.e.nu_pow)};
      u.e.r_off -= 1;
      put(u.e, u.c, P);
    }
    if (t.e.log_pow >= 1) {
      Term u{t.e, t.c * double(t.e.log_pow)};
      u.e.r_off -= 1;
      u.e.log_pow -= 1;
      put(u.e, u.c, P);
    }
    if (t.e.layer) {
      Term u{t.e, -t.c};
      u.e.r_off -= 1;
      u.e.nu_pow += 1;
      put(u.e, u.c, P);
    }
    Term u{t.e, 2.0 * t.c};  // (2/r) d_r
    u.e.r_off -= 1;
    put(u.e, u.c, P);
  }
  angular_laplacian(ctx, e, coef, P, m, put);
}

}  // namespace

VectorAtoms gradient(const AtomContext& ctx, const ScalarAtoms& p, double mu) {
  VectorAtoms out;
  auto push = [&](const ScalarAtom& proto, int slot, AtomExponents e, cxd c, ThetaProfile P) {
    const ThetaProfile zero = ThetaProfile::constant(proto.ang.A.basis(), 0.0);
    VectorAtom v;
    v.coef = c;
    v.e = e;
    v.ang.m = proto.ang.m;
    v.ang.parity = proto.ang.parity;
    v.ang.ar = zero;
    v.ang.ath = zero;
    v.ang.aph = zero;
    if (slot == 0)
      v.ang.ar = std::move(P);
    else if (slot == 1)
      v.ang.ath = std::move(P);
    else
      v.ang.aph = std::move(P);
    out.push_back(std::move(v));
  };
  for (const auto& a : p) {
    std::vector<ScalarAtom> dr;
    d_r_per_atom(a, mu, dr);
    for (auto& t : dr) push(a, 0, t.e, t.coef, t.ang.A);
    d_theta_over_r(ctx, a.e, a.coef, a.ang.A,
                   [&](AtomExponents e, cxd c, ThetaProfile P) { push(a, 1, e, c, std::move(P)); });
    if (a.ang.m != 0) {
      AtomExponents e = a.e;
      e.r_off -= 1;
      push(a, 2, e, a.coef * sigma_grad(a.ang.parity) * double(a.ang.m), a.ang.A.over_sin());
    }
  }
  return merge_atoms(std::move(out));
}

ScalarAtoms divergence(const AtomContext& ctx, const VectorAtoms& u, double mu) {
  ScalarAtoms out;
  auto push = [&](const VectorAtom& proto, AtomExponents e, cxd c, ThetaProfile P) {
    ScalarAtom s;
    s.coef = c;
    s.e = e;
    s.ang = {std::move(P), proto.ang.m, proto.ang.parity};
    out.push_back(std::move(s));
  };
  for (const auto& a : u) {
    // d_r a_r + (2/r) a_r
    {
      VectorAtoms dr;
      d_r_per_atom(a, mu, dr);
      for (auto& t : dr) push(a, t.e, t.coef, t.ang.ar);
      AtomExponents e = a.e;
      e.r_off -= 1;
      push(a, e, 2.0 * a.coef, a.ang.ar);
    }
    // (1/r)(dtheta a_th + cot a_th) + sgn m a_ph / (r sin)
    // The theta derivative of the profile itself is combined with the
    // coordinate-singular pieces so the axis limit is taken of the sum.
    {
      ThetaProfile comb = a.ang.ath.derivative();
      ThetaProfile sing = a.ang.ath.times_cot();
      if (a.ang.m != 0)
        sing = sing.plus(a.ang.aph.over_sin().scaled(sigma_div(a.ang.parity) * double(a.ang.m)));
      AtomExponents e = a.e;
      e.r_off -= 1;
      push(a, e, a.coef, comb.plus(sing));
    }
    if (a.e.layer) {
      // theta derivative hitting the layer factors of a_th
      auto nh1 = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
      if (a.e.nu_pow >= 1) {
        AtomExponents t = a.e;
        t.s2 += 1;
        t.nu_pow -= 1;
        push(a, t, a.coef * double(a.e.nu_pow), a.ang.ath.times_fn(nh1));
      }
      AtomExponents t = a.e;
      t.s2 += 1;
      push(a, t, -a.coef, a.ang.ath.times_fn(nh1));
    }
  }
  return merge_atoms(std::move(out));
}

VectorAtoms vector_laplacian(const AtomContext& ctx, const VectorAtoms& u, double mu) {
  VectorAtoms out;
  auto push = [&](const VectorAtom& proto, int slot, AtomExponents e, cxd c, ThetaProfile P) {
    const ThetaProfile zero = ThetaProfile::constant(proto.ang.ar.basis(), 0.0);
    VectorAtom v;
    v.coef = c;
    v.e = e;
    v.ang.m = proto.ang.m;
    v.ang.parity = proto.ang.parity;
    v.ang.ar = zero;
    v.ang.ath = zero;
    v.ang.aph = zero;
    if (slot == 0)
      v.ang.ar = std::move(P);
    else if (slot == 1)
      v.ang.ath = std::move(P);
    else
      v.ang.aph = std::move(P);
    out.push_back(std::move(v));
  };
  for (const auto& a : u) {
    const int m = a.ang.m;
    const double sg = sigma_grad(a.ang.parity);
    const double sd = sigma_div(a.ang.parity);
    slot_laplacian(ctx, mu, a.e, a.coef, a.ang.ar, m,
                   [&](AtomExponents e, cxd c, ThetaProfile P) { push(a, 0, e, c, std::move(P)); });
    slot_laplacian(ctx, mu, a.e, a.coef, a.ang.ath, m,
                   [&](AtomExponents e, cxd c, ThetaProfile P) { push(a, 1, e, c, std::move(P)); });
    slot_laplacian(ctx, mu, a.e, a.coef, a.ang.aph, m,
                   [&](AtomExponents e, cxd c, ThetaProfile P) { push(a, 2, e, c, std::move(P)); });

    // r slot coupling: -2/r^2 [ a_r + dtheta a_th + cot a_th + sd m a_ph/sin ]
    {
      ThetaProfile sing = a.ang.ath.times_cot();
      if (m != 0) sing = sing.plus(a.ang.aph.over_sin().scaled(sd * double(m)));
      ThetaProfile comb = a.ang.ar.plus(a.ang.ath.derivative()).plus(sing);
      AtomExponents e = a.e;
      e.r_off -= 2;
      push(a, 0, e, -2.0 * a.coef, comb);
      if (a.e.layer) {
        auto nh1 = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
        if (a.e.nu_pow >= 1) {
          AtomExponents t = a.e;
          t.s2 += 1;
          t.r_off -= 1;
          t.nu_pow -= 1;
          push(a, 0, t, -2.0 * a.coef * double(a.e.nu_pow), a.ang.ath.times_fn(nh1));
        }
        AtomExponents t = a.e;
        t.s2 += 1;
        t.r_off -= 1;
        push(a, 0, t, 2.0 * a.coef, a.ang.ath.times_fn(nh1));
      }
    }
    // theta slot coupling: (2/r^2) dtheta a_r - [a_th + 2 sd m cos a_ph]/(r sin)^2
    {
      ThetaProfile sing = a.ang.ath;
      if (m != 0)
        sing = sing.plus(
            a.ang.aph.times_fn([](double th) { return std::cos(th); }).scaled(2.0 * sd * double(m)));
      ThetaProfile comb =
          a.ang.ar.derivative().scaled(2.0).plus(sing.over_sin().over_sin().scaled(-1.0));
      AtomExponents e = a.e;
      e.r_off -= 2;
      push(a, 1, e, a.coef, comb);
      if (a.e.layer) {
        auto nh1 = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
        if (a.e.nu_pow >= 1) {
          AtomExponents t = a.e;
          t.s2 += 1;
          t.r_off -= 1;
          t.nu_pow -= 1;
          push(a, 1, t, 2.0 * a.coef * double(a.e.nu_pow), a.ang.ar.times_fn(nh1));
        }
        AtomExponents t = a.e;
        t.s2 += 1;
        t.r_off -= 1;
        push(a, 1, t, -2.0 * a.coef, a.ang.ar.times_fn(nh1));
      }
    }
    // phi slot coupling: -a_ph/(r sin)^2 + (2 sg m/r^2)[ a_r/sin + cos a_th/sin^2 ]
    {
      ThetaProfile comb = a.ang.aph.over_sin().over_sin().scaled(-1.0);
      if (m != 0) {
        ThetaProfile t1 = a.ang.ar.over_sin();
        ThetaProfile t2 =
            a.ang.ath.times_fn([](double th) { return std::cos(th); }).over_sin().over_sin();
        comb = comb.plus(t1.plus(t2).scaled(2.0 * sg * double(m)));
      }
      AtomExponents e = a.e;
      e.r_off -= 2;
      push(a, 2, e, a.coef, comb);
    }
  }
  return merge_atoms(std::move(out));
}

ScalarAtoms scalar_laplacian(const AtomContext& ctx, const ScalarAtoms& p, double mu) {
  ScalarAtoms out;
  for (const auto& a : p)
    slot_laplacian(ctx, mu, a.e, a.coef, a.ang.A, a.ang.m,
                   [&](AtomExponents e, cxd c, ThetaProfile P) {
                     ScalarAtom s;
                     s.coef = c;
                     s.e = e;
                     s.ang = {std::move(P), a.ang.m, a.ang.parity};
                     out.push_back(std::move(s));
                   });
  return merge_atoms(std::move(out));
}

VectorAtoms stokes_force(const AtomContext& ctx, const VectorAtoms& u, const ScalarAtoms& p,
                         double mu) {
  VectorAtoms out;
  for (auto a : u) {
    a.e.s2 += 2;  // s * u
    out.push_back(std::move(a));
  }
  for (auto& a : vector_laplacian(ctx, u, mu)) {
    a.coef *= -1.0;
    out.push_back(std::move(a));
  }
  for (auto& a : gradient(ctx, p, mu)) out.push_back(std::move(a));
  return merge_atoms(std::move(out));
}

ScalarAngular normal_component(const AtomContext& ctx, const VectorAngular& v) {
  auto nr = [&](double th) { return ctx.cone.nu_hat_smooth(th); };
  auto nt = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
  ScalarAngular s;
  s.m = v.m;
  s.parity = v.parity;
  s.A = v.ar.times_fn(nr).plus(v.ath.times_fn(nt));
  return s;
}

VectorAngular tangential_component(const AtomContext& ctx, const VectorAngular& v) {
  const ScalarAngular vn = normal_component(ctx, v);
  auto nr = [&](double th) { return ctx.cone.nu_hat_smooth(th); };
  auto nt = [&](double th) { return ctx.cone.nu_hat_smooth_d1(th); };
  VectorAngular t;
  t.m = v.m;
  t.parity = v.parity;
  t.ar = v.ar.plus(vn.A.times_fn(nr).scaled(-1.0));
  t.ath = v.ath.plus(vn.A.times_fn(nt).scaled(-1.0));
  t.aph = v.aph;
  return t;
}

ScalarAtoms radial_derivative(const ScalarAtoms& p, double mu) {
  ScalarAtoms out;
  for (const auto& a : p) d_r_per_atom(a, mu, out);
  return merge_atoms(std::move(out));
}

VectorAtoms radial_derivative(const VectorAtoms& u, double mu) {
  VectorAtoms out;
  for (const auto& a : u) d_r_per_atom(a, mu, out);
  return merge_atoms(std::move(out));
}

namespace {

cxd atom_common_factor(const AtomContext& ctx, const AtomExponents& e, double mu,
                       const SpatialPoint& x, const cxd& s) {
  cxd f = pow_half(s, e.s2) * std::pow(x.r, mu + e.r_off);
  if (e.log_pow > 0) f *= std::pow(cxd(std::log(x.r), 0.0), e.log_pow);
  if (e.layer) {
    const cxd rs = sqrt_prh(s);
    const cxd nus = ctx.cone.nu_hat_smooth(x.theta) * x.r * rs;
    if (e.nu_pow > 0) f *= std::pow(nus, e.nu_pow);
    f *= std::exp(-nus);
  }
  if (e.chi) f *= chi_cutoff(ctx.cone, ctx.cone.nu_hat(x.theta));
  return f;
}

}  // namespace

cxd eval_scalar(const AtomContext& ctx, const ScalarAtoms& atoms, double mu,
                const SpatialPoint& x, const cxd& s) {
  KahanSumC acc;
  for (const auto& a : atoms) {
    const cxd f = a.coef * atom_common_factor(ctx, a.e, mu, x, s);
    acc.add(f * a.ang.A.eval(x.theta) * trig_factor(a.ang.parity, a.ang.m, x.phi));
  }
  return acc.value();
}

CVec3 eval_vector(const AtomContext& ctx, const VectorAtoms& atoms, double mu,
                  const SpatialPoint& x, const cxd& s) {
  KahanSumC a0, a1, a2;
  const Vec3 er = e_r(x.theta, x.phi), et = e_theta(x.theta, x.phi), ep = e_phi(x.phi);
  for (const auto& a : atoms) {
    const cxd f = a.coef * atom_common_factor(ctx, a.e, mu, x, s);
    const double tr = trig_factor(a.ang.parity, a.ang.m, x.phi);
    const double tp = trig_factor_phi_slot(a.ang.parity, a.ang.m, x.phi);
    const cxd vr = f * a.ang.ar.eval(x.theta) * tr;
    const cxd vt = f * a.ang.ath.eval(x.theta) * tr;
    const cxd vp = f * a.ang.aph.eval(x.theta) * tp;
    a0.add(vr * er[0] + vt * et[0] + vp * ep[0]);
    a1.add(vr * er[1] + vt * et[1] + vp * ep[1]);
    a2.add(vr * er[2] + vt * et[2] + vp * ep[2]);
  }
  return {a0.value(), a1.value(), a2.value()};
}

}  // namespace conestokes
