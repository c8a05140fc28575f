#include "pdm/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "formulas.hpp"

namespace pdm {

namespace {

void require_positive_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::RadiusNonPositive, "r must be > 0");
}

template <class S>
std::array<S, 2> metric_diagonal(double n, const S& r) {
  using std::pow;
  return {pow(r, -2.0 * n), pow(r, 2.0 - 2.0 * n)};
}

}  // namespace

MetricComponents metric(double n, double r) {
  require_positive_radius(r);
  const auto g = metric_diagonal(n, r);
  return {g[0], g[1]};
}

TangentField killing_field(KillingField which, double n) {
  const double kn = n - 1.0;
  return [which, n, kn](const Dual1& r, const Dual1& phi) -> std::array<Dual1, 2> {
    switch (which) {
      case KillingField::X1:
        return {pow(r, n) * cos(kn * phi), pow(r, n - 1.0) * sin(kn * phi)};
      case KillingField::X2:
        return {pow(r, n) * sin(kn * phi), -1.0 * pow(r, n - 1.0) * cos(kn * phi)};
      case KillingField::XJ:
        return {Dual1(0.0), Dual1(1.0)};
    }
    return {Dual1(0.0), Dual1(0.0)};
  };
}

TangentVector killing_vector(KillingField which, double n, const PhasePoint& point) {
  require_positive_radius(point.r);
  const auto v = killing_field(which, n)(Dual1(point.r), Dual1(point.phi));
  return {v[0].v, v[1].v};
}

double SymmetricResidual::max_abs() const {
  return std::max({std::abs(rr), std::abs(rphi), std::abs(phiphi)});
}

double SymmetricResidual::relative() const {
  return scale > 0.0 ? max_abs() / scale : max_abs();
}

SymmetricResidual lie_derivative_metric(const TangentField& field, double n,
                                        const PhasePoint& point) {
  require_positive_radius(point.r);
  const Dual1 r = Dual1::variable(point.r, 0);
  const Dual1 phi = Dual1::variable(point.phi, 1);
  const auto g = metric_diagonal(n, r);
  const auto X = field(r, phi);
  // Slots 0 and 1 hold d/dr and d/dphi.
  const double Xr = X[0].v, Xp = X[1].v;
  const double dXr_dr = X[0].d[0], dXr_dp = X[0].d[1];
  const double dXp_dr = X[1].d[0], dXp_dp = X[1].d[1];
  const double grr = g[0].v, gpp = g[1].v;

  const double t_rr[] = {Xr * g[0].d[0], Xp * g[0].d[1], 2.0 * grr * dXr_dr};
  const double t_rp[] = {gpp * dXp_dr, grr * dXr_dp};
  const double t_pp[] = {Xr * g[1].d[0], Xp * g[1].d[1], 2.0 * gpp * dXp_dp};

  SymmetricResidual out;
  for (double t : t_rr) out.rr += t, out.scale += std::abs(t);
  for (double t : t_rp) out.rphi += t, out.scale += std::abs(t);
  for (double t : t_pp) out.phiphi += t, out.scale += std::abs(t);
  return out;
}

SymmetricResidual lie_derivative_metric(KillingField which, double n, const PhasePoint& point) {
  return lie_derivative_metric(killing_field(which, n), n, point);
}

double curvature_R1212(double n, double r_value) {
  require_positive_radius(r_value);
  // Nested duals: outer and inner slot 0 both track r. The metric has no phi
  // dependence, so every slot-1 (d/dphi) derivative comes out zero.
  Dual2 r(Dual1::variable(r_value, 0), {});
  r.d[0] = Dual1(1.0);

  const auto g = metric_diagonal(n, r);
  const double g11 = g[0].v.v, g22 = g[1].v.v;
  // First derivatives d_a g_bb, second derivatives d_a d_b g_cc.
  const double d1g11 = g[0].v.d[0], d2g11 = g[0].v.d[1];
  const double d1g22 = g[1].v.d[0], d2g22 = g[1].v.d[1];
  const double d22g11 = g[0].d[1].d[1];
  const double d11g22 = g[1].d[0].d[0];
  const double d21g21 = 0.0, d12g12 = 0.0;  // off-diagonal vanishes identically

  // Christoffel symbols of the diagonal metric, Gamma[e][a][b].
  const double ginv[2] = {1.0 / g11, 1.0 / g22};
  const double dg[2][2] = {{d1g11, d2g11}, {d1g22, d2g22}};  // dg[c][a] = d_a g_cc
  auto dmetric = [&](int a, int b, int c) {  // d_c g_ab
    return a == b ? dg[a][c] : 0.0;
  };
  double Gamma[2][2][2];
  for (int e = 0; e < 2; ++e)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        Gamma[e][a][b] =
            0.5 * ginv[e] * (dmetric(e, b, a) + dmetric(e, a, b) - dmetric(a, b, e));

  const double gdiag[2] = {g11, g22};
  double contraction = 0.0;
  for (int e = 0; e < 2; ++e)
    contraction += gdiag[e] * (Gamma[e][0][0] * Gamma[e][1][1] - Gamma[e][0][1] * Gamma[e][1][0]);

  return 0.5 * (d21g21 - d22g11 + d12g12 - d11g22) - contraction;
}

double noether_momentum(NoetherMomentum which, double n, const PhasePoint& point) {
  require_positive_radius(point.r);
  switch (which) {
    case NoetherMomentum::P1: return detail::noether_p1(n, point);
    case NoetherMomentum::P2: return detail::noether_p2(n, point);
    case NoetherMomentum::Pphi: return point.p_phi;
  }
  return 0.0;
}

Observable noether_observable(NoetherMomentum which, double n) {
  switch (which) {
    case NoetherMomentum::P1:
      return Observable::from_generic("P1", [n](const auto& x) { return detail::noether_p1(n, x); });
    case NoetherMomentum::P2:
      return Observable::from_generic("P2", [n](const auto& x) { return detail::noether_p2(n, x); });
    case NoetherMomentum::Pphi:
      break;
  }
  return Observable::from_generic("Pphi", [](const auto& x) { return x.p_phi; });
}

}  // namespace pdm
