#include "pdm/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "formulas.hpp"

namespace pdm {

double kinetic(double n, const PhasePoint& point) {
  if (!(point.r > 0.0)) throw Error(ErrorCode::RadiusNonPositive, "r must be > 0");
  return detail::kinetic(n, point);
}

double potential(const ModelParams& params, double r, double phi) {
  require_valid(PhasePoint{r, phi, 0.0, 0.0}, params, 0.0);
  return detail::potential(params, r, phi);
}

double hamiltonian(const ModelParams& params, const PhasePoint& point) {
  require_valid(point, params, 0.0);
  return detail::hamiltonian(params, point);
}

Observable kinetic_observable(double n) {
  return Observable::from_generic("T", [n](const auto& x) { return detail::kinetic(n, x); });
}

Observable potential_observable(const ModelParams& params) {
  return Observable::from_generic(
      "U", [params](const auto& x) { return detail::potential(params, x.r, x.phi); });
}

Observable hamiltonian_observable(const ModelParams& params) {
  return Observable::from_generic("H",
                                  [params](const auto& x) { return detail::hamiltonian(params, x); });
}

const FamilyInfo& family_info(Family f) {
  static const FamilyInfo catalog[] = {
      {Family::geodesic, "geodesic motion (Noether momenta)", "U = 0", {"P1", "P2", "Pphi"}},
      {Family::na_central, "oscillator-related, central", "U = k0/r^(2kn)",
       {"J1", "J11", "J22", "J12"}},
      {Family::na, "oscillator-related",
       "U = k0/r^(2kn) + r^(2kn) [k1/cos^2(kn phi) + k2/sin^2(kn phi)]", {"Ja1", "Ja2", "Ja3"}},
      {Family::na_prime, "oscillator-related, linear integral",
       "U = k0/r^(2kn) + r^(-kn) [k1 cos(kn phi) + k2 sin(kn phi)]",
       {"Ja1'", "Ja2'", "Ja3'", "J2", "J3"}},
      {Family::nb, "oscillator-related",
       "U = k0/r^(2kn) [cos^2(kn phi) + 4 sin^2(kn phi)] + r^(2kn) k1/cos^2(kn phi) + k2 r^(-kn) "
       "sin(kn phi)",
       {"Jb1", "Jb2", "Jb3"}},
      {Family::nc, "Kepler-related, central", "U = k0 r^(n-1)", {"J1", "J2", "J3"}},
      {Family::nc1, "Kepler-related",
       "U = k0 r^(n-1) + r^(2kn) [k1/sin^2(kn phi) + k2 cos(kn phi)/sin^2(kn phi)]",
       {"Jc2", "Jc3"}},
      {Family::nc2, "Kepler-related",
       "U = k0 r^(n-1) + r^(2kn) [k1/cos^2(kn phi) + k2 sin(kn phi)/cos^2(kn phi)]",
       {"Jc2", "Jc3"}},
      {Family::nd, "Kepler-related, Runge-Lenz pair",
       "U = k0 r^(n-1) + r^(kn/2) [k1 cos(kn phi/2) + k2 sin(kn phi/2)]", {"Jd2", "Jd3"}},
  };
  return catalog[static_cast<int>(f)];
}

std::string_view to_string(EuclideanTag t) {
  switch (t) {
    case EuclideanTag::Va: return "a";
    case EuclideanTag::Vb: return "b";
    case EuclideanTag::Vc: return "c";
    case EuclideanTag::Vd: return "d";
  }
  return "?";
}

std::optional<EuclideanTag> parse_euclidean(std::string_view name) {
  if (name == "a" || name == "Va") return EuclideanTag::Va;
  if (name == "b" || name == "Vb") return EuclideanTag::Vb;
  if (name == "c" || name == "Vc") return EuclideanTag::Vc;
  if (name == "d" || name == "Vd") return EuclideanTag::Vd;
  return std::nullopt;
}

double euclidean_potential(EuclideanTag which, const EuclideanCouplings& c, double x, double y) {
  auto singular = [](const char* what) { return Error(ErrorCode::CartesianSingularity, what); };
  if (x == 0.0 && y == 0.0) throw singular("origin");
  const double rho = std::hypot(x, y);
  const double w2 = c.omega0 * c.omega0;
  switch (which) {
    case EuclideanTag::Va:
      if (x == 0.0 || y == 0.0) throw singular("V_a needs x != 0 and y != 0");
      return 0.5 * w2 * (x * x + y * y) + c.k1 / (x * x) + c.k2 / (y * y);
    case EuclideanTag::Vb:
      if (x == 0.0) throw singular("V_b needs x != 0");
      return 0.5 * w2 * (x * x + 4.0 * y * y) + c.k1 / (x * x) + c.k2 * y;
    case EuclideanTag::Vc:
      if (y == 0.0) throw singular("V_c needs y != 0");
      return c.k0 / rho + c.k1 / (y * y) + c.k2 * x / (y * y * rho);
    case EuclideanTag::Vd:
      return c.k0 / rho + c.k1 * std::sqrt(rho + x) / rho + c.k2 * std::sqrt(rho - x) / rho;
  }
  return 0.0;
}

Family matching_family(EuclideanTag which) {
  switch (which) {
    case EuclideanTag::Va: return Family::na;
    case EuclideanTag::Vb: return Family::nb;
    case EuclideanTag::Vc: return Family::nc1;
    case EuclideanTag::Vd: return Family::nd;
  }
  return Family::geodesic;
}

// At n = 0 (k_n = -1) the pdm potentials become, with x = r cos phi, y = r sin phi:
//   U_na  = k0 (x^2+y^2) + k1/x^2 + k2/y^2            -> V_a with omega0^2 = 2 k0
//   U_nb  = k0 (x^2+4y^2) + k1/x^2 - k2 y             -> V_b with omega0^2 = 2 k0, k2 -> -k2
//   U_nc1 = k0/r + k1/y^2 + k2 x/(y^2 r)              -> V_c unchanged
//   U_nd  = k0/r + r^(-1/2)(k1 cos(phi/2) - k2 sin(phi/2))
// and sqrt(r +- x) = sqrt(2r) |cos(phi/2)|, |sin(phi/2)| gives V_d with
// k1 = sqrt2 sgn(cos(phi/2)) K1, k2 = -sqrt2 sgn(sin(phi/2)) K2.
EuclideanCouplings euclidean_couplings(EuclideanTag which, const ModelParams& params,
                                       const PhasePoint& point) {
  EuclideanCouplings e;
  switch (which) {
    case EuclideanTag::Va:
    case EuclideanTag::Vb:
      if (params.k0 < 0.0)
        throw Error(ErrorCode::InvalidArgument, "oscillator map needs k0 >= 0 (k0 = omega0^2/2)");
      e.omega0 = std::sqrt(2.0 * params.k0);
      e.k1 = params.k1;
      e.k2 = which == EuclideanTag::Vb ? -params.k2 : params.k2;
      break;
    case EuclideanTag::Vc:
      e.k0 = params.k0;
      e.k1 = params.k1;
      e.k2 = params.k2;
      break;
    case EuclideanTag::Vd: {
      const double sc = std::cos(0.5 * point.phi) < 0.0 ? -1.0 : 1.0;
      const double ss = std::sin(0.5 * point.phi) < 0.0 ? -1.0 : 1.0;
      e.k0 = params.k0;
      e.k1 = sc * params.k1 / std::numbers::sqrt2;
      e.k2 = -ss * params.k2 / std::numbers::sqrt2;
      break;
    }
  }
  return e;
}

double euclid_equivalence_residual(EuclideanTag which, const ModelParams& params,
                                   const PhasePoint& point) {
  if (params.n != 0.0) throw Error(ErrorCode::NonZeroN, "equivalence map is defined at n = 0");
  ModelParams pdm_params = params;
  pdm_params.family = matching_family(which);
  const double u = potential(pdm_params, point.r, point.phi);
  const CartesianPoint c = polar_to_cartesian(point);
  const double v = euclidean_potential(which, euclidean_couplings(which, params, point), c.x, c.y);
  return std::abs(u - v) / std::max({1.0, std::abs(u), std::abs(v)});
}

}  // namespace pdm
