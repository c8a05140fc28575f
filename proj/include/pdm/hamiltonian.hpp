#pragma once

// Kinetic term T_n = 1/2 r^{2n} (p_r^2 + p_phi^2 / r^2), the family
// potentials, and the four Euclidean reference potentials V_a..V_d.

#include <string>
#include <string_view>
#include <vector>

#include "pdm/observable.hpp"
#include "pdm/phase.hpp"

namespace pdm {

double kinetic(double n, const PhasePoint& point);
double potential(const ModelParams& params, double r, double phi);
double hamiltonian(const ModelParams& params, const PhasePoint& point);

Observable kinetic_observable(double n);
Observable potential_observable(const ModelParams& params);
Observable hamiltonian_observable(const ModelParams& params);

// Catalog entry used by the CLI listing.
struct FamilyInfo {
  Family family;
  std::string_view group;
  std::string_view potential;
  std::vector<std::string> integrals;
};

const FamilyInfo& family_info(Family f);

enum class EuclideanTag { Va, Vb, Vc, Vd };

std::string_view to_string(EuclideanTag t);
std::optional<EuclideanTag> parse_euclidean(std::string_view name);

// Va, Vb use omega0; Vc, Vd use k0.
struct EuclideanCouplings {
  double omega0 = 0;
  double k0 = 0;
  double k1 = 0;
  double k2 = 0;
};

double euclidean_potential(EuclideanTag which, const EuclideanCouplings& c, double x, double y);

// Family whose n = 0 member reduces to the given Euclidean potential.
Family matching_family(EuclideanTag which);

// Euclidean couplings equivalent to the n = 0 pdm couplings at `point`.
// The V_d map carries the half-angle sheet signs of the point.
EuclideanCouplings euclidean_couplings(EuclideanTag which, const ModelParams& params,
                                       const PhasePoint& point);

// |U_{0,family}(r,phi) - V(x,y)| / max(1, |U|, |V|) under the coefficient map;
// params.n must be 0.
double euclid_equivalence_residual(EuclideanTag which, const ModelParams& params,
                                   const PhasePoint& point);

}  // namespace pdm
