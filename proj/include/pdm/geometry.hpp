#pragma once

// Conformally flat metric ds^2 = r^{-2n}(dr^2 + r^2 dphi^2), its three
// Killing vectors, the associated Noether momenta and curvature.

#include <array>
#include <functional>

#include "pdm/dual.hpp"
#include "pdm/observable.hpp"
#include "pdm/phase.hpp"

namespace pdm {

struct MetricComponents {
  double g_rr = 0;
  double g_phiphi = 0;
};

struct TangentVector {
  double v_r = 0;
  double v_phi = 0;
};

enum class KillingField { X1, X2, XJ };
enum class NoetherMomentum { P1, P2, Pphi };

MetricComponents metric(double n, double r);

TangentVector killing_vector(KillingField which, double n, const PhasePoint& point);

// A vector field on configuration space, evaluated over Dual1 so that its
// Jacobian is available. Returns (v_r, v_phi).
using TangentField = std::function<std::array<Dual1, 2>(const Dual1& r, const Dual1& phi)>;

TangentField killing_field(KillingField which, double n);

// (L_X g)_{ab}; `scale` is the sum of magnitudes of the individual terms, so
// max(|rr|,|rphi|,|phiphi|)/scale is a roundoff-relative residual.
struct SymmetricResidual {
  double rr = 0;
  double rphi = 0;
  double phiphi = 0;
  double scale = 0;

  double max_abs() const;
  double relative() const;
};

SymmetricResidual lie_derivative_metric(const TangentField& field, double n,
                                        const PhasePoint& point);
SymmetricResidual lie_derivative_metric(KillingField which, double n, const PhasePoint& point);

// R_{1212} from second derivatives of the metric and the Christoffel
// contraction, coordinates (1,2) = (r, phi).
double curvature_R1212(double n, double r);

double noether_momentum(NoetherMomentum which, double n, const PhasePoint& point);
Observable noether_observable(NoetherMomentum which, double n);

}  // namespace pdm
