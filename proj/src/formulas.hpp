#pragma once

// Closed-form kinetic term, Noether momenta and potentials over a generic
// scalar (double, Dual1, Dual2). Shared by geometry, hamiltonian and
// observables so every quantity has exactly one transcription.

#include <cmath>

#include "pdm/dual.hpp"
#include "pdm/phase.hpp"

namespace pdm::detail {

using std::cos;
using std::pow;
using std::sin;
using std::sqrt;

template <class S>
S kinetic(double n, const PhaseState<S>& x) {
  return 0.5 * pow(x.r, 2.0 * n) * (x.p_r * x.p_r + x.p_phi * x.p_phi / (x.r * x.r));
}

template <class S>
S noether_p1(double n, const PhaseState<S>& x) {
  const double kn = n - 1.0;
  return pow(x.r, n) * (x.p_r * cos(kn * x.phi) + x.p_phi * sin(kn * x.phi) / x.r);
}

template <class S>
S noether_p2(double n, const PhaseState<S>& x) {
  const double kn = n - 1.0;
  return pow(x.r, n) * (x.p_r * sin(kn * x.phi) - x.p_phi * cos(kn * x.phi) / x.r);
}

template <class S>
S potential(const ModelParams& m, const S& r, const S& phi) {
  const double kn = m.k_n();
  const S c = cos(kn * phi);
  const S s = sin(kn * phi);
  switch (m.family) {
    case Family::geodesic:
      return S(0.0);
    case Family::na_central:
      return m.k0 * pow(r, -2.0 * kn);
    case Family::na:
      return m.k0 * pow(r, -2.0 * kn) + pow(r, 2.0 * kn) * (m.k1 / (c * c) + m.k2 / (s * s));
    case Family::na_prime:
      return m.k0 * pow(r, -2.0 * kn) + pow(r, -kn) * (m.k1 * c + m.k2 * s);
    case Family::nb:
      return m.k0 * pow(r, -2.0 * kn) * (c * c + 4.0 * s * s) + pow(r, 2.0 * kn) * m.k1 / (c * c) +
             m.k2 * pow(r, -kn) * s;
    case Family::nc:
      return m.k0 * pow(r, kn);
    case Family::nc1:
      return m.k0 * pow(r, kn) + pow(r, 2.0 * kn) * (m.k1 / (s * s) + m.k2 * c / (s * s));
    case Family::nc2:
      return m.k0 * pow(r, kn) + pow(r, 2.0 * kn) * (m.k1 / (c * c) + m.k2 * s / (c * c));
    case Family::nd: {
      const S ch = cos(0.5 * kn * phi);
      const S sh = sin(0.5 * kn * phi);
      return m.k0 * pow(r, kn) + pow(r, 0.5 * kn) * (m.k1 * ch + m.k2 * sh);
    }
  }
  return S(0.0);
}

template <class S>
S hamiltonian(const ModelParams& m, const PhaseState<S>& x) {
  return kinetic(m.n, x) + potential(m, x.r, x.phi);
}

}  // namespace pdm::detail
