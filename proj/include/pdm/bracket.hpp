#pragma once

// Exact pointwise gradients and canonical Poisson brackets by forward-mode
// dual numbers, with a central-difference oracle.

#include <array>
#include <complex>

#include "pdm/observable.hpp"
#include "pdm/phase.hpp"

namespace pdm {

struct PhaseGradient {
  double dF_dr = 0;
  double dF_dphi = 0;
  double dF_dpr = 0;
  double dF_dpphi = 0;

  std::array<double, 4> as_array() const { return {dF_dr, dF_dphi, dF_dpr, dF_dpphi}; }
};

PhaseState<Dual1> seed(const PhasePoint& point);

PhaseGradient gradient(const Observable& f, const PhasePoint& point);

// {F,G} = F_r G_pr - F_pr G_r + F_phi G_pphi - F_pphi G_phi
double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& point);
std::complex<double> poisson_bracket(const ComplexObservable& z, const Observable& g,
                                     const PhasePoint& point);

// Default relative step (machine epsilon)^(1/3).
double default_fd_step();

// Central differences; the step for coordinate i is h * max(1, |x_i|).
PhaseGradient gradient_fd(const Observable& f, const PhasePoint& point, double h);
double poisson_bracket_fd(const Observable& f, const Observable& g, const PhasePoint& point,
                          double h);

// {F,G} as an observable. Its value needs first-order duals of F and G and
// its gradient needs second-order duals; deeper nesting is unsupported.
Observable bracket_observable(const Observable& f, const Observable& g);

// Acceptance threshold for |{F,G}|:
//   max(abs_tol, rel_tol * max(|F|,|G|,1) * m^2), m = max(1, |p_r|, |p_phi|).
struct BracketTolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;

  double scale(double f_value, double g_value, const PhasePoint& point) const;
  double threshold(double f_value, double g_value, const PhasePoint& point) const;
};

}  // namespace pdm
