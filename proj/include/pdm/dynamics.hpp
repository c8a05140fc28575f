#pragma once

// Hamilton's equations from any family Hamiltonian, an adaptive embedded
// Runge-Kutta 5(4) integrator with domain guards, and drift reporting for
// the monitored integrals.

#include <array>
#include <string>
#include <vector>

#include "pdm/observables.hpp"
#include "pdm/phase.hpp"

namespace pdm {

using PhaseVector = std::array<double, 4>;

// (dr/dt, dphi/dt, dp_r/dt, dp_phi/dt) = (H_pr, H_pphi, -H_r, -H_phi).
PhaseVector hamilton_vector_field(const Observable& hamiltonian, const PhasePoint& point);
PhaseVector hamilton_vector_field(const ModelParams& params, const PhasePoint& point);

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-14;
  double h_max = 1.0;
  double t_end = 10.0;
  double r_guard_min = 1e-3;
  double r_guard_max = 1e3;
  double phi_margin = 1e-6;
  long max_steps = 10'000'000;
};

void require_valid(const IntegratorConfig& config);

enum class Termination { Completed, SingularityApproach, StepFailure };
std::string_view to_string(Termination t);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::vector<std::string> monitor_names;
  // monitors[k][i] is monitor k at state i; scales holds the matching sum of
  // absolute term values.
  std::vector<std::vector<double>> monitors;
  std::vector<std::vector<double>> monitor_scales;
  Termination termination = Termination::Completed;
  std::string message;
  long rejected_steps = 0;

  std::size_t size() const noexcept { return states.size(); }
};

// Monitors H and every integral bound to the family.
Trajectory integrate(const ModelParams& params, const PhasePoint& initial,
                     const IntegratorConfig& config);
Trajectory integrate(const ModelParams& params, const PhasePoint& initial,
                     const IntegratorConfig& config, const std::vector<Integral>& monitors);

struct DriftEntry {
  std::string name;
  double max_abs = 0;
  // max_t |J(t) - J(0)| / max_t (sum of |terms of J|)
  double relative = 0;
  bool flagged = false;
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  const DriftEntry* find(std::string_view name) const;
  double max_relative() const;
};

DriftReport drift_report(const Trajectory& trajectory, double tolerance);

// Round trip: forward to t_end, reverse momenta, forward again. Returns the
// componentwise error max |x_i - x0_i| / max(1, |x0_i|) against the
// momentum-reversed initial state, or a negative value if either leg
// terminated early.
double time_reversal_error(const ModelParams& params, const PhasePoint& initial,
                           const IntegratorConfig& config);

}  // namespace pdm
