#include "pdm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdm/bracket.hpp"
#include "pdm/hamiltonian.hpp"

namespace pdm {

PhaseVector hamilton_vector_field(const Observable& hamiltonian, const PhasePoint& point) {
  const PhaseGradient g = gradient(hamiltonian, point);
  return {g.dF_dpr, g.dF_dpphi, -g.dF_dr, -g.dF_dphi};
}

PhaseVector hamilton_vector_field(const ModelParams& params, const PhasePoint& point) {
  require_valid(point, params, 0.0);
  return hamilton_vector_field(hamiltonian_observable(params), point);
}

void require_valid(const IntegratorConfig& c) {
  if (!(c.rtol > 0.0 && c.atol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rtol and atol must be > 0");
  if (!(0.0 < c.h_min && c.h_min <= c.h_init && c.h_init <= c.h_max))
    throw Error(ErrorCode::InvalidArgument, "need 0 < h_min <= h_init <= h_max");
  if (!(c.t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be > 0");
  if (!(0.0 < c.r_guard_min && c.r_guard_min < c.r_guard_max))
    throw Error(ErrorCode::InvalidArgument, "invalid radial guard");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::SingularityApproach: return "SingularityApproach";
    case Termination::StepFailure: return "StepFailure";
  }
  return "?";
}

namespace {

PhasePoint to_point(const PhaseVector& y) { return {y[0], y[1], y[2], y[3]}; }
PhaseVector to_vector(const PhasePoint& p) { return {p.r, p.phi, p.p_r, p.p_phi}; }

bool all_finite(const PhaseVector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the fifth- and fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
 public:
  Stepper(const ModelParams& params, const IntegratorConfig& config)
      : params_(params), config_(config), hamiltonian_(hamiltonian_observable(params)) {}

  // Right-hand side; returns false where the field is undefined.
  bool rhs(const PhaseVector& y, PhaseVector& out) const {
    const PhasePoint p = to_point(y);
    if (!validate(p, params_, 0.0)) return false;
    out = hamilton_vector_field(hamiltonian_, p);
    return all_finite(out);
  }

  // One trial step; returns the scaled error norm (infinity on failure).
  double attempt(const PhaseVector& y, const PhaseVector& k1, double h, PhaseVector& y_new,
                 PhaseVector& k7) const {
    PhaseVector k2, k3, k4, k5, k6, tmp;
    auto stage = [&](auto combine, PhaseVector& k) {
      for (std::size_t i = 0; i < 4; ++i) tmp[i] = y[i] + h * combine(i);
      return rhs(tmp, k);
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!stage([&](std::size_t i) { return a21 * k1[i]; }, k2)) return inf;
    if (!stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }, k3)) return inf;
    if (!stage([&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }, k4))
      return inf;
    if (!stage([&](std::size_t i) {
          return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
        }, k5))
      return inf;
    if (!stage([&](std::size_t i) {
          return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
        }, k6))
      return inf;
    for (std::size_t i = 0; i < 4; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (!rhs(y_new, k7)) return inf;

    double norm = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double err =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = config_.atol + config_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      norm = std::max(norm, std::abs(err) / sc);
    }
    return std::isfinite(norm) ? norm : inf;
  }

  // Empty when the state is inside the guards.
  std::string guard_violation(const PhaseVector& y) const {
    if (y[0] < config_.r_guard_min || y[0] > config_.r_guard_max) return "radial guard";
    const auto v = validate(to_point(y), params_, config_.phi_margin);
    if (!v) return "domain guard: " + std::string(to_string(*v.error)) + " " + v.detail;
    return {};
  }

 private:
  ModelParams params_;
  IntegratorConfig config_;
  Observable hamiltonian_;
};

void record(Trajectory& traj, const std::vector<Integral>& monitors, double t,
            const PhasePoint& p) {
  traj.times.push_back(t);
  traj.states.push_back(p);
  for (std::size_t k = 0; k < monitors.size(); ++k) {
    traj.monitors[k].push_back(monitors[k](p));
    traj.monitor_scales[k].push_back(monitors[k].term_scale(p));
  }
}

}  // namespace

Trajectory integrate(const ModelParams& params, const PhasePoint& initial,
                     const IntegratorConfig& config) {
  std::vector<Integral> monitors{integral(params.family, "H", params)};
  for (const auto& name : integral_names(params.family))
    monitors.push_back(integral(params.family, name, params));
  return integrate(params, initial, config, monitors);
}

Trajectory integrate(const ModelParams& params, const PhasePoint& initial,
                     const IntegratorConfig& config, const std::vector<Integral>& monitors) {
  require_valid(params);
  require_valid(config);
  require_valid(initial, params, config.phi_margin);

  Trajectory traj;
  for (const auto& m : monitors) traj.monitor_names.push_back(m.name());
  traj.monitors.resize(monitors.size());
  traj.monitor_scales.resize(monitors.size());

  const Stepper stepper(params, config);
  PhaseVector y = to_vector(initial);
  PhaseVector k1;
  if (!stepper.rhs(y, k1)) throw Error(ErrorCode::NonFinite, "vector field undefined at start");
  double t = 0.0;
  double h = config.h_init;
  record(traj, monitors, t, initial);

  for (long step = 0; t < config.t_end; ++step) {
    if (step >= config.max_steps) {
      traj.termination = Termination::StepFailure;
      traj.message = "step budget exhausted";
      return traj;
    }
    // Stretch a step that would leave a sliver of roundoff size before t_end.
    const bool last = t + h * (1.0 + 1e-7) >= config.t_end;
    const double h_try = last ? config.t_end - t : h;
    PhaseVector y_new, k7;
    const double err = stepper.attempt(y, k1, h_try, y_new, k7);
    if (!(err <= 1.0)) {
      ++traj.rejected_steps;
      const double factor =
          std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      h = h_try * factor;
      if (h < config.h_min) {
        traj.termination = Termination::StepFailure;
        traj.message = "step size fell below h_min at t=" + std::to_string(t);
        return traj;
      }
      continue;
    }
    t = last ? config.t_end : t + h_try;
    y = y_new;
    k1 = k7;
    const std::string violation = stepper.guard_violation(y);
    if (!violation.empty()) {
      traj.termination = Termination::SingularityApproach;
      traj.message = violation + " at t=" + std::to_string(t);
      if (validate(to_point(y), params, 0.0)) record(traj, monitors, t, to_point(y));
      return traj;
    }
    record(traj, monitors, t, to_point(y));
    const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
    h = std::clamp(h_try * grow, config.h_min, config.h_max);
  }
  return traj;
}

const DriftEntry* DriftReport::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

double DriftReport::max_relative() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.relative);
  return m;
}

DriftReport drift_report(const Trajectory& traj, double tolerance) {
  if (traj.states.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no states");
  DriftReport report;
  for (std::size_t k = 0; k < traj.monitor_names.size(); ++k) {
    DriftEntry e{traj.monitor_names[k]};
    const auto& values = traj.monitors[k];
    double scale = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      e.max_abs = std::max(e.max_abs, std::abs(values[i] - values[0]));
      scale = std::max(scale, traj.monitor_scales[k][i]);
    }
    e.relative = scale > 0.0 ? e.max_abs / scale : e.max_abs;
    e.flagged = e.relative > tolerance;
    report.entries.push_back(std::move(e));
  }
  return report;
}

double time_reversal_error(const ModelParams& params, const PhasePoint& initial,
                           const IntegratorConfig& config) {
  const std::vector<Integral> none;
  const Trajectory forward = integrate(params, initial, config, none);
  if (forward.termination != Termination::Completed) return -1.0;
  PhasePoint back = forward.states.back();
  back.p_r = -back.p_r;
  back.p_phi = -back.p_phi;
  const Trajectory reverse = integrate(params, back, config, none);
  if (reverse.termination != Termination::Completed) return -1.0;
  const PhasePoint end = reverse.states.back();
  const PhaseVector target = {initial.r, initial.phi, -initial.p_r, -initial.p_phi};
  const PhaseVector got = to_vector(end);
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    err = std::max(err, std::abs(got[i] - target[i]) / std::max(1.0, std::abs(target[i])));
  return err;
}

}  // namespace pdm
