#include "pdm/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdm {

namespace {

template <class T>
T bracket_from_tangents(const std::array<T, 4>& f, const std::array<T, 4>& g) {
  return f[0] * g[2] - f[2] * g[0] + f[1] * g[3] - f[3] * g[1];
}

PhaseState<Dual2> seed2(const PhaseState<Dual1>& inner) {
  PhaseState<Dual2> x{Dual2(inner.r, {}), Dual2(inner.phi, {}), Dual2(inner.p_r, {}),
                      Dual2(inner.p_phi, {})};
  x.r.d[0] = Dual1(1.0);
  x.phi.d[1] = Dual1(1.0);
  x.p_r.d[2] = Dual1(1.0);
  x.p_phi.d[3] = Dual1(1.0);
  return x;
}

}  // namespace

PhaseState<Dual1> seed(const PhasePoint& p) {
  return {Dual1::variable(p.r, 0), Dual1::variable(p.phi, 1), Dual1::variable(p.p_r, 2),
          Dual1::variable(p.p_phi, 3)};
}

PhaseGradient gradient(const Observable& f, const PhasePoint& point) {
  const Dual1 y = f.eval(seed(point));
  return {y.d[0], y.d[1], y.d[2], y.d[3]};
}

double poisson_bracket(const Observable& f, const Observable& g, const PhasePoint& point) {
  const auto x = seed(point);
  return bracket_from_tangents(f.eval(x).d, g.eval(x).d);
}

std::complex<double> poisson_bracket(const ComplexObservable& z, const Observable& g,
                                     const PhasePoint& point) {
  const auto x = seed(point);
  const auto dg = g.eval(x).d;
  return {bracket_from_tangents(z.re.eval(x).d, dg), bracket_from_tangents(z.im.eval(x).d, dg)};
}

double default_fd_step() { return std::cbrt(std::numeric_limits<double>::epsilon()); }

PhaseGradient gradient_fd(const Observable& f, const PhasePoint& point, double h) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (!(h >= 64.0 * eps)) throw Error(ErrorCode::StepTooSmall, "finite-difference step too small");
  const std::array<double, 4> x0 = {point.r, point.phi, point.p_r, point.p_phi};
  std::array<double, 4> grad{};
  for (int i = 0; i < 4; ++i) {
    const double step = h * std::max(1.0, std::abs(x0[static_cast<std::size_t>(i)]));
    auto shifted = [&](double delta) {
      auto x = x0;
      x[static_cast<std::size_t>(i)] += delta;
      return f(PhasePoint{x[0], x[1], x[2], x[3]});
    };
    grad[static_cast<std::size_t>(i)] = (shifted(step) - shifted(-step)) / (2.0 * step);
  }
  return {grad[0], grad[1], grad[2], grad[3]};
}

double poisson_bracket_fd(const Observable& f, const Observable& g, const PhasePoint& point,
                          double h) {
  return bracket_from_tangents(gradient_fd(f, point, h).as_array(),
                               gradient_fd(g, point, h).as_array());
}

Observable bracket_observable(const Observable& f, const Observable& g) {
  Observable::Fn1 f1;
  if (f.has_second_order() && g.has_second_order())
    f1 = [f, g](const PhaseState<Dual1>& x) {
      const auto x2 = seed2(x);
      return bracket_from_tangents(f.eval(x2).d, g.eval(x2).d);
    };
  else
    f1 = [name = f.name()](const PhaseState<Dual1>&) -> Dual1 {
      throw Error(ErrorCode::UnsupportedDepth, "bracket nesting too deep at " + name);
    };
  return Observable(
      "{" + f.name() + "," + g.name() + "}",
      [f, g](const PhasePoint& x) { return poisson_bracket(f, g, x); }, std::move(f1), nullptr);
}

double BracketTolerance::scale(double f_value, double g_value, const PhasePoint& p) const {
  const double m = std::max({1.0, std::abs(p.p_r), std::abs(p.p_phi)});
  return std::max({std::abs(f_value), std::abs(g_value), 1.0}) * m * m;
}

double BracketTolerance::threshold(double f_value, double g_value, const PhasePoint& p) const {
  return std::max(abs_tol, rel_tol * scale(f_value, g_value, p));
}

}  // namespace pdm
