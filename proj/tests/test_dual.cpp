#include <doctest.h>

#include <cmath>

#include "pdm/dual.hpp"

using pdm::Dual1;
using pdm::Dual2;

TEST_CASE("product and quotient rules") {
  const auto x = Dual1::variable(1.5, 0);
  const auto y = Dual1::variable(-0.4, 1);
  const auto f = x * y / (x + 2.0);
  CHECK(f.v == doctest::Approx(1.5 * -0.4 / 3.5));
  CHECK(f.d[0] == doctest::Approx(-0.4 * 2.0 / (3.5 * 3.5)));
  CHECK(f.d[1] == doctest::Approx(1.5 / 3.5));
  CHECK(f.d[2] == 0.0);
}

TEST_CASE("elementary functions match their derivatives") {
  const double a = 0.83;
  const auto x = Dual1::variable(a, 2);
  CHECK(sin(x).d[2] == doctest::Approx(std::cos(a)));
  CHECK(cos(x).d[2] == doctest::Approx(-std::sin(a)));
  CHECK(exp(x).d[2] == doctest::Approx(std::exp(a)));
  CHECK(log(x).d[2] == doctest::Approx(1 / a));
  CHECK(sqrt(x).d[2] == doctest::Approx(0.5 / std::sqrt(a)));
  CHECK(pow(x, -2.5).d[2] == doctest::Approx(-2.5 * std::pow(a, -3.5)));
}

TEST_CASE("nested duals give second derivatives") {
  // f = x^3 y at (2, 5): f_xx = 6 x y = 60, f_xy = 3 x^2 = 12
  const Dual2 x(Dual1::variable(2.0, 0), {Dual1(1.0), Dual1(0.0), Dual1(0.0), Dual1(0.0)});
  const Dual2 y(Dual1::variable(5.0, 1), {Dual1(0.0), Dual1(1.0), Dual1(0.0), Dual1(0.0)});
  const Dual2 f = x * x * x * y;
  CHECK(f.v.v == doctest::Approx(40));
  CHECK(f.d[0].v == doctest::Approx(60));
  CHECK(f.d[0].d[0] == doctest::Approx(60));
  CHECK(f.d[0].d[1] == doctest::Approx(12));
  CHECK(f.d[1].d[0] == doctest::Approx(12));
}
