#include <doctest.h>

#include <cmath>
#include <complex>

#include "pdm/geometry.hpp"
#include "pdm/hamiltonian.hpp"
#include "pdm/observables.hpp"
#include "support.hpp"

using namespace pdm;
using pdm::test::kPi;

namespace {

std::complex<double> at(const ComplexObservable& z, const PhasePoint& p) { return {z.re(p), z.im(p)}; }

}  // namespace

TEST_CASE("integral values at reference points") {
  const ModelParams central{Family::na_central, 2, 1.3};
  for (const auto& p : test::points(central, 20)) {
    CHECK(integral_value(Family::na_central, "J1", central, p) == p.p_phi);
    const double sum = integral_value(Family::na_central, "J11", central, p) +
                       integral_value(Family::na_central, "J22", central, p);
    CHECK(test::rel_diff(sum, 2 * hamiltonian(central, p)) <= 1e-12);
  }
  // P1 = 0, P2 = -1 at (1, 0, 0, 1)
  const ModelParams nd{Family::nd, 3, 1, 0, 0};
  CHECK(integral_value(Family::nd, "Jd2", nd, {1, 0, 0, 1}) == doctest::Approx(2));
  CHECK(integral_value(Family::nd, "Jd3", nd, {1, 0, 0, 1}) == doctest::Approx(0).epsilon(1e-15));
  CHECK(integral_value(Family::nd, "Jd2_printed", nd, {1, 0, 0, 1}) == doctest::Approx(-1));
}

TEST_CASE("bound names and lookup errors") {
  CHECK(integral_names(Family::geodesic) == std::vector<std::string>{"P1", "P2", "Pphi"});
  CHECK(integral_names(Family::na_central).size() == 4);
  CHECK(integral_names(Family::nd) == std::vector<std::string>{"Jd2", "Jd3"});
  for (const auto f : kAllFamilies) {
    CHECK(integral_names(f) == family_info(f).integrals);
    const ModelParams p{f, 2, 0.7, 0.2, -0.3};
    for (const auto& name : integral_names(f)) CHECK(integral(f, name, p).name() == name);
  }
  try {
    integral(Family::nc, "Jd2", {Family::nc, 2, 1});
    FAIL("expected UnknownIntegral");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownIntegral);
  }
}

TEST_CASE("terms sum to the integral") {
  SplitMix64 rng(3);
  for (const auto f : kAllFamilies) {
    const auto params = test::random_params(f, 3, rng);
    for (const auto& name : integral_names(f)) {
      const auto j = integral(f, name, params);
      for (const auto& p : test::points(params, 20)) {
        double sum = 0;
        for (const auto& t : j.terms()) sum += t.fn(p);
        CHECK(test::rel_diff(sum, j(p)) <= 1e-13);
        CHECK(j.term_scale(p) >= std::abs(j(p)) * (1 - 1e-14));
      }
    }
  }
}

TEST_CASE("corruption scales a single term") {
  const ModelParams p{Family::na_prime, 2, 1, 0.3, -0.2};
  const auto j = integral(Family::na_prime, "J2", p);
  const auto bad = j.corrupted(1, 1.1);
  const PhasePoint x{1.2, 0.7, 0.3, -0.8};
  CHECK(bad(x) - j(x) == doctest::Approx(0.1 * j.terms()[1].fn(x)));
  CHECK_THROWS_AS(j.corrupted(j.terms().size(), 1.1), Error);
}

TEST_CASE("quadratic integrals are homogeneous in the momenta") {
  SplitMix64 rng(17);
  for (const auto f : kAllFamilies) {
    for (double n : {-1.0, 2.0, 3.0}) {
      const ModelParams free{f, n};
      for (const auto& name : integral_names(f)) {
        const auto j = integral(f, name, free);
        const double deg = j.momentum_degree();
        for (const auto& p : test::points(free, 30)) {
          for (double t : {2.0, 3.0}) {
            const PhasePoint q{p.r, p.phi, t * p.p_r, t * p.p_phi};
            CHECK(test::rel_diff(j(q), std::pow(t, deg) * j(p)) <= 1e-12 * std::pow(t, deg));
          }
        }
      }
    }
  }
}

TEST_CASE("complex functions at reference points") {
  const ModelParams m{Family::na_prime, 2, 1, 2, 0};
  CHECK(std::abs(at(complex_M(m), {1, 0, 0, 0}) - 6.0) <= 1e-14);
  CHECK(std::abs(at(complex_M({Family::na_prime, 2}), {1.3, 0.4, 0, 0})) == 0);

  CHECK(std::abs(at(complex_N(AngleKind::doubled, 3.3), {1, 0, 0, 0}) - 1.0) <= 1e-15);
  CHECK(std::abs(at(complex_N(AngleKind::single, 2), {1, kPi / 2, 0, 0}) - std::complex<double>(0, 1)) <=
        1e-15);

  CHECK(std::abs(at(complex_A({Family::nd, 2, 5}), {1, 0, 0, 0}) - 5.0) <= 1e-15);
  CHECK(std::abs(at(complex_A({Family::nd, 2, 0.4, 0, 1}), {1, 0, 0, 0}) -
                 std::complex<double>(0.4, -1)) <= 1e-15);
  CHECK(momentum_weight_exponent(3) == 4);
}

TEST_CASE("lambda conventions") {
  CHECK(lambda_factor(LambdaConvention::oscillator, 2, {1, 0.3, 0.2, 3}) == doctest::Approx(3));
  CHECK(lambda_factor(LambdaConvention::kepler, 2, {1, 0.3, 0.2, 3}) == doctest::Approx(3));
  // (n-1) r^{2k_n} p_phi against r^{2(n-1)} p_phi at n = 3, r = 2
  CHECK(lambda_factor(LambdaConvention::oscillator, 3, {2, 0.3, 0.2, 1}) == doctest::Approx(32));
  CHECK(lambda_factor(LambdaConvention::kepler, 3, {2, 0.3, 0.2, 1}) == doctest::Approx(16));
}

TEST_CASE("pointwise identities over 1000 points") {
  SplitMix64 rng(5);
  for (double n : {-1.0, 2.0, 3.0}) {
    const auto pp = test::random_params(Family::na_prime, n, rng);
    const auto mn = complex_M(pp) * conj(complex_N(AngleKind::doubled, n));
    const auto j2 = integral(Family::na_prime, "J2", pp);
    const auto j3 = integral(Family::na_prime, "J3", pp);
    for (const auto& x : test::points(pp, 1000, 12)) {
      CHECK(std::abs(mn.re(x) - j2(x)) <= 1e-12 * std::max(1.0, j2.term_scale(x)));
      CHECK(std::abs(mn.im(x) + j3(x)) <= 1e-12 * std::max(1.0, j3.term_scale(x)));
    }

    const auto pd = test::random_params(Family::nd, n, rng);
    const auto a = complex_A(pd);
    const auto nn = complex_N(AngleKind::single, n);
    const auto jd2 = integral(Family::nd, "Jd2", pd);
    const auto jd3 = integral(Family::nd, "Jd3", pd);
    for (const auto& x : test::points(pd, 1000, 13)) {
      const auto an = at(a, x) * at(nn, x);
      const double s = std::max(1.0, jd2.term_scale(x) + jd3.term_scale(x));
      CHECK(std::abs(an.real() - jd2(x)) <= 1e-12 * s);
      CHECK(std::abs(an.imag() - jd3(x)) <= 1e-12 * s);
      CHECK(std::abs(std::norm(at(a, x)) - (jd2(x) * jd2(x) + jd3(x) * jd3(x))) <= 1e-12 * s * s);
      CHECK(std::abs(std::abs(at(nn, x)) - 1.0) <= 1e-15);
    }
  }
}

TEST_CASE("central oscillator structure") {
  const ModelParams p{Family::na_central, 3, 0.9};
  const auto j11 = integral(Family::na_central, "J11", p);
  const auto j22 = integral(Family::na_central, "J22", p);
  for (const auto& x : test::points(p, 200, 8)) {
    const double h = hamiltonian(p, x);
    CHECK(std::abs(h - 0.5 * (j11(x) + j22(x))) <= 1e-12 * std::max(1.0, j11.term_scale(x) + j22.term_scale(x)));
  }
  // With k0 = 0, J11 and J22 reduce to the squared Noether momenta.
  const ModelParams free{Family::na_central, 3};
  for (const auto& x : test::points(free, 50)) {
    const double p1 = noether_momentum(NoetherMomentum::P1, 3, x);
    CHECK(test::rel_diff(integral_value(Family::na_central, "J11", free, x), p1 * p1) <= 1e-13);
  }
}
