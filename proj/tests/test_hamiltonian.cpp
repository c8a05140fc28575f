#include <doctest.h>

#include <cmath>

#include "pdm/geometry.hpp"
#include "pdm/hamiltonian.hpp"
#include "support.hpp"

using namespace pdm;
using pdm::test::kPi;

TEST_CASE("kinetic term") {
  for (double n : {-1.0, 0.0, 2.0, 3.5}) {
    CHECK(kinetic(n, {1, 0.3, 1, 0}) == doctest::Approx(0.5));
    CHECK(kinetic(n, {1, 0.3, 0, 2}) == doctest::Approx(2));
  }
  CHECK(kinetic(2, {2, 0.1, 0.3, -1}) == doctest::Approx(0.5 * 16 * (0.09 + 0.25)));
}

TEST_CASE("potentials at reference points") {
  CHECK(potential({Family::na_prime, 2, 1.3, 0.4, 2.0}, 1, 0) == doctest::Approx(1.7));
  CHECK(potential({Family::nd, 3, 0.8, -0.6, 5}, 1, 0) == doctest::Approx(0.2));
  CHECK(potential({Family::nc1, 2, 0, 1, 0}, 1, kPi / 2) == doctest::Approx(1));
  CHECK(potential({Family::nc, 2, 3}, 2, 1) == doctest::Approx(6));
  CHECK(potential({Family::geodesic, 2, 3, 4, 5}, 2, 1) == 0);
  // nb at phi = pi/2 with k_n = 2: cos = -1, sin = 0
  CHECK(potential({Family::nb, 3, 1, 0.5, 7}, 1, kPi / 2) == doctest::Approx(1.5));
}

TEST_CASE("singular potentials are rejected") {
  CHECK_THROWS_AS(potential({Family::na, 2, 1, 1, 1}, 1, kPi / 2), Error);
  CHECK_THROWS_AS(hamiltonian({Family::nc, 2, 1}, {-1, 0, 0, 0}), Error);
}

TEST_CASE("hamiltonian") {
  CHECK(hamiltonian({Family::geodesic, 4}, {1, 0.2, 1, 0}) == doctest::Approx(0.5));
  CHECK(hamiltonian({Family::na_central, 2, 3}, {1, 1.234, 0, 0}) == doctest::Approx(3));
  for (const auto& p : test::points({Family::geodesic, 3}, 50))
    CHECK(hamiltonian({Family::geodesic, 3}, p) == kinetic(3, p));
}

TEST_CASE("kinetic term is half the squared noether momenta") {
  for (double n : {-2.0, -1.0, 0.0, 2.0, 3.0}) {
    for (const auto& p : test::points({Family::geodesic, n}, 300, 4)) {
      const double p1 = noether_momentum(NoetherMomentum::P1, n, p);
      const double p2 = noether_momentum(NoetherMomentum::P2, n, p);
      CHECK(test::rel_diff(kinetic(n, p), 0.5 * (p1 * p1 + p2 * p2)) <= 1e-12);
    }
  }
}

TEST_CASE("zero couplings collapse every family to geodesic") {
  for (const auto f : kAllFamilies) {
    for (double n : {-1.0, 2.0, 3.0}) {
      const ModelParams p{f, n};
      for (const auto& x : test::points(p, 50)) CHECK(hamiltonian(p, x) == kinetic(n, x));
    }
  }
}

TEST_CASE("euclidean potentials") {
  CHECK(euclidean_potential(EuclideanTag::Va, {1, 0, 0, 0}, 1, 1) == doctest::Approx(1));
  CHECK(euclidean_potential(EuclideanTag::Vc, {0, 1, 0, 0}, 3, 4) == doctest::Approx(0.2));
  CHECK(euclidean_potential(EuclideanTag::Vd, {0, 0, 1, 0}, 1, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(euclidean_potential(EuclideanTag::Va, {1, 0, 1, 0}, 0, 1), Error);
  CHECK(parse_euclidean("b") == EuclideanTag::Vb);
  CHECK(parse_euclidean("Vd") == EuclideanTag::Vd);
  CHECK_FALSE(parse_euclidean("e").has_value());
}

TEST_CASE("coefficient maps") {
  const ModelParams p{Family::nb, 0, 0.5, 0.3, 0.7};
  const auto b = euclidean_couplings(EuclideanTag::Vb, p, {1, 0.2, 0, 0});
  CHECK(b.omega0 == doctest::Approx(1));
  CHECK(b.k1 == doctest::Approx(0.3));
  CHECK(b.k2 == doctest::Approx(-0.7));
  const auto d = euclidean_couplings(EuclideanTag::Vd, {Family::nd, 0, 1, 0.3, 0.4}, {1, 0.2, 0, 0});
  CHECK(std::abs(d.k1) == doctest::Approx(0.3 / std::sqrt(2.0)));
  CHECK(std::abs(d.k2) == doctest::Approx(0.4 / std::sqrt(2.0)));
  CHECK_THROWS_AS(euclidean_couplings(EuclideanTag::Va, {Family::na, 0, -1}, {1, 0.2, 0, 0}), Error);
}

TEST_CASE("n = 0 members reduce to the euclidean potentials") {
  SplitMix64 rng(21);
  for (const auto tag : {EuclideanTag::Va, EuclideanTag::Vb, EuclideanTag::Vc, EuclideanTag::Vd}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = test::random_params(matching_family(tag), 0, rng);
      double worst = 0;
      for (const auto& x : test::points(p, 1000, 30 + trial))
        worst = std::max(worst, euclid_equivalence_residual(tag, p, x));
      CHECK(worst <= 1e-12);
    }
  }
  try {
    euclid_equivalence_residual(EuclideanTag::Va, {Family::na, 2, 1}, {1, 0.2, 0, 0});
    FAIL("expected NonZeroN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonZeroN);
  }
}

TEST_CASE("catalog") {
  int count = 0;
  for (const auto f : kAllFamilies) {
    const auto& info = family_info(f);
    CHECK(info.family == f);
    CHECK_FALSE(info.integrals.empty());
    CHECK_FALSE(info.potential.empty());
    ++count;
  }
  CHECK(count == 9);
}
