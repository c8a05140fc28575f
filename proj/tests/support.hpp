#pragma once

#include <cmath>
#include <vector>

#include "pdm/phase.hpp"

namespace pdm::test {

inline constexpr double kPi = 3.141592653589793;

inline std::vector<PhasePoint> points(const ModelParams& p, int count, std::uint64_t seed = 7) {
  DomainBox box;
  box.seed = seed;
  return sample_points(p, box, count);
}

// Random couplings in [-1, 1]; k0 kept positive for families whose n = 0
// reductions need a real frequency.
inline ModelParams random_params(Family f, double n, SplitMix64& rng) {
  return {f, n, rng.uniform(0.2, 1.5), rng.uniform(-1, 1), rng.uniform(-1, 1)};
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace pdm::test
