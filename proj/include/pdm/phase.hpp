#pragma once

// Canonical polar phase-space state, model parameters, domain guards and
// deterministic sampling.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdm {

enum class ErrorCode {
  RadiusNonPositive,
  AngularSingularity,
  NonFinite,
  DegenerateN,
  EmptyDomain,
  InvalidArgument,
  UnknownIntegral,
  CartesianSingularity,
  NonZeroN,
  StepTooSmall,
  StepFailure,
  EmptyTrajectory,
  NoQuadraticIntegral,
  UnsupportedDepth,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <class S>
struct PhaseState {
  S r{};
  S phi{};
  S p_r{};
  S p_phi{};
};

using PhasePoint = PhaseState<double>;

struct CartesianPoint {
  double x = 0, y = 0, p_x = 0, p_y = 0;
};

enum class Family { geodesic, na_central, na, na_prime, nb, nc, nc1, nc2, nd };

inline constexpr Family kAllFamilies[] = {Family::geodesic, Family::na_central, Family::na,
                                          Family::na_prime, Family::nb,         Family::nc,
                                          Family::nc1,      Family::nc2,        Family::nd};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

struct ModelParams {
  Family family = Family::geodesic;
  double n = 2.0;
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;

  // k_n = n - 1 is always derived, never stored.
  double k_n() const noexcept { return n - 1.0; }
  ModelParams with_couplings(double a, double b, double c) const {
    return {family, n, a, b, c};
  }
};

// Throws Error(DegenerateN) when n = 1 for a non-geodesic family.
void require_valid(const ModelParams& params);

struct DomainBox {
  double r_min = 0.5;
  double r_max = 2.0;
  double phi_lo = 0.05;
  double phi_hi = 6.283185307179586 - 0.05;
  double p_max = 2.0;
  double phi_margin = 1e-6;
  std::uint64_t seed = 7;
};

// Angular factors of the potential that blow up: sec(k_n phi) or csc(k_n phi).
enum class SingularTrig { sec, csc };

std::vector<SingularTrig> singular_terms(Family f);

// Distance of theta from the nearest zero of cos (for sec) or sin (for csc).
double singular_distance(SingularTrig which, double theta);

struct ValidationResult {
  bool ok = true;
  std::optional<ErrorCode> error;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
};

ValidationResult validate(const PhasePoint& point, const ModelParams& params,
                          double phi_margin = 1e-6);

// Throwing variant of validate.
void require_valid(const PhasePoint& point, const ModelParams& params, double phi_margin = 1e-6);

std::vector<PhasePoint> sample_points(const ModelParams& params, const DomainBox& box, int count);

CartesianPoint polar_to_cartesian(const PhasePoint& point);

// Deterministic splitmix64 stream with platform-independent doubles.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

}  // namespace pdm
