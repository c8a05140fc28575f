#include "pdm/phase.hpp"

#include <cmath>
#include <numbers>

namespace pdm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RadiusNonPositive: return "RadiusNonPositive";
    case ErrorCode::AngularSingularity: return "AngularSingularity";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateN: return "DegenerateN";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownIntegral: return "UnknownIntegral";
    case ErrorCode::CartesianSingularity: return "CartesianSingularity";
    case ErrorCode::NonZeroN: return "NonZeroN";
    case ErrorCode::StepTooSmall: return "StepTooSmall";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::NoQuadraticIntegral: return "NoQuadraticIntegral";
    case ErrorCode::UnsupportedDepth: return "UnsupportedDepth";
  }
  return "Unknown";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::geodesic: return "geodesic";
    case Family::na_central: return "na_central";
    case Family::na: return "na";
    case Family::na_prime: return "na_prime";
    case Family::nb: return "nb";
    case Family::nc: return "nc";
    case Family::nc1: return "nc1";
    case Family::nc2: return "nc2";
    case Family::nd: return "nd";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

void require_valid(const ModelParams& params) {
  if (!std::isfinite(params.n) || !std::isfinite(params.k0) || !std::isfinite(params.k1) ||
      !std::isfinite(params.k2))
    throw Error(ErrorCode::NonFinite, "model parameters must be finite");
  if (params.family != Family::geodesic && params.k_n() == 0.0)
    throw Error(ErrorCode::DegenerateN, "n = 1 degenerate (k_n = 0)");
}

std::vector<SingularTrig> singular_terms(Family f) {
  switch (f) {
    case Family::na: return {SingularTrig::sec, SingularTrig::csc};
    case Family::nb:
    case Family::nc2: return {SingularTrig::sec};
    case Family::nc1: return {SingularTrig::csc};
    default: return {};
  }
}

double singular_distance(SingularTrig which, double theta) {
  constexpr double pi = std::numbers::pi;
  const double shifted = which == SingularTrig::sec ? theta - pi / 2 : theta;
  return std::abs(std::remainder(shifted, pi));
}

ValidationResult validate(const PhasePoint& point, const ModelParams& params, double phi_margin) {
  auto fail = [](ErrorCode code, std::string detail) {
    return ValidationResult{false, code, std::move(detail)};
  };
  if (params.family != Family::geodesic && params.k_n() == 0.0)
    return fail(ErrorCode::DegenerateN, "n = 1 degenerate (k_n = 0)");
  const std::pair<const char*, double> fields[] = {
      {"r", point.r}, {"phi", point.phi}, {"p_r", point.p_r}, {"p_phi", point.p_phi}};
  for (const auto& [name, value] : fields)
    if (!std::isfinite(value)) return fail(ErrorCode::NonFinite, name);
  if (!(point.r > 0.0)) return fail(ErrorCode::RadiusNonPositive, "r must be > 0");
  const double theta = params.k_n() * point.phi;
  for (SingularTrig t : singular_terms(params.family)) {
    if (!(singular_distance(t, theta) > phi_margin))
      return fail(ErrorCode::AngularSingularity, t == SingularTrig::sec ? "sec" : "csc");
  }
  return {};
}

void require_valid(const PhasePoint& point, const ModelParams& params, double phi_margin) {
  const auto result = validate(point, params, phi_margin);
  if (!result) throw Error(*result.error, result.detail);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<PhasePoint> sample_points(const ModelParams& params, const DomainBox& box, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  if (!(box.r_min > 0.0 && box.r_min < box.r_max) || !(box.phi_margin > 0.0) ||
      !(box.phi_lo <= box.phi_hi) || !(box.p_max >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "invalid domain box");
  require_valid(params);

  SplitMix64 rng(box.seed);
  std::vector<PhasePoint> points;
  points.reserve(static_cast<std::size_t>(count));
  const long max_attempts = 10L * count + 100;
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(points.size()) < count;
       ++attempt) {
    PhasePoint p;
    p.r = rng.uniform(box.r_min, box.r_max);
    p.phi = rng.uniform(box.phi_lo, box.phi_hi);
    p.p_r = rng.uniform(-box.p_max, box.p_max);
    p.p_phi = rng.uniform(-box.p_max, box.p_max);
    if (validate(p, params, box.phi_margin)) points.push_back(p);
  }
  if (static_cast<int>(points.size()) < count)
    throw Error(ErrorCode::EmptyDomain, "domain guards exclude the sampling box");
  return points;
}

CartesianPoint polar_to_cartesian(const PhasePoint& point) {
  if (!(point.r > 0.0)) throw Error(ErrorCode::RadiusNonPositive, "r must be > 0");
  const double c = std::cos(point.phi), s = std::sin(point.phi);
  const double l = point.p_phi / point.r;
  return {point.r * c, point.r * s, point.p_r * c - l * s, point.p_r * s + l * c};
}

}  // namespace pdm
