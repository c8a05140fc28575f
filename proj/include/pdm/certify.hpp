#pragma once

// Superintegrability certifier: bracket residuals, involution, functional
// independence, Killing-tensor condition, algebraic identities and complex
// evolution laws over a deterministic sample, plus one trajectory drift check.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdm/bracket.hpp"
#include "pdm/dynamics.hpp"
#include "pdm/observables.hpp"
#include "pdm/phase.hpp"

namespace pdm {

struct SampleConfig {
  int count = 200;
  DomainBox box;
  BracketTolerance bracket;
  double rank_threshold = 1e-8;        // sigma_k > threshold * sigma_max
  double independence_fraction = 0.95;
  double identity_tol = 1e-12;         // relative, pointwise identities
};

// One named residual over the sample. `max_residual` is normalized so that
// the check passes iff max_residual <= tolerance. Informational entries have
// tolerance = +inf.
struct ResidualStat {
  std::string name;
  double max_residual = 0;
  double mean_residual = 0;
  double max_abs = 0;
  double tolerance = 0;
  int points = 0;
  bool pass = true;
  // Per-term contributions {term_i, H} at the worst point (bracket suite only).
  std::vector<std::pair<std::string, double>> term_brackets;
};

struct CorruptionSpec {
  std::string integral;
  std::size_t term = 0;
  double factor = 1.1;
};

std::vector<ResidualStat> bracket_residual_suite(const ModelParams& params,
                                                 const SampleConfig& sample,
                                                 const std::optional<CorruptionSpec>& corruption = {});

ResidualStat bracket_residual(const Integral& integral, const ModelParams& params,
                              const std::vector<PhasePoint>& points, const BracketTolerance& tol);

struct InvolutionPair {
  std::string first;
  std::string second;
  bool asserted = true;  // false: reported only
};

std::vector<InvolutionPair> involution_pairs(Family family);
std::vector<ResidualStat> involution_check(const ModelParams& params,
                                           const std::vector<InvolutionPair>& pairs,
                                           const SampleConfig& sample);

struct RankResult {
  int rank = 0;
  std::vector<double> singular_values;
};

RankResult independence_rank(const std::vector<Observable>& functions, const PhasePoint& point,
                             double threshold = 1e-8);

struct IndependenceStat {
  std::vector<std::string> names;
  double full_rank_fraction = 0;
  int points = 0;
  std::vector<std::pair<PhasePoint, RankResult>> deficient;
};

// Triple of functions claimed independent for the family ("H" allowed).
std::vector<std::string> independence_set(Family family);
IndependenceStat independence_check(const ModelParams& params,
                                    const std::vector<std::string>& names,
                                    const SampleConfig& sample);

// Couplings zeroed in every quadratic integral, bracketed with T_n.
ResidualStat killing_tensor_check(const ModelParams& params, const SampleConfig& sample);

std::vector<ResidualStat> identity_suite(const ModelParams& params, const SampleConfig& sample);
std::vector<ResidualStat> evolution_law_check(const ModelParams& params,
                                              const SampleConfig& sample);

struct CheckResult {
  std::string name;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = true;
  std::string note;

  bool informational() const { return tolerance == std::numeric_limits<double>::infinity(); }
  bool operator==(const CheckResult&) const = default;
};

struct Certificate {
  ModelParams params;
  std::vector<CheckResult> checks;
  bool verdict = false;

  const CheckResult* find(std::string_view name) const;
  bool operator==(const Certificate& o) const;
};

struct CertifyOptions {
  std::optional<CorruptionSpec> corruption;
  bool trajectory = true;
};

Certificate certificate(const ModelParams& params, const SampleConfig& sample,
                        const IntegratorConfig& integrator, const CertifyOptions& options = {});

}  // namespace pdm
