#pragma once

// First integrals of every family, the complex functions M_n, N_phi, A_n and
// the factor lambda_n. Integrals are stored as sums of terms so that the
// certifier can report per-term bracket contributions and corrupt single
// coefficients for negative controls.

#include <string>
#include <string_view>
#include <vector>

#include "pdm/observable.hpp"
#include "pdm/phase.hpp"

namespace pdm {

struct IntegralTerm {
  std::string label;
  Observable fn;
};

class Integral {
 public:
  Integral(std::string name, std::vector<IntegralTerm> terms, int momentum_degree);

  const std::string& name() const noexcept { return name_; }
  const std::vector<IntegralTerm>& terms() const noexcept { return terms_; }
  // Highest power of the momenta (1 linear, 2 quadratic).
  int momentum_degree() const noexcept { return degree_; }

  double operator()(const PhasePoint& x) const;
  // Sum of |term| at x; the natural magnitude for roundoff-relative checks.
  double term_scale(const PhasePoint& x) const;

  Observable observable() const;
  // Copy with term `index` multiplied by `factor`.
  Integral corrupted(std::size_t index, double factor) const;

 private:
  std::string name_;
  std::vector<IntegralTerm> terms_;
  std::vector<double> weights_;
  int degree_;
  Observable sum_;
};

// Names bound to a family for certification, in catalog order.
std::vector<std::string> integral_names(Family family);

// Any name valid for the family, including the printed-but-incorrect forms
// kept for the errata (nd: "Jd2_printed", "Jd3_printed") and "H".
Integral integral(Family family, std::string_view name, const ModelParams& params);
double integral_value(Family family, std::string_view name, const ModelParams& params,
                      const PhasePoint& point);

// M_n = M_n1 + i M_n2 of the H_na' family.
ComplexObservable complex_M(const ModelParams& params);

enum class AngleKind { doubled, single };
// N_phi = exp(i 2 k_n phi) (doubled) or exp(i k_n phi) (single).
ComplexObservable complex_N(AngleKind kind, double n);

// A_n = A_n1 + i A_n2 of the H_nd family.
ComplexObservable complex_A(const ModelParams& params);

// The A_n2 weight exponent (3n - 1)/2 on p_r p_phi.
double momentum_weight_exponent(double n);

// oscillator: (n-1) r^{2k_n} p_phi, paired with the M_n laws of H_na'.
// kepler:     r^{2(n-1)} p_phi, paired with the A_n laws of H_nd, where the
//             (n-1) factor is carried by each law instead.
enum class LambdaConvention { oscillator, kepler };
Observable lambda_observable(LambdaConvention convention, double n);
double lambda_factor(LambdaConvention convention, double n, const PhasePoint& point);

}  // namespace pdm
