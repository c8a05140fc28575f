#include "pdm/observables.hpp"

#include <cmath>
#include <memory>

#include "formulas.hpp"
#include "pdm/hamiltonian.hpp"

namespace pdm {

Integral::Integral(std::string name, std::vector<IntegralTerm> terms, int momentum_degree)
    : name_(std::move(name)),
      terms_(std::move(terms)),
      weights_(terms_.size(), 1.0),
      degree_(momentum_degree) {
  auto shared_terms = std::make_shared<const std::vector<IntegralTerm>>(terms_);
  auto shared_weights = std::make_shared<const std::vector<double>>(weights_);
  auto summed = [shared_terms, shared_weights](const auto& x) {
    using S = std::decay_t<decltype(x.r)>;
    S total(0.0);
    for (std::size_t i = 0; i < shared_terms->size(); ++i)
      total += (*shared_weights)[i] * (*shared_terms)[i].fn.eval(x);
    return total;
  };
  sum_ = Observable(
      name_,
      [shared_terms, shared_weights](const PhasePoint& x) {
        double total = 0.0;
        for (std::size_t i = 0; i < shared_terms->size(); ++i)
          total += (*shared_weights)[i] * (*shared_terms)[i].fn(x);
        return total;
      },
      [summed](const PhaseState<Dual1>& x) { return summed(x); },
      [summed](const PhaseState<Dual2>& x) { return summed(x); });
}

double Integral::operator()(const PhasePoint& x) const { return sum_(x); }

double Integral::term_scale(const PhasePoint& x) const {
  double scale = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) scale += std::abs(weights_[i] * terms_[i].fn(x));
  return scale;
}

Observable Integral::observable() const { return sum_; }

Integral Integral::corrupted(std::size_t index, double factor) const {
  if (index >= terms_.size())
    throw Error(ErrorCode::InvalidArgument, "term index out of range for " + name_);
  std::vector<IntegralTerm> terms = terms_;
  terms[index].fn = factor * terms[index].fn;
  terms[index].label = terms[index].label + " [x" + std::to_string(factor) + "]";
  return Integral(name_ + "~", std::move(terms), degree_);
}

namespace {

using std::cos;
using std::pow;
using std::sin;

template <class F>
IntegralTerm term(std::string label, F f) {
  return {label, Observable::from_generic(label, f)};
}

// Terms shared by several integrals. `m` carries n and the couplings.
struct Pieces {
  ModelParams m;
  double n;
  double kn;

  explicit Pieces(const ModelParams& p) : m(p), n(p.n), kn(p.k_n()) {}

  IntegralTerm p1_sq() const {
    return term("P1^2", [n = n](const auto& x) {
      const auto p = detail::noether_p1(n, x);
      return p * p;
    });
  }
  IntegralTerm p2_sq() const {
    return term("P2^2", [n = n](const auto& x) {
      const auto p = detail::noether_p2(n, x);
      return p * p;
    });
  }
  IntegralTerm p1_pphi(double sign = 1.0) const {
    return term(sign > 0 ? "P1 p_phi" : "-P1 p_phi",
                [n = n, sign](const auto& x) { return sign * detail::noether_p1(n, x) * x.p_phi; });
  }
  IntegralTerm p2_pphi(double sign = 1.0) const {
    return term(sign > 0 ? "P2 p_phi" : "-P2 p_phi",
                [n = n, sign](const auto& x) { return sign * detail::noether_p2(n, x) * x.p_phi; });
  }
  IntegralTerm pphi_sq() const {
    return term("p_phi^2", [](const auto& x) { return x.p_phi * x.p_phi; });
  }
  // coef * r^{-2kn} trig(kn phi)^2 with trig = cos or sin.
  IntegralTerm central_oscillator(double coef, bool use_cos, std::string label) const {
    return term(std::move(label), [coef, kn = kn, use_cos](const auto& x) {
      const auto t = use_cos ? cos(kn * x.phi) : sin(kn * x.phi);
      return coef * t * t * pow(x.r, -2.0 * kn);
    });
  }
};

Integral make_hamiltonian_integral(const ModelParams& m) {
  return Integral(
      "H",
      {term("T", [n = m.n](const auto& x) { return detail::kinetic(n, x); }),
       term("U", [m](const auto& x) { return detail::potential(m, x.r, x.phi); })},
      2);
}

Integral geodesic_integral(const Pieces& q, std::string_view name) {
  const double n = q.n;
  if (name == "P1")
    return Integral("P1", {term("P1", [n](const auto& x) { return detail::noether_p1(n, x); })}, 1);
  if (name == "P2")
    return Integral("P2", {term("P2", [n](const auto& x) { return detail::noether_p2(n, x); })}, 1);
  if (name == "Pphi")
    return Integral("Pphi", {term("p_phi", [](const auto& x) { return x.p_phi; })}, 1);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

Integral na_central_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, kn = q.kn, n = q.n;
  if (name == "J1")
    return Integral("J1", {term("p_phi", [](const auto& x) { return x.p_phi; })}, 1);
  if (name == "J11")
    return Integral("J11", {q.p1_sq(), q.central_oscillator(2.0 * k0, true, "2k0 r^-2kn cos^2")}, 2);
  if (name == "J22")
    return Integral("J22", {q.p2_sq(), q.central_oscillator(2.0 * k0, false, "2k0 r^-2kn sin^2")},
                    2);
  if (name == "J12")
    return Integral("J12",
                    {term("P1 P2",
                          [n](const auto& x) {
                            return detail::noether_p1(n, x) * detail::noether_p2(n, x);
                          }),
                     term("2k0 r^-2kn cos sin",
                          [k0, kn](const auto& x) {
                            return 2.0 * k0 * pow(x.r, -2.0 * kn) * cos(kn * x.phi) *
                                   sin(kn * x.phi);
                          })},
                    2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

Integral na_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  auto sec_sq_r = [k1, kn](const auto& x) {
    const auto c = cos(kn * x.phi);
    return 2.0 * k1 * pow(x.r, 2.0 * kn) / (c * c);
  };
  auto csc_sq_r = [k2, kn](const auto& x) {
    const auto s = sin(kn * x.phi);
    return 2.0 * k2 * pow(x.r, 2.0 * kn) / (s * s);
  };
  if (name == "Ja1")
    return Integral("Ja1",
                    {q.p1_sq(), q.central_oscillator(2.0 * k0, true, "2k0 r^-2kn cos^2"),
                     term("2k1 r^2kn sec^2", sec_sq_r)},
                    2);
  if (name == "Ja2")
    return Integral("Ja2",
                    {q.p2_sq(), q.central_oscillator(2.0 * k0, false, "2k0 r^-2kn sin^2"),
                     term("2k2 r^2kn csc^2", csc_sq_r)},
                    2);
  if (name == "Ja3")
    return Integral("Ja3",
                    {q.pphi_sq(), term("2k1 sec^2",
                                       [k1, kn](const auto& x) {
                                         const auto c = cos(kn * x.phi);
                                         return 2.0 * k1 / (c * c);
                                       }),
                     term("2k2 csc^2",
                          [k2, kn](const auto& x) {
                            const auto s = sin(kn * x.phi);
                            return 2.0 * k2 / (s * s);
                          })},
                    2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

// J2 / J3 of H_na' expanded term by term; `im` selects J3.
Integral na_prime_runge(const Pieces& q, bool im) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  // J2: cos2, +sin2 ; J3: sin2, -cos2
  auto first = [kn, im](const auto& x) { return im ? sin(2 * kn * x.phi) : cos(2 * kn * x.phi); };
  auto second = [kn, im](const auto& x) {
    return im ? -1.0 * cos(2 * kn * x.phi) : sin(2 * kn * x.phi);
  };
  std::vector<IntegralTerm> terms = {
      term("r^2kn r^2 p_r^2 N1",
           [kn, first](const auto& x) {
             return pow(x.r, 2.0 * kn) * x.r * x.r * x.p_r * x.p_r * first(x);
           }),
      term("-r^2kn p_phi^2 N1",
           [kn, first](const auto& x) {
             return -1.0 * pow(x.r, 2.0 * kn) * x.p_phi * x.p_phi * first(x);
           }),
      term("2 r^2kn r p_r p_phi N2",
           [kn, second](const auto& x) {
             return 2.0 * pow(x.r, 2.0 * kn) * x.r * x.p_r * x.p_phi * second(x);
           }),
      term("2k0 r^-2kn N1",
           [k0, kn, first](const auto& x) { return 2.0 * k0 * pow(x.r, -2.0 * kn) * first(x); }),
  };
  if (!im) {
    terms.push_back(term("2k1 r^-kn cos", [k1, kn](const auto& x) {
      return 2.0 * k1 * pow(x.r, -kn) * cos(kn * x.phi);
    }));
    terms.push_back(term("-2k2 r^-kn sin", [k2, kn](const auto& x) {
      return -2.0 * k2 * pow(x.r, -kn) * sin(kn * x.phi);
    }));
  } else {
    terms.push_back(term("2k1 r^-kn sin", [k1, kn](const auto& x) {
      return 2.0 * k1 * pow(x.r, -kn) * sin(kn * x.phi);
    }));
    terms.push_back(term("2k2 r^-kn cos", [k2, kn](const auto& x) {
      return 2.0 * k2 * pow(x.r, -kn) * cos(kn * x.phi);
    }));
  }
  return Integral(im ? "J3" : "J2", std::move(terms), 2);
}

Integral na_prime_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn, n = q.n;
  if (name == "Ja1'")
    return Integral("Ja1'",
                    {q.p1_sq(), q.central_oscillator(2.0 * k0, true, "2k0 r^-2kn cos^2"),
                     term("2k1 r^-kn cos",
                          [k1, kn](const auto& x) {
                            return 2.0 * k1 * pow(x.r, -kn) * cos(kn * x.phi);
                          })},
                    2);
  if (name == "Ja2'")
    return Integral("Ja2'",
                    {q.p2_sq(), q.central_oscillator(2.0 * k0, false, "2k0 r^-2kn sin^2"),
                     term("2k2 r^-kn sin",
                          [k2, kn](const auto& x) {
                            return 2.0 * k2 * pow(x.r, -kn) * sin(kn * x.phi);
                          })},
                    2);
  if (name == "Ja3'")
    return Integral("Ja3'",
                    {term("2k0 p_phi", [k0](const auto& x) { return 2.0 * k0 * x.p_phi; }),
                     term("k2 P1", [k2, n](const auto& x) { return k2 * detail::noether_p1(n, x); }),
                     term("-k1 P2",
                          [k1, n](const auto& x) { return -k1 * detail::noether_p2(n, x); })},
                    1);
  if (name == "J2") return na_prime_runge(q, false);
  if (name == "J3") return na_prime_runge(q, true);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

Integral nb_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  if (name == "Jb1")
    return Integral("Jb1",
                    {q.p1_sq(), q.central_oscillator(2.0 * k0, true, "2k0 r^-2kn cos^2"),
                     term("2k1 r^2kn sec^2",
                          [k1, kn](const auto& x) {
                            const auto c = cos(kn * x.phi);
                            return 2.0 * k1 * pow(x.r, 2.0 * kn) / (c * c);
                          })},
                    2);
  if (name == "Jb2")
    return Integral("Jb2",
                    {q.p2_sq(), q.central_oscillator(8.0 * k0, false, "8k0 r^-2kn sin^2"),
                     term("2k2 r^-kn sin",
                          [k2, kn](const auto& x) {
                            return 2.0 * k2 * pow(x.r, -kn) * sin(kn * x.phi);
                          })},
                    2);
  if (name == "Jb3")
    return Integral(
        "Jb3",
        {q.p1_pphi(),
         term("-k0 r^-3kn cos sin2",
              [k0, kn](const auto& x) {
                return -k0 * pow(x.r, -3.0 * kn) * cos(kn * x.phi) * sin(2.0 * kn * x.phi);
              }),
         term("k1 r^kn sec^3 sin2",
              [k1, kn](const auto& x) {
                const auto c = cos(kn * x.phi);
                return k1 * pow(x.r, kn) * sin(2.0 * kn * x.phi) / (c * c * c);
              }),
         term("-k2/(2 r^2kn) cos^2",
              [k2, kn](const auto& x) {
                const auto c = cos(kn * x.phi);
                return -0.5 * k2 * pow(x.r, -2.0 * kn) * c * c;
              })},
        2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

IntegralTerm k0_trig(double coef, double kn, bool use_cos, std::string label) {
  return term(std::move(label), [coef, kn, use_cos](const auto& x) {
    return coef * (use_cos ? cos(kn * x.phi) : sin(kn * x.phi));
  });
}

Integral nc_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, kn = q.kn;
  if (name == "J1")
    return Integral("J1", {term("p_phi", [](const auto& x) { return x.p_phi; })}, 1);
  if (name == "J2") return Integral("J2", {q.p2_pphi(), k0_trig(-k0, kn, true, "-k0 cos")}, 2);
  if (name == "J3") return Integral("J3", {q.p1_pphi(), k0_trig(k0, kn, false, "k0 sin")}, 2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

Integral nc1_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  if (name == "Jc2")
    return Integral("Jc2",
                    {q.pphi_sq(), term("2k1 csc^2",
                                       [k1, kn](const auto& x) {
                                         const auto s = sin(kn * x.phi);
                                         return 2.0 * k1 / (s * s);
                                       }),
                     term("2k2 cos/sin^2",
                          [k2, kn](const auto& x) {
                            const auto s = sin(kn * x.phi);
                            return 2.0 * k2 * cos(kn * x.phi) / (s * s);
                          })},
                    2);
  if (name == "Jc3")
    return Integral("Jc3",
                    {q.p2_pphi(), k0_trig(-k0, kn, true, "-k0 cos"),
                     term("-2k1 r^kn csc cot",
                          [k1, kn](const auto& x) {
                            const auto s = sin(kn * x.phi);
                            return -2.0 * k1 * pow(x.r, kn) * cos(kn * x.phi) / (s * s);
                          }),
                     term("-k2 r^kn (csc^2 + cot^2)",
                          [k2, kn](const auto& x) {
                            const auto s = sin(kn * x.phi);
                            const auto c = cos(kn * x.phi);
                            return -k2 * pow(x.r, kn) * (1.0 + c * c) / (s * s);
                          })},
                    2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

Integral nc2_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  if (name == "Jc2")
    return Integral("Jc2",
                    {q.pphi_sq(), term("2k1 sec^2",
                                       [k1, kn](const auto& x) {
                                         const auto c = cos(kn * x.phi);
                                         return 2.0 * k1 / (c * c);
                                       }),
                     term("2k2 sin/cos^2",
                          [k2, kn](const auto& x) {
                            const auto c = cos(kn * x.phi);
                            return 2.0 * k2 * sin(kn * x.phi) / (c * c);
                          })},
                    2);
  if (name == "Jc3")
    return Integral("Jc3",
                    {q.p1_pphi(), k0_trig(k0, kn, false, "k0 sin"),
                     term("2k1 r^kn sec tan",
                          [k1, kn](const auto& x) {
                            const auto c = cos(kn * x.phi);
                            return 2.0 * k1 * pow(x.r, kn) * sin(kn * x.phi) / (c * c);
                          }),
                     term("k2 r^kn (sec^2 + tan^2)",
                          [k2, kn](const auto& x) {
                            const auto s = sin(kn * x.phi);
                            const auto c = cos(kn * x.phi);
                            return k2 * pow(x.r, kn) * (1.0 + s * s) / (c * c);
                          })},
                    2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

// r^{-kn/2} trig_outer(kn phi) trig_half(kn phi / 2) with a coupling.
IntegralTerm nd_half_term(double coef, double kn, bool outer_cos, bool half_cos,
                          std::string label) {
  return term(std::move(label), [coef, kn, outer_cos, half_cos](const auto& x) {
    const auto outer = outer_cos ? cos(kn * x.phi) : sin(kn * x.phi);
    const auto half = half_cos ? cos(0.5 * kn * x.phi) : sin(0.5 * kn * x.phi);
    return coef * pow(x.r, -0.5 * kn) * outer * half;
  });
}

Integral nd_integral(const Pieces& q, std::string_view name) {
  const double k0 = q.m.k0, k1 = q.m.k1, k2 = q.m.k2, kn = q.kn;
  // Conserved pair, equal to Re and Im of A_n N_phi. See docs/FORMULA_ERRATA.md.
  if (name == "Jd2")
    return Integral("Jd2",
                    {q.p2_pphi(-1.0), k0_trig(k0, kn, true, "k0 cos"),
                     nd_half_term(-k1, kn, false, false, "-k1 r^-kn/2 sin sin_h"),
                     nd_half_term(k2, kn, false, true, "k2 r^-kn/2 sin cos_h")},
                    2);
  if (name == "Jd3")
    return Integral("Jd3",
                    {q.p1_pphi(), k0_trig(k0, kn, false, "k0 sin"),
                     nd_half_term(k1, kn, true, false, "k1 r^-kn/2 cos sin_h"),
                     nd_half_term(-k2, kn, true, true, "-k2 r^-kn/2 cos cos_h")},
                    2);
  // Transcribed forms; not conserved.
  if (name == "Jd2_printed")
    return Integral("Jd2_printed",
                    {q.p1_pphi(), k0_trig(-k0, kn, true, "-k0 cos"),
                     nd_half_term(k1, kn, false, false, "k1 r^-kn/2 sin sin_h"),
                     nd_half_term(-k2, kn, false, true, "-k2 r^-kn/2 sin cos_h")},
                    2);
  if (name == "Jd3_printed")
    return Integral("Jd3_printed",
                    {q.p2_pphi(), k0_trig(k0, kn, false, "k0 sin"),
                     nd_half_term(k1, kn, true, false, "k1 r^-kn/2 cos sin_h"),
                     nd_half_term(-k2, kn, true, true, "-k2 r^-kn/2 cos cos_h")},
                    2);
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

}  // namespace

std::vector<std::string> integral_names(Family family) { return family_info(family).integrals; }

Integral integral(Family family, std::string_view name, const ModelParams& params) {
  ModelParams m = params;
  m.family = family;
  if (name == "H") return make_hamiltonian_integral(m);
  const Pieces q(m);
  switch (family) {
    case Family::geodesic: return geodesic_integral(q, name);
    case Family::na_central: return na_central_integral(q, name);
    case Family::na: return na_integral(q, name);
    case Family::na_prime: return na_prime_integral(q, name);
    case Family::nb: return nb_integral(q, name);
    case Family::nc: return nc_integral(q, name);
    case Family::nc1: return nc1_integral(q, name);
    case Family::nc2: return nc2_integral(q, name);
    case Family::nd: return nd_integral(q, name);
  }
  throw Error(ErrorCode::UnknownIntegral, std::string(name));
}

double integral_value(Family family, std::string_view name, const ModelParams& params,
                      const PhasePoint& point) {
  ModelParams m = params;
  m.family = family;
  require_valid(point, m, 0.0);
  return integral(family, name, m)(point);
}

ComplexObservable complex_M(const ModelParams& params) {
  const double k0 = params.k0, k1 = params.k1, k2 = params.k2, kn = params.k_n(), n = params.n;
  auto re = Observable::from_generic("M_n1", [=](const auto& x) {
    return pow(x.r, 2.0 * kn) * (x.r * x.r * x.p_r * x.p_r - x.p_phi * x.p_phi) +
           2.0 * k0 * pow(x.r, -2.0 * kn) +
           2.0 * pow(x.r, -kn) * (k1 * cos(kn * x.phi) + k2 * sin(kn * x.phi));
  });
  auto im = Observable::from_generic("M_n2", [=](const auto& x) {
    return 2.0 * pow(x.r, 2.0 * n - 1.0) * x.p_r * x.p_phi +
           2.0 * pow(x.r, -kn) * (k1 * sin(kn * x.phi) - k2 * cos(kn * x.phi));
  });
  return {"M_n", re, im};
}

ComplexObservable complex_N(AngleKind kind, double n) {
  const double w = (kind == AngleKind::doubled ? 2.0 : 1.0) * (n - 1.0);
  auto re = Observable::from_generic("N_phi1", [w](const auto& x) { return cos(w * x.phi); });
  auto im = Observable::from_generic("N_phi2", [w](const auto& x) { return sin(w * x.phi); });
  return {kind == AngleKind::doubled ? "N_phi(2kn)" : "N_phi(kn)", re, im};
}

double momentum_weight_exponent(double n) { return 0.5 * (3.0 * n - 1.0); }

ComplexObservable complex_A(const ModelParams& params) {
  const double k0 = params.k0, k1 = params.k1, k2 = params.k2, kn = params.k_n();
  const double w = momentum_weight_exponent(params.n);
  auto re = Observable::from_generic("A_n1", [=](const auto& x) {
    return pow(x.r, kn) * x.p_phi * x.p_phi + k0;
  });
  auto im = Observable::from_generic("A_n2", [=](const auto& x) {
    return pow(x.r, -0.5 * kn) * (pow(x.r, w) * x.p_r * x.p_phi + k1 * sin(0.5 * kn * x.phi) -
                                  k2 * cos(0.5 * kn * x.phi));
  });
  return {"A_n", re, im};
}

Observable lambda_observable(LambdaConvention convention, double n) {
  const double kn = n - 1.0;
  const double factor = convention == LambdaConvention::oscillator ? kn : 1.0;
  return Observable::from_generic(
      "lambda_n", [=](const auto& x) { return factor * pow(x.r, 2.0 * kn) * x.p_phi; });
}

double lambda_factor(LambdaConvention convention, double n, const PhasePoint& point) {
  return lambda_observable(convention, n)(point);
}

}  // namespace pdm
