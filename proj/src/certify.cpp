#include "pdm/certify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>

#include "pdm/hamiltonian.hpp"

namespace pdm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double momentum_scale(const PhasePoint& p) {
  return std::max({1.0, std::abs(p.p_r), std::abs(p.p_phi)});
}

// Denominator turning a bracket residual into a number comparable with rel_tol.
double bracket_denominator(const BracketTolerance& tol, double f, double g, const PhasePoint& p,
                           double rhs_magnitude = 0) {
  const double m = momentum_scale(p);
  return std::max({tol.abs_tol / tol.rel_tol, tol.scale(f, g, p), rhs_magnitude * m * m});
}

Integral named(const ModelParams& params, const std::string& name) {
  return integral(params.family, name, params);
}

class Accumulator {
 public:
  Accumulator(std::string name, double tolerance) {
    stat_.name = std::move(name);
    stat_.tolerance = tolerance;
  }

  // Returns true when this sample became the worst so far.
  bool add(double normalized, double raw) {
    ++stat_.points;
    sum_ += normalized;
    stat_.max_abs = std::max(stat_.max_abs, std::abs(raw));
    if (normalized > stat_.max_residual || stat_.points == 1) {
      stat_.max_residual = normalized;
      return true;
    }
    return false;
  }

  ResidualStat& stat() { return stat_; }

  ResidualStat finish() {
    if (stat_.points > 0) stat_.mean_residual = sum_ / stat_.points;
    stat_.pass = !(stat_.max_residual > stat_.tolerance);
    return stat_;
  }

 private:
  ResidualStat stat_;
  double sum_ = 0;
};

}  // namespace

ResidualStat bracket_residual(const Integral& integral, const ModelParams& params,
                              const std::vector<PhasePoint>& points, const BracketTolerance& tol) {
  const Observable h = hamiltonian_observable(params);
  const Observable j = integral.observable();
  Accumulator acc("bracket:" + integral.name(), tol.rel_tol);
  for (const auto& p : points) {
    const double b = poisson_bracket(j, h, p);
    if (!std::isfinite(b)) throw Error(ErrorCode::NonFinite, "non-finite bracket for " + integral.name());
    if (acc.add(std::abs(b) / bracket_denominator(tol, j(p), h(p), p), b)) {
      auto& terms = acc.stat().term_brackets;
      terms.clear();
      for (const auto& t : integral.terms()) terms.emplace_back(t.label, poisson_bracket(t.fn, h, p));
    }
  }
  return acc.finish();
}

std::vector<ResidualStat> bracket_residual_suite(const ModelParams& params,
                                                 const SampleConfig& sample,
                                                 const std::optional<CorruptionSpec>& corruption) {
  require_valid(params);
  const auto points = sample_points(params, sample.box, sample.count);
  std::vector<ResidualStat> out;
  for (const auto& name : integral_names(params.family)) {
    Integral j = named(params, name);
    if (corruption && corruption->integral == name) j = j.corrupted(corruption->term, corruption->factor);
    out.push_back(bracket_residual(j, params, points, sample.bracket));
  }
  if (corruption) {
    const auto names = integral_names(params.family);
    if (std::find(names.begin(), names.end(), corruption->integral) == names.end())
      throw Error(ErrorCode::UnknownIntegral,
                  "cannot corrupt " + corruption->integral + ": not bound to " +
                      std::string(to_string(params.family)));
  }
  return out;
}

std::vector<InvolutionPair> involution_pairs(Family family) {
  switch (family) {
    case Family::na_central:
      return {{"J11", "J22", true}, {"J1", "J11", false}, {"J1", "J22", false}};
    case Family::na:
      return {{"Ja1", "Ja2", false}, {"Ja1", "Ja3", false}, {"Ja2", "Ja3", false}};
    default:
      return {};
  }
}

std::vector<ResidualStat> involution_check(const ModelParams& params,
                                           const std::vector<InvolutionPair>& pairs,
                                           const SampleConfig& sample) {
  require_valid(params);
  const auto points = sample_points(params, sample.box, sample.count);
  std::vector<ResidualStat> out;
  for (const auto& pair : pairs) {
    const Observable f = named(params, pair.first).observable();
    const Observable g = named(params, pair.second).observable();
    Accumulator acc("involution:" + pair.first + "," + pair.second,
                    pair.asserted ? sample.bracket.rel_tol : kInf);
    for (const auto& p : points) {
      const double b = poisson_bracket(f, g, p);
      acc.add(std::abs(b) / bracket_denominator(sample.bracket, f(p), g(p), p), b);
    }
    out.push_back(acc.finish());
  }
  return out;
}

RankResult independence_rank(const std::vector<Observable>& functions, const PhasePoint& point,
                             double threshold) {
  if (functions.size() < 2 || functions.size() > 4)
    throw Error(ErrorCode::InvalidArgument, "independence_rank needs 2 to 4 functions");
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(functions.size()), 4);
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto g = gradient(functions[i], point).as_array();
    for (int k = 0; k < 4; ++k) jac(static_cast<Eigen::Index>(i), k) = g[static_cast<std::size_t>(k)];
  }
  if (!jac.allFinite()) throw Error(ErrorCode::NonFinite, "non-finite gradient in rank check");
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const Eigen::VectorXd s = svd.singularValues();
  RankResult res;
  res.singular_values.assign(s.data(), s.data() + s.size());
  const double smax = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (smax > 0 && s(k) > threshold * smax) ++res.rank;
  return res;
}

std::vector<std::string> independence_set(Family family) {
  switch (family) {
    case Family::geodesic: return {"P1", "P2", "Pphi"};
    case Family::na_central: return {"J1", "J11", "J22"};
    case Family::na: return {"Ja1", "Ja2", "Ja3"};
    case Family::na_prime: return {"Ja1'", "Ja3'", "J2"};
    case Family::nb: return {"Jb1", "Jb2", "Jb3"};
    case Family::nc: return {"J1", "J2", "J3"};
    case Family::nc1:
    case Family::nc2: return {"Jc2", "Jc3", "H"};
    case Family::nd: return {"Jd2", "Jd3", "H"};
  }
  return {};
}

IndependenceStat independence_check(const ModelParams& params,
                                    const std::vector<std::string>& names,
                                    const SampleConfig& sample) {
  require_valid(params);
  std::vector<Observable> fns;
  for (const auto& n : names) fns.push_back(named(params, n).observable());
  IndependenceStat st;
  st.names = names;
  int full = 0;
  for (const auto& p : sample_points(params, sample.box, sample.count)) {
    auto rk = independence_rank(fns, p, sample.rank_threshold);
    ++st.points;
    if (rk.rank == static_cast<int>(fns.size()))
      ++full;
    else
      st.deficient.emplace_back(p, std::move(rk));
  }
  st.full_rank_fraction = st.points ? static_cast<double>(full) / st.points : 0.0;
  return st;
}

ResidualStat killing_tensor_check(const ModelParams& params, const SampleConfig& sample) {
  require_valid(params);
  const ModelParams free = params.with_couplings(0, 0, 0);
  std::vector<Integral> quadratic;
  for (const auto& name : integral_names(params.family)) {
    Integral j = named(free, name);
    if (j.momentum_degree() == 2) quadratic.push_back(std::move(j));
  }
  if (quadratic.empty())
    throw Error(ErrorCode::NoQuadraticIntegral,
                std::string(to_string(params.family)) + " has no quadratic integral");
  const Observable t = kinetic_observable(params.n);
  Accumulator acc("killing_tensor", sample.bracket.rel_tol);
  for (const auto& p : sample_points(params, sample.box, sample.count)) {
    for (const auto& j : quadratic) {
      const Observable k = j.observable();
      const double b = poisson_bracket(k, t, p);
      acc.add(std::abs(b) / bracket_denominator(sample.bracket, k(p), t(p), p), b);
    }
  }
  return acc.finish();
}

namespace {

// lhs, rhs and a magnitude for relative comparison.
struct Pointwise {
  double lhs;
  double rhs;
  double scale;
};
using PointwiseFn = std::function<Pointwise(const PhasePoint&)>;

// bracket value, expected value, and the two bracketed values for scaling.
struct BracketIdentity {
  std::complex<double> bracket;
  std::complex<double> expected;
  double f;
  double g;
};
using BracketFn = std::function<BracketIdentity(const PhasePoint&)>;

ResidualStat run_pointwise(const std::string& name, const PointwiseFn& fn,
                           const std::vector<PhasePoint>& points, double tol) {
  Accumulator acc(name, tol);
  for (const auto& p : points) {
    const auto v = fn(p);
    const double d = v.lhs - v.rhs;
    acc.add(std::abs(d) / std::max({1.0, v.scale, std::abs(v.lhs), std::abs(v.rhs)}), d);
  }
  return acc.finish();
}

ResidualStat run_bracket(const std::string& name, const BracketFn& fn,
                         const std::vector<PhasePoint>& points, const BracketTolerance& tol) {
  Accumulator acc(name, tol.rel_tol);
  for (const auto& p : points) {
    const auto v = fn(p);
    const double d = std::abs(v.bracket - v.expected);
    acc.add(d / bracket_denominator(tol, v.f, v.g, p, std::abs(v.expected)), d);
  }
  return acc.finish();
}

std::complex<double> value(const ComplexObservable& z, const PhasePoint& p) {
  return {z.re(p), z.im(p)};
}

}  // namespace

std::vector<ResidualStat> identity_suite(const ModelParams& params, const SampleConfig& sample) {
  require_valid(params);
  const auto points = sample_points(params, sample.box, sample.count);
  const Observable h = hamiltonian_observable(params);
  const auto hscale = [&params](const PhasePoint& p) {
    return std::abs(kinetic(params.n, p)) + std::abs(potential(params, p.r, p.phi));
  };
  const double itol = sample.identity_tol;
  std::vector<ResidualStat> out;

  const auto half_sum = [&](const std::string& a, const std::string& b) {
    const Integral ja = named(params, a);
    const Integral jb = named(params, b);
    out.push_back(run_pointwise(
        "identity:H=(" + a + "+" + b + ")/2",
        [&](const PhasePoint& p) {
          return Pointwise{h(p), 0.5 * (ja(p) + jb(p)),
                           hscale(p) + 0.5 * (ja.term_scale(p) + jb.term_scale(p))};
        },
        points, itol));
  };

  switch (params.family) {
    case Family::na_central: {
      half_sum("J11", "J22");
      const Integral j11 = named(params, "J11"), j22 = named(params, "J22"), j12 = named(params, "J12");
      const Observable closure = j11.observable() * j22.observable() - j12.observable() * j12.observable();
      out.push_back(run_bracket(
          "identity:{J11*J22-J12^2,H}=0",
          [&](const PhasePoint& p) {
            return BracketIdentity{poisson_bracket(closure, h, p), 0.0, closure(p), h(p)};
          },
          points, sample.bracket));
      break;
    }
    case Family::na:
      half_sum("Ja1", "Ja2");
      break;
    case Family::na_prime: {
      half_sum("Ja1'", "Ja2'");
      const Integral j2 = named(params, "J2"), j3 = named(params, "J3"), ja3 = named(params, "Ja3'");
      const auto mn = complex_M(params) * conj(complex_N(AngleKind::doubled, params.n));
      out.push_back(run_pointwise(
          "identity:Re(M*conj(N))=J2",
          [&](const PhasePoint& p) { return Pointwise{mn.re(p), j2(p), j2.term_scale(p)}; }, points,
          itol));
      out.push_back(run_pointwise(
          "identity:Im(M*conj(N))=-J3",
          [&](const PhasePoint& p) { return Pointwise{mn.im(p), -j3(p), j3.term_scale(p)}; }, points,
          itol));
      const double n = params.n, k0 = params.k0, k1 = params.k1, k2 = params.k2;
      const Observable a3 = ja3.observable(), o2 = j2.observable(), o3 = j3.observable();
      out.push_back(run_bracket(
          "identity:{Ja3',J2}=4(n-1)(k0*J3+k1*k2)",
          [&](const PhasePoint& p) {
            return BracketIdentity{poisson_bracket(a3, o2, p), 4 * (n - 1) * (k0 * o3(p) + k1 * k2),
                                   a3(p), o2(p)};
          },
          points, sample.bracket));
      out.push_back(run_bracket(
          "identity:{Ja3',J3}=-2(n-1)(2k0*J2+k1^2-k2^2)",
          [&](const PhasePoint& p) {
            return BracketIdentity{poisson_bracket(a3, o3, p),
                                   -2 * (n - 1) * (2 * k0 * o2(p) + k1 * k1 - k2 * k2), a3(p), o3(p)};
          },
          points, sample.bracket));
      break;
    }
    case Family::nd: {
      const Integral jd2 = named(params, "Jd2"), jd3 = named(params, "Jd3");
      const auto a = complex_A(params);
      const auto nphi = complex_N(AngleKind::single, params.n);
      const auto an = a * nphi;
      const auto ascale = [&](const PhasePoint& p) {
        return std::abs(a.re(p)) + std::abs(a.im(p));
      };
      out.push_back(run_pointwise(
          "identity:Re(A*N)=Jd2",
          [&](const PhasePoint& p) { return Pointwise{an.re(p), jd2(p), jd2.term_scale(p) + ascale(p)}; },
          points, itol));
      out.push_back(run_pointwise(
          "identity:Im(A*N)=Jd3",
          [&](const PhasePoint& p) { return Pointwise{an.im(p), jd3(p), jd3.term_scale(p) + ascale(p)}; },
          points, itol));
      out.push_back(run_pointwise(
          "identity:A*conj(A)=Jd2^2+Jd3^2",
          [&](const PhasePoint& p) {
            const auto av = value(a, p);
            const double s2 = jd2.term_scale(p), s3 = jd3.term_scale(p);
            return Pointwise{std::norm(av), jd2(p) * jd2(p) + jd3(p) * jd3(p),
                             s2 * s2 + s3 * s3 + ascale(p) * ascale(p)};
          },
          points, itol));
      out.push_back(run_pointwise(
          "identity:|N|=1",
          [&](const PhasePoint& p) { return Pointwise{std::abs(value(nphi, p)), 1.0, 1.0}; }, points,
          itol));
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<ResidualStat> evolution_law_check(const ModelParams& params,
                                              const SampleConfig& sample) {
  require_valid(params);
  if (params.family != Family::na_prime && params.family != Family::nd)
    throw Error(ErrorCode::InvalidArgument, "evolution laws exist only for na_prime and nd");
  const auto points = sample_points(params, sample.box, sample.count);
  const Observable h = hamiltonian_observable(params);
  const std::complex<double> i(0, 1);
  const double n = params.n;
  std::vector<ResidualStat> out;

  const auto law = [&](const std::string& name, const ComplexObservable& z, const Observable& lam,
                       std::complex<double> factor) {
    out.push_back(run_bracket(
        "evolution:" + name,
        [&, z, lam, factor](const PhasePoint& p) {
          const auto zv = value(z, p);
          return BracketIdentity{poisson_bracket(z, h, p), factor * lam(p) * zv, std::abs(zv), h(p)};
        },
        points, sample.bracket));
  };
  // Real component law {X,H} = c * lambda * Y.
  const auto real_law = [&](const std::string& name, const Observable& x, const Observable& y,
                            const Observable& lam, double c) {
    out.push_back(run_bracket(
        "evolution:" + name,
        [&, x, y, lam, c](const PhasePoint& p) {
          return BracketIdentity{poisson_bracket(x, h, p), c * lam(p) * y(p), x(p), h(p)};
        },
        points, sample.bracket));
  };

  if (params.family == Family::na_prime) {
    const Observable lam = lambda_observable(LambdaConvention::oscillator, n);
    law("{M,H}=2i*lambda*M", complex_M(params), lam, 2.0 * i);
    law("{N,H}=2i*lambda*N", complex_N(AngleKind::doubled, n), lam, 2.0 * i);
    return out;
  }

  const Observable lam = lambda_observable(LambdaConvention::kepler, n);
  const auto a = complex_A(params);
  const auto nphi = complex_N(AngleKind::single, n);
  real_law("{A1,H}=(n-1)*lambda*A2", a.re, a.im, lam, n - 1);
  real_law("{A2,H}=-(n-1)*lambda*A1", a.im, a.re, lam, -(n - 1));
  real_law("{N1,H}=-(n-1)*lambda*N2", nphi.re, nphi.im, lam, -(n - 1));
  real_law("{N2,H}=(n-1)*lambda*N1", nphi.im, nphi.re, lam, n - 1);
  law("{A,H}=-i(n-1)*lambda*A", a, lam, -i * (n - 1));
  law("{N,H}=i(n-1)*lambda*N", nphi, lam, i * (n - 1));

  const auto an = a * nphi;
  out.push_back(run_bracket(
      "evolution:{A*N,H}=0(leibniz)",
      [&](const PhasePoint& p) {
        const auto leibniz = poisson_bracket(a, h, p) * value(nphi, p) +
                             value(a, p) * poisson_bracket(nphi, h, p);
        return BracketIdentity{leibniz, 0.0, std::abs(value(a, p)), h(p)};
      },
      points, sample.bracket));
  out.push_back(run_bracket(
      "evolution:{A*N,H}=0(direct)",
      [&](const PhasePoint& p) {
        return BracketIdentity{poisson_bracket(an, h, p), 0.0, std::abs(value(an, p)), h(p)};
      },
      points, sample.bracket));
  return out;
}

const CheckResult* Certificate::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool Certificate::operator==(const Certificate& o) const {
  return params.family == o.params.family && params.n == o.params.n && params.k0 == o.params.k0 &&
         params.k1 == o.params.k1 && params.k2 == o.params.k2 && checks == o.checks &&
         verdict == o.verdict;
}

namespace {

CheckResult from_stat(const ResidualStat& s) {
  return {s.name, s.max_residual, s.tolerance, s.pass, {}};
}

CheckResult skipped(const std::string& name, const std::string& reason) {
  return {name, 0.0, 0.0, false, "skipped: " + reason};
}

template <class F>
void guarded(std::vector<CheckResult>& out, const std::string& name, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    out.push_back(skipped(name, e.what()));
  } catch (const std::exception& e) {
    out.push_back(skipped(name, e.what()));
  }
}

}  // namespace

Certificate certificate(const ModelParams& params, const SampleConfig& sample,
                        const IntegratorConfig& integrator, const CertifyOptions& options) {
  require_valid(params);
  if (sample.count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  Certificate cert;
  cert.params = params;
  auto& checks = cert.checks;

  guarded(checks, "bracket", [&] {
    for (const auto& s : bracket_residual_suite(params, sample, options.corruption))
      checks.push_back(from_stat(s));
  });

  const auto pairs = involution_pairs(params.family);
  if (!pairs.empty())
    guarded(checks, "involution", [&] {
      for (const auto& s : involution_check(params, pairs, sample)) checks.push_back(from_stat(s));
    });

  guarded(checks, "independence", [&] {
    const auto names = independence_set(params.family);
    const auto st = independence_check(params, names, sample);
    std::string label = "independence:";
    for (std::size_t k = 0; k < names.size(); ++k) label += (k ? "," : "") + names[k];
    // Stored as the deficient fraction so that smaller is better.
    const double deficient = 1.0 - st.full_rank_fraction;
    const double tol = 1.0 - sample.independence_fraction;
    CheckResult c{label, deficient, tol, !(deficient > tol + 1e-15), {}};
    if (!st.deficient.empty()) {
      std::ostringstream os;
      os.precision(3);
      os << st.deficient.size() << " rank-deficient points";
      c.note = os.str();
    }
    checks.push_back(std::move(c));
  });

  bool has_quadratic = false;
  for (const auto& name : integral_names(params.family))
    if (named(params, name).momentum_degree() == 2) has_quadratic = true;
  if (has_quadratic)
    guarded(checks, "killing_tensor",
            [&] { checks.push_back(from_stat(killing_tensor_check(params, sample))); });

  guarded(checks, "identity", [&] {
    for (const auto& s : identity_suite(params, sample)) checks.push_back(from_stat(s));
  });

  if (params.family == Family::na_prime || params.family == Family::nd)
    guarded(checks, "evolution", [&] {
      for (const auto& s : evolution_law_check(params, sample)) checks.push_back(from_stat(s));
    });

  if (options.trajectory)
    guarded(checks, "drift", [&] {
      require_valid(integrator);
      const auto start = sample_points(params, sample.box, 1).front();
      const auto traj = integrate(params, start, integrator);
      if (traj.size() < 2) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no steps");
      const auto probe = drift_report(traj, kInf);
      const auto* hd = probe.find("H");
      const double h_drift = hd ? hd->relative : 0.0;
      const double tol = std::max(100.0 * h_drift, 100.0 * integrator.rtol);
      std::string note;
      if (traj.termination != Termination::Completed)
        note = "trajectory stopped early at t = " + std::to_string(traj.times.back()) + " (" +
               std::string(to_string(traj.termination)) + ")";
      for (const auto& e : probe.entries) {
        if (e.name == "H")
          checks.push_back({"drift:H", e.relative, kInf, true, note});
        else
          checks.push_back({"drift:" + e.name, e.relative, tol, !(e.relative > tol), note});
      }
    });

  cert.verdict = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  return cert;
}

}  // namespace pdm
