// pdm: certify, integrate and cross-check position-dependent-mass
// Hamiltonians from the command line.
//
// Exit codes: 0 pass, 1 verdict fail, 2 usage or invalid parameters,
// 3 integration aborted.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdm/certify.hpp"
#include "pdm/dynamics.hpp"
#include "pdm/hamiltonian.hpp"
#include "pdm/io.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kAbort = 3;

struct Model {
  std::string family = "geodesic";
  double n = 2;
  double k0 = 0;
  double k1 = 0;
  double k2 = 0;
};

struct Options {
  Model model;
  int samples = 200;
  int xcheck_samples = 1000;
  std::uint64_t seed = 7;
  double rtol = 1e-10;
  double atol = 1e-12;
  double t_end = 10;
  double bracket_tol = 1e-10;
  std::string out;
  std::string corrupt;
  std::string which;
  std::optional<double> r0, phi0, pr0, pphi0;
};

pdm::ModelParams to_params(const Model& m) {
  const auto fam = pdm::parse_family(m.family);
  if (!fam) throw pdm::Error(pdm::ErrorCode::InvalidArgument, "unknown family '" + m.family + "'");
  pdm::ModelParams p{*fam, m.n, m.k0, m.k1, m.k2};
  pdm::require_valid(p);
  return p;
}

// NAME:TERM[:FACTOR]
pdm::CorruptionSpec parse_corruption(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3)
    throw pdm::Error(pdm::ErrorCode::InvalidArgument, "--corrupt expects NAME:TERM[:FACTOR]");
  pdm::CorruptionSpec c;
  c.integral = parts[0];
  try {
    c.term = std::stoul(parts[1]);
    if (parts.size() == 3) c.factor = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw pdm::Error(pdm::ErrorCode::InvalidArgument, "--corrupt expects NAME:TERM[:FACTOR]");
  }
  return c;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

int cmd_list() {
  for (const auto f : pdm::kAllFamilies) {
    const auto& info = pdm::family_info(f);
    std::cout << std::left << std::setw(11) << pdm::to_string(f) << "  [" << info.group << "]\n"
              << "    " << info.potential << "\n    integrals:";
    for (const auto& j : info.integrals) std::cout << ' ' << j;
    std::cout << '\n';
  }
  return kPass;
}

int cmd_check(const Options& o) {
  const auto params = to_params(o.model);
  pdm::SampleConfig sample;
  sample.count = o.samples;
  sample.box.seed = o.seed;
  sample.bracket.abs_tol = o.bracket_tol;
  sample.bracket.rel_tol = o.bracket_tol;
  pdm::IntegratorConfig ic;
  ic.rtol = o.rtol;
  ic.atol = o.atol;
  ic.t_end = o.t_end;
  pdm::require_valid(ic);
  pdm::CertifyOptions copt;
  if (!o.corrupt.empty()) copt.corruption = parse_corruption(o.corrupt);

  const auto cert = pdm::certificate(params, sample, ic, copt);
  for (const auto& c : cert.checks) {
    std::cout << (c.informational() ? "info " : c.pass ? "ok   " : "FAIL ") << c.name << "  "
              << format_number(c.max_residual);
    if (!c.informational()) std::cout << " <= " << format_number(c.tolerance);
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << '\n';
  }
  const std::string out = o.out.empty() ? "certificate.json" : o.out;
  pdm::write_certificate(cert, out);
  std::cout << "verdict: " << (cert.verdict ? "pass" : "fail") << "  (" << out << ")\n";
  return cert.verdict ? kPass : kFail;
}

int cmd_integrate(const Options& o) {
  const auto params = to_params(o.model);
  const pdm::PhasePoint x0{*o.r0, *o.phi0, *o.pr0, *o.pphi0};
  pdm::require_valid(x0, params);
  pdm::IntegratorConfig ic;
  ic.rtol = o.rtol;
  ic.atol = o.atol;
  ic.t_end = o.t_end;
  const auto traj = pdm::integrate(params, x0, ic);

  const std::string out = o.out.empty() ? "trajectory.csv" : o.out;
  std::ofstream csv(out);
  if (!csv) throw pdm::Error(pdm::ErrorCode::InvalidArgument, "cannot write " + out);
  csv << "t,r,phi,p_r,p_phi";
  for (const auto& name : traj.monitor_names) csv << ',' << name;
  csv << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    csv << traj.times[i] << ',' << s.r << ',' << s.phi << ',' << s.p_r << ',' << s.p_phi;
    for (const auto& m : traj.monitors) csv << ',' << m[i];
    csv << '\n';
  }

  const auto report = pdm::drift_report(traj, 1e-6);
  std::cout << "t = " << format_number(traj.times.back()) << "  steps = " << traj.size() - 1
            << "  rejected = " << traj.rejected_steps << "  drift:";
  for (const auto& e : report.entries) std::cout << ' ' << e.name << '=' << format_number(e.relative);
  std::cout << "  " << pdm::to_string(traj.termination) << '\n';
  if (traj.termination != pdm::Termination::Completed) {
    std::cerr << "pdm: " << traj.message << '\n';
    return kAbort;
  }
  return kPass;
}

int cmd_xcheck(const Options& o) {
  const auto tag = pdm::parse_euclidean(o.which);
  if (!tag) {
    std::cerr << "pdm: unknown Euclidean potential '" << o.which << "' (expected a, b, c or d)\n";
    return kUsage;
  }
  pdm::ModelParams params = to_params(
      {std::string(pdm::to_string(pdm::matching_family(*tag))), 0, o.model.k0, o.model.k1, o.model.k2});
  pdm::DomainBox box;
  box.seed = o.seed;
  double worst = 0;
  const auto points = pdm::sample_points(params, box, o.xcheck_samples);
  for (const auto& p : points) worst = std::max(worst, pdm::euclid_equivalence_residual(*tag, params, p));
  const bool pass = worst <= 1e-12;
  std::cout << pdm::to_string(*tag) << " vs " << pdm::to_string(params.family) << " (n = 0): max residual "
            << format_number(worst) << " over " << points.size() << " points  "
            << (pass ? "ok" : "FAIL") << '\n';
  return pass ? kPass : kFail;
}

// Flat JSON config: keys mirror long flag names, '_' and '-' interchangeable.
void apply_config(CLI::App& sub, const nlohmann::json& config) {
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    for (auto& c : flag)
      if (c == '_') c = '-';
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option(flag);
    } catch (const CLI::OptionNotFound&) {
      continue;  // settings for other subcommands
    }
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->run_callback_for_default();
    opt->default_val(text);
    opt->required(false);
  }
}

std::optional<std::string> find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("PDM_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "pdm: PDM_SEED must be a non-negative integer\n";
      return kUsage;
    }
  }

  CLI::App app{"Superintegrability checks for position-dependent-mass Hamiltonians"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON file of flag values (flags override it)");

  auto model_flags = [&o](CLI::App* s) {
    s->add_option("--family", o.model.family, "family tag (see 'pdm list')");
    s->add_option("--n", o.model.n, "mass exponent n (n != 1)");
    s->add_option("--k0", o.model.k0);
    s->add_option("--k1", o.model.k1);
    s->add_option("--k2", o.model.k2);
  };

  auto* list = app.add_subcommand("list", "list the Hamiltonian families");

  auto* check = app.add_subcommand("check", "certify a family and write a JSON certificate");
  model_flags(check);
  check->add_option("--samples", o.samples, "sample points")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.seed, "sampling seed (default $PDM_SEED or 7)");
  check->add_option("--rtol", o.rtol);
  check->add_option("--atol", o.atol);
  check->add_option("--t-end", o.t_end, "drift trajectory length");
  check->add_option("--bracket-tol", o.bracket_tol, "scaled bracket tolerance");
  check->add_option("--out", o.out, "certificate path (default certificate.json)");
  check->add_option("--corrupt", o.corrupt, "negative control NAME:TERM[:FACTOR]");

  auto* integ = app.add_subcommand("integrate", "integrate Hamilton's equations to CSV");
  model_flags(integ);
  integ->add_option("--r0", o.r0)->required();
  integ->add_option("--phi0", o.phi0)->required();
  integ->add_option("--pr0", o.pr0)->required();
  integ->add_option("--pphi0", o.pphi0)->required();
  integ->add_option("--rtol", o.rtol);
  integ->add_option("--atol", o.atol);
  integ->add_option("--t-end", o.t_end);
  integ->add_option("--out", o.out, "CSV path (default trajectory.csv)");

  auto* xcheck = app.add_subcommand("xcheck", "compare n = 0 members with Euclidean potentials");
  xcheck->add_option("--which", o.which, "a, b, c or d")->required();
  xcheck->add_option("--k0", o.model.k0);
  xcheck->add_option("--k1", o.model.k1);
  xcheck->add_option("--k2", o.model.k2);
  xcheck->add_option("--samples", o.xcheck_samples)->check(CLI::PositiveNumber);
  xcheck->add_option("--seed", o.seed);

  o.model = {"geodesic", 2, 1.0, 0.3, 0.2};
  try {
    if (const auto path = find_config(argc, argv)) {
      const auto config = pdm::read_config(*path);
      for (auto* sub : {check, integ, xcheck}) apply_config(*sub, config);
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  } catch (const pdm::Error& e) {
    std::cerr << "pdm: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (check->parsed()) return cmd_check(o);
    if (integ->parsed()) return cmd_integrate(o);
    if (xcheck->parsed()) {
      return cmd_xcheck(o);
    }
  } catch (const pdm::Error& e) {
    std::cerr << "pdm: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
