#include "pdm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace pdm {

namespace {

// JSON has no infinity; informational checks carry a null tolerance.
nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_or_inf(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : cert.checks) {
    nlohmann::json e{{"name", c.name},
                     {"max_residual", number_or_null(c.max_residual)},
                     {"tolerance", number_or_null(c.tolerance)},
                     {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  return {{"family", std::string(to_string(cert.params.family))},
          {"n", cert.params.n},
          {"couplings", {{"k0", cert.params.k0}, {"k1", cert.params.k1}, {"k2", cert.params.k2}}},
          {"checks", std::move(checks)},
          {"verdict", cert.verdict ? "pass" : "fail"}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    Certificate cert;
    const auto fam = parse_family(j.at("family").get<std::string>());
    if (!fam) throw Error(ErrorCode::InvalidArgument, "unknown family in certificate");
    cert.params.family = *fam;
    cert.params.n = j.at("n").get<double>();
    const auto& k = j.at("couplings");
    cert.params.k0 = k.at("k0").get<double>();
    cert.params.k1 = k.at("k1").get<double>();
    cert.params.k2 = k.at("k2").get<double>();
    for (const auto& e : j.at("checks")) {
      CheckResult c;
      c.name = e.at("name").get<std::string>();
      c.max_residual = number_or_inf(e.at("max_residual"));
      c.tolerance = number_or_inf(e.at("tolerance"));
      c.pass = e.at("pass").get<bool>();
      if (e.contains("note")) c.note = e.at("note").get<std::string>();
      cert.checks.push_back(std::move(c));
    }
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail")
      throw Error(ErrorCode::InvalidArgument, "verdict must be pass or fail");
    cert.verdict = verdict == "pass";
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed certificate: ") + e.what());
  }
}

std::string certificate_to_string(const Certificate& cert) { return to_json(cert).dump(2) + "\n"; }

void write_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << certificate_to_string(cert);
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  try {
    return certificate_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed certificate: ") + e.what());
  }
}

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  for (const auto& [key, v] : j.items())
    if (v.is_object() || v.is_array())
      throw Error(ErrorCode::InvalidArgument, "config value for '" + key + "' must be a scalar");
  return j;
}

}  // namespace pdm
