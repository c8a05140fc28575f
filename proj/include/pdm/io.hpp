#pragma once

// JSON serialization of certificates and flat JSON run configurations.

#include <string>

#include <json.hpp>

#include "pdm/certify.hpp"

namespace pdm {

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);

std::string certificate_to_string(const Certificate& cert);
void write_certificate(const Certificate& cert, const std::string& path);
Certificate read_certificate(const std::string& path);

// Flat object of scalar settings, e.g. {"family": "nd", "n": 3, "k0": -1}.
nlohmann::json read_config(const std::string& path);

}  // namespace pdm
