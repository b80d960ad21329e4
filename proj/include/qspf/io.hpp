#pragma once

#include <filesystem>

#include <json.hpp>

#include "qspf/chebyshev.hpp"
#include "qspf/qsp_eval.hpp"

namespace qspf {

/// {"degree_half": d, "coeffs": [f_0, ..., f_d]}
nlohmann::json target_to_json(const ChebTarget& t);
ChebTarget target_from_json(const nlohmann::json& j);

/// {"psi": [...], "meta": {...}}
nlohmann::json phases_to_json(const PhaseFactors& psi, nlohmann::json meta = nlohmann::json::object());
PhaseFactors phases_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace qspf
