// Bit-stable JSON/CSV output for reports and sweeps.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fracmp/config.hpp"
#include "fracmp/model.hpp"
#include "fracmp/solvers.hpp"

namespace fracmp {

std::string artifact_version();

// Shortest round-trip decimal representation.
std::string format_number(double v);

using CsvCell = std::variant<long long, double, std::string>;

void write_text_file(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows);

nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json validation_to_json(const ValidationReport& rep);
nlohmann::json critical_levels_to_json(const CriticalLevelReport& rep);
nlohmann::json solve_report_to_json(const SolveReport& rep);

// Report skeleton: version + config echo.
nlohmann::json make_report(const RunConfig& cfg, const std::string& command);
void write_report(const std::string& outdir, const nlohmann::json& report);

}  // namespace fracmp
