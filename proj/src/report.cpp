#include "fracmp/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "fracmp/errors.hpp"

namespace fracmp {

std::string artifact_version() { return "fracmp 0.1.0"; }

std::string format_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<CsvCell>>& rows) {
    std::string text;
    for (size_t i = 0; i < header.size(); ++i) {
        text += (i ? "," : "");
        text += header[i];
    }
    text += "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) text += ",";
            if (std::holds_alternative<long long>(row[i]))
                text += std::to_string(std::get<long long>(row[i]));
            else if (std::holds_alternative<double>(row[i]))
                text += format_number(std::get<double>(row[i]));
            else
                text += std::get<std::string>(row[i]);
        }
        text += "\n";
    }
    write_text_file(path, text);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["grid"] = {{"half_length", cfg.grid.half_length}, {"n_points", cfg.grid.n_points}};
    j["model"] = {{"potential", cfg.model.potential}, {"v0", cfg.model.v0},
                  {"v_exponent", cfg.model.v_exponent}, {"mode", cfg.model.mode},
                  {"p", cfg.model.p}, {"beta", cfg.model.beta}, {"mu", cfg.model.mu},
                  {"theta", cfg.model.theta}, {"t0", cfg.model.t0},
                  {"kirchhoff", cfg.model.kirchhoff}, {"m0", cfg.model.m0},
                  {"slope", cfg.model.slope}, {"sigma", cfg.model.sigma}};
    j["solver"] = {{"tol_dual", cfg.solver.tol_dual},
                   {"tol_residual", cfg.solver.tol_residual},
                   {"max_iterations", cfg.solver.max_iterations},
                   {"restarts", cfg.solver.restarts},
                   {"path_points", cfg.solver.path_points},
                   {"max_sweeps", cfg.solver.max_sweeps},
                   {"mp_tol_dual", cfg.solver.mp_tol_dual}};
    j["experiment"] = {{"k_list", cfg.experiment.k_list},
                       {"mt_k_list", cfg.experiment.mt_k_list},
                       {"alpha_list", cfg.experiment.alpha_list},
                       {"q_list", cfg.experiment.q_list},
                       {"moser_half_length", cfg.experiment.moser_half_length},
                       {"moser_n_points", cfg.experiment.moser_n_points}};
    j["output"] = {{"seed", cfg.output.seed}, {"workers", cfg.output.workers}};
    return j;
}

nlohmann::json validation_to_json(const ValidationReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"worst_margin", c.worst_margin},
                          {"location", c.location},
                          {"note", c.note}});
    return {{"checks", checks},
            {"all_pass", rep.all_pass()},
            {"m_h_determined", rep.m_h_determined},
            {"k0_determined", rep.k0_determined},
            {"lambda1_used", rep.lambda1_used},
            {"t_max", rep.t_max}};
}

nlohmann::json critical_levels_to_json(const CriticalLevelReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"k", r.k},
                        {"t_star", r.t_star},
                        {"t_star_sq", r.t_star_sq},
                        {"value", r.value},
                        {"threshold", r.threshold},
                        {"margin", r.margin}});
    return {{"rows", rows}, {"threshold", rep.threshold}, {"verdict", rep.verdict}};
}

nlohmann::json solve_report_to_json(const SolveReport& rep) {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [e, d] : rep.history) hist.push_back({{"energy", e}, {"dual_norm", d}});
    return {{"energy", rep.energy},
            {"dual_norm", rep.dual_norm},
            {"weak_residual", rep.weak_res},
            {"mp_level", rep.mp_level},
            {"nehari_level", rep.nehari_level},
            {"norm_limit", rep.norm_limit},
            {"min_value", rep.min_value},
            {"iterations", rep.iterations},
            {"clipped", rep.clipped},
            {"ar_proxy_min", rep.ar_proxy_min},
            {"eq41_min", rep.eq41_min},
            {"claim1_gap", rep.claim1_gap},
            {"max_iterate_norm", rep.max_iterate_norm},
            {"history", hist},
            {"notes", rep.notes}};
}

nlohmann::json make_report(const RunConfig& cfg, const std::string& command) {
    nlohmann::json j;
    j["artifact_version"] = artifact_version();
    j["command"] = command;
    j["config"] = config_to_json(cfg);
    return j;
}

void write_report(const std::string& outdir, const nlohmann::json& report) {
    write_text_file(outdir + "/report.json", report.dump(2) + "\n");
}

}  // namespace fracmp
