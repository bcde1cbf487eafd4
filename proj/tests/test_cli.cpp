#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracmp/commands.hpp"
#include "fracmp/errors.hpp"
#include "fracmp/report.hpp"

using namespace fracmp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("fracmp_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_CASE("config: serialize-parse round trip is the identity") {
    RunConfig cfg;
    cfg.grid.half_length = 17.5;
    cfg.grid.n_points = 1024;
    cfg.model.mode = "f";
    cfg.model.p = 4.0;
    cfg.model.kirchhoff = "linear";
    cfg.experiment.k_list = {4, 32};
    cfg.experiment.alpha_list = {0.9 * M_PI, 1.2 * M_PI, 2.0};
    cfg.output.seed = 987;
    const std::string text = serialize_config(cfg);
    RunConfig parsed = parse_config(text);
    CHECK(serialize_config(parsed) == text);
}

TEST_CASE("config: pi-suffixed values and comments parse") {
    RunConfig cfg = parse_config(
        "# comment\n"
        "[experiment]\n"
        "alpha_list = 0.9pi, 1.2pi   # straddles the threshold\n"
        "k_list = 4,8\n");
    REQUIRE(cfg.experiment.alpha_list.size() == 2);
    CHECK(cfg.experiment.alpha_list[0] == doctest::Approx(0.9 * M_PI).epsilon(1e-15));
    CHECK(cfg.experiment.alpha_list[1] == doctest::Approx(1.2 * M_PI).epsilon(1e-15));
}

TEST_CASE("config: violations are aggregated into one error") {
    try {
        parse_config(
            "[grid]\n"
            "half_length = -2\n"
            "n_points = 15\n"
            "[solver]\n"
            "path_points = 4\n"
            "[experiment]\n"
            "k_list =\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() >= 4);
    }
}

TEST_CASE("config: solve Q requires a Kirchhoff term") {
    RunConfig cfg;
    cfg.output.directory = temp_dir("q_missing");
    CHECK_THROWS_AS(cmd_solve(cfg, 'Q'), ConfigError);
}

TEST_CASE("operator-check command: pass on defaults, fail when under-resolved") {
    RunConfig cfg;
    cfg.grid.n_points = 1024;
    cfg.output.directory = temp_dir("op_ok");
    CHECK(cmd_operator_check(cfg) == 0);
    CHECK(std::filesystem::exists(cfg.output.directory + "/report.json"));

    RunConfig tiny;
    tiny.grid.n_points = 16;
    tiny.output.directory = temp_dir("op_tiny");
    CHECK(cmd_operator_check(tiny) == 1);
}

TEST_CASE("validate-model command exit codes") {
    RunConfig cfg;
    cfg.grid.half_length = 20.0;
    cfg.grid.n_points = 256;
    cfg.output.directory = temp_dir("vm_ok");
    CHECK(cmd_validate_model(cfg) == 0);

    RunConfig broken = cfg;
    broken.model.mode = "f";
    broken.model.p = 3.0;
    broken.model.theta = 3.5;
    broken.output.directory = temp_dir("vm_bad");
    CHECK(cmd_validate_model(broken) == 1);
}

TEST_CASE("critical-level command writes margin and sweep files") {
    RunConfig cfg;
    cfg.grid.half_length = 20.0;
    cfg.grid.n_points = 256;
    cfg.experiment.k_list = {4, 8};
    cfg.experiment.mt_k_list = {4, 16};
    cfg.output.directory = temp_dir("cl");
    CHECK(cmd_critical_level(cfg) == 0);
    const std::string csv = slurp(cfg.output.directory + "/critical_levels.csv");
    CHECK(csv.rfind("k,t_star,t_star_sq,value,threshold,margin", 0) == 0);
    CHECK(slurp(cfg.output.directory + "/mt_sweep.csv").rfind("k,alpha,value", 0) == 0);
}

TEST_CASE("reports are byte-identical across reruns") {
    RunConfig cfg;
    cfg.grid.half_length = 20.0;
    cfg.grid.n_points = 256;
    cfg.experiment.k_list = {4, 8};
    cfg.experiment.mt_k_list = {4};
    cfg.output.directory = temp_dir("det1");
    CHECK(cmd_critical_level(cfg) == 0);
    RunConfig cfg2 = cfg;
    cfg2.output.directory = temp_dir("det2");
    CHECK(cmd_critical_level(cfg2) == 0);
    CHECK(slurp(cfg.output.directory + "/report.json") ==
          slurp(cfg2.output.directory + "/report.json"));
    CHECK(slurp(cfg.output.directory + "/critical_levels.csv") ==
          slurp(cfg2.output.directory + "/critical_levels.csv"));
}

TEST_CASE("solve command: unreachable tolerance exits 1 with partial history") {
    RunConfig cfg;
    cfg.grid.half_length = 20.0;
    cfg.grid.n_points = 256;
    cfg.solver.tol_dual = 1e-30;
    cfg.solver.max_iterations = 40;
    cfg.solver.restarts = 1;
    cfg.output.directory = temp_dir("sv_fail");
    CHECK(cmd_solve(cfg, 'P') == 1);
    const std::string rep = slurp(cfg.output.directory + "/report.json");
    CHECK(rep.find("partial_history") != std::string::npos);
    CHECK(rep.find("\"energy\"") != std::string::npos);
}

TEST_CASE("solve command: small grid end to end") {
    RunConfig cfg;
    cfg.grid.half_length = 20.0;
    cfg.grid.n_points = 512;
    cfg.solver.restarts = 1;
    cfg.solver.max_sweeps = 40;
    cfg.output.directory = temp_dir("sv_ok");
    CHECK(cmd_solve(cfg, 'P') == 0);
    const std::string sol = slurp(cfg.output.directory + "/solution.csv");
    CHECK(sol.rfind("x,u", 0) == 0);
    CHECK(slurp(cfg.output.directory + "/report.json").find("nehari_level") !=
          std::string::npos);
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_number(2.0) == "2");
}
