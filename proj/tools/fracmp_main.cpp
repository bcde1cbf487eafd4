// fracmp: pseudo-spectral toolkit for half-Laplacian problems with critical
// exponential nonlinearities.
//
// Subcommands: operator-check, validate-model, critical-level, solve.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "fracmp/commands.hpp"
#include "fracmp/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"half-Laplacian critical-exponent toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int workers = 0;
    std::string problem = "P";

    app.add_option("--config", config_path, "configuration file (defaults used when omitted)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--seed", seed, "random seed (overrides the config)");
    app.add_option("--workers", workers, "worker threads for sweeps (overrides the config)");

    auto* op = app.add_subcommand("operator-check", "cross-validate the spectral operator");
    auto* vm = app.add_subcommand("validate-model", "check the structural model assumptions");
    auto* cl = app.add_subcommand("critical-level", "Moser-ray thresholds and related sweeps");
    auto* sv = app.add_subcommand("solve", "compute a ground state");
    sv->add_option("--problem", problem, "P (plain) or Q (Kirchhoff)")
        ->check(CLI::IsMember({"P", "Q"}));
    for (auto* sub : {op, vm, cl, sv}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        fracmp::RunConfig cfg;
        if (!config_path.empty()) cfg = fracmp::load_config(config_path);
        if (!out_dir.empty()) cfg.output.directory = out_dir;
        if (seed >= 0) cfg.output.seed = static_cast<unsigned long long>(seed);
        if (workers > 0) cfg.output.workers = workers;

        if (op->parsed()) return fracmp::cmd_operator_check(cfg);
        if (vm->parsed()) return fracmp::cmd_validate_model(cfg);
        if (cl->parsed()) return fracmp::cmd_critical_level(cfg);
        if (sv->parsed()) return fracmp::cmd_solve(cfg, problem[0]);
    } catch (const fracmp::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const fracmp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
