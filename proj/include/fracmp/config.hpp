// Run configuration: flat, human-editable key-value sections with a
// canonical serialization (parse of serialize is the identity).
#pragma once

#include <string>
#include <vector>

#include "fracmp/model.hpp"

namespace fracmp {

struct GridConfig {
    double half_length = 40.0;
    int n_points = 4096;
};

struct ModelConfig {
    std::string potential = "polynomial";  // constant | polynomial
    double v0 = 1.0;
    double v_exponent = 2.0;
    std::string mode = "h";  // h | f
    double p = 3.0;
    double beta = 0.0;  // 0 = absent
    double mu = 4.0;    // 0 = p + 1
    double theta = 0.0; // 0 = p
    double t0 = 1.0;
    std::string kirchhoff = "none";  // none | linear
    double m0 = 1.0;
    double slope = 1.0;
    double sigma = 1.0;
};

struct SolverConfig {
    double tol_dual = 1e-6;
    double tol_residual = 1e-5;
    int max_iterations = 600;
    int restarts = 2;
    int path_points = 17;
    int max_sweeps = 240;
    double mp_tol_dual = 1e-3;
};

struct ExperimentConfig {
    std::vector<int> k_list = {8, 64, 512};
    std::vector<int> mt_k_list = {4, 16, 64, 256, 1024, 4096};
    std::vector<double> alpha_list;  // defaults to {0.9 pi, 1.2 pi}
    std::vector<double> q_list = {2, 4, 8, 16, 32};
    double moser_half_length = 4.0;
    int moser_n_points = 0;  // 0 = smallest power of two resolving max k

    ExperimentConfig();
};

struct OutputConfig {
    std::string directory = "out";
    unsigned long long seed = 42;
    int workers = 1;
};

struct RunConfig {
    GridConfig grid;
    ModelConfig model;
    SolverConfig solver;
    ExperimentConfig experiment;
    OutputConfig output;

    ModelSpec build_model() const;  // throws ConfigError on invalid model keys
};

// Throws ConfigError carrying every violation found.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Grid for Moser-trace experiments: dx <= 1/(4 k_max).
int moser_grid_points(const ExperimentConfig& exp, int k_max);

}  // namespace fracmp
