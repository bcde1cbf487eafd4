#include "fracmp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fracmp/errors.hpp"

namespace fracmp {

ExperimentConfig::ExperimentConfig() : alpha_list{0.9 * M_PI, 1.2 * M_PI} {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

// Accepts plain decimals plus a "pi" suffix multiplier ("0.9pi").
bool parse_number(const std::string& tok, double& out) {
    std::string t = trim(tok);
    double mult = 1.0;
    if (t.size() > 2 && t.substr(t.size() - 2) == "pi") {
        mult = M_PI;
        t = trim(t.substr(0, t.size() - 2));
        if (t.empty()) {
            out = M_PI;
            return true;
        }
    }
    try {
        size_t pos = 0;
        out = std::stod(t, &pos) * mult;
        return pos == t.size();
    } catch (...) {
        return false;
    }
}

struct KvStore {
    std::map<std::string, std::string> kv;  // "section.key" -> value
    std::vector<std::string>* errors;

    bool has(const std::string& k) const { return kv.count(k) > 0; }

    void number(const std::string& k, double& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        double v;
        if (parse_number(it->second, v))
            out = v;
        else
            errors->push_back(k + ": not a number: '" + it->second + "'");
    }
    void integer(const std::string& k, int& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        try {
            size_t pos = 0;
            const long v = std::stol(trim(it->second), &pos);
            if (pos != trim(it->second).size()) throw std::invalid_argument("");
            out = static_cast<int>(v);
        } catch (...) {
            errors->push_back(k + ": not an integer: '" + it->second + "'");
        }
    }
    void uinteger(const std::string& k, unsigned long long& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        try {
            out = std::stoull(trim(it->second));
        } catch (...) {
            errors->push_back(k + ": not an unsigned integer: '" + it->second + "'");
        }
    }
    void text(const std::string& k, std::string& out) {
        auto it = kv.find(k);
        if (it != kv.end()) out = trim(it->second);
    }
    void int_list(const std::string& k, std::vector<int>& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        std::vector<int> v;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                v.push_back(std::stoi(tok));
            } catch (...) {
                errors->push_back(k + ": bad list entry '" + tok + "'");
                return;
            }
        }
        out = v;
    }
    void number_list(const std::string& k, std::vector<double>& out) {
        auto it = kv.find(k);
        if (it == kv.end()) return;
        std::vector<double> v;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            double d;
            if (!parse_number(tok, d)) {
                errors->push_back(k + ": bad list entry '" + tok + "'");
                return;
            }
            v.push_back(d);
        }
        out = v;
    }
};

void validate_config(const RunConfig& cfg, std::vector<std::string>& errors) {
    if (!(cfg.grid.half_length > 0.0)) errors.push_back("grid.half_length: must be positive");
    if (cfg.grid.n_points <= 0 || cfg.grid.n_points % 2 != 0)
        errors.push_back("grid.n_points: must be even and positive");
    if (cfg.model.potential != "constant" && cfg.model.potential != "polynomial")
        errors.push_back("model.potential: must be 'constant' or 'polynomial'");
    if (cfg.model.mode != "h" && cfg.model.mode != "f")
        errors.push_back("model.mode: must be 'h' or 'f'");
    if (cfg.model.kirchhoff != "none" && cfg.model.kirchhoff != "linear")
        errors.push_back("model.kirchhoff: must be 'none' or 'linear'");
    if (!(cfg.solver.tol_dual > 0.0)) errors.push_back("solver.tol_dual: must be positive");
    if (!(cfg.solver.tol_residual > 0.0)) errors.push_back("solver.tol_residual: must be positive");
    if (cfg.solver.max_iterations < 1) errors.push_back("solver.max_iterations: must be >= 1");
    if (cfg.solver.restarts < 1) errors.push_back("solver.restarts: must be >= 1");
    if (cfg.solver.path_points < 16) errors.push_back("solver.path_points: must be >= 16");
    if (cfg.solver.max_sweeps < 1) errors.push_back("solver.max_sweeps: must be >= 1");
    if (cfg.experiment.k_list.empty()) errors.push_back("experiment.k_list: must not be empty");
    for (int k : cfg.experiment.k_list)
        if (k < 2) errors.push_back("experiment.k_list: entries must be >= 2");
    for (int k : cfg.experiment.mt_k_list)
        if (k < 2) errors.push_back("experiment.mt_k_list: entries must be >= 2");
    for (double a : cfg.experiment.alpha_list)
        if (!(a > 0.0)) errors.push_back("experiment.alpha_list: entries must be positive");
    for (double q : cfg.experiment.q_list)
        if (!(q >= 2.0)) errors.push_back("experiment.q_list: entries must be >= 2");
    if (!(cfg.experiment.moser_half_length >= 1.0))
        errors.push_back("experiment.moser_half_length: must be >= 1");
    if (cfg.experiment.moser_n_points != 0 &&
        (cfg.experiment.moser_n_points <= 0 || cfg.experiment.moser_n_points % 2 != 0))
        errors.push_back("experiment.moser_n_points: must be 0 (auto) or even and positive");
    if (cfg.output.workers < 1) errors.push_back("output.workers: must be >= 1");
    if (cfg.output.directory.empty()) errors.push_back("output.directory: must not be empty");

    // Model-level structural checks join the same aggregated report.
    try {
        cfg.build_model();
    } catch (const ConfigError& e) {
        errors.insert(errors.end(), e.violations.begin(), e.violations.end());
    }
}

}  // namespace

ModelSpec RunConfig::build_model() const {
    ModelSpec m;
    m.name = "config";
    m.potential.kind =
        model.potential == "constant" ? PotentialKind::Constant : PotentialKind::Polynomial;
    m.potential.v0 = model.v0;
    m.potential.exponent = model.v_exponent;
    m.nonlinearity.mode = model.mode == "f" ? NonlinearityMode::F : NonlinearityMode::H;
    m.nonlinearity.p = model.p;
    if (model.beta > 0.0) m.nonlinearity.beta = model.beta;
    m.nonlinearity.mu = model.mu;
    m.nonlinearity.theta = model.theta;
    m.nonlinearity.t0 = model.t0;
    if (model.kirchhoff == "linear")
        m.kirchhoff = KirchhoffSpec{model.m0, model.slope, 0.0, 0.0, model.sigma};
    m.validate();
    return m;
}

RunConfig parse_config(const std::string& text) {
    std::vector<std::string> errors;
    KvStore store;
    store.errors = &errors;

    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        if (section.empty() || key.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": key outside a section");
            continue;
        }
        store.kv[section + "." + key] = trim(line.substr(eq + 1));
    }

    RunConfig cfg;
    store.number("grid.half_length", cfg.grid.half_length);
    store.integer("grid.n_points", cfg.grid.n_points);

    store.text("model.potential", cfg.model.potential);
    store.number("model.v0", cfg.model.v0);
    store.number("model.v_exponent", cfg.model.v_exponent);
    store.text("model.mode", cfg.model.mode);
    store.number("model.p", cfg.model.p);
    store.number("model.beta", cfg.model.beta);
    store.number("model.mu", cfg.model.mu);
    store.number("model.theta", cfg.model.theta);
    store.number("model.t0", cfg.model.t0);
    store.text("model.kirchhoff", cfg.model.kirchhoff);
    store.number("model.m0", cfg.model.m0);
    store.number("model.slope", cfg.model.slope);
    store.number("model.sigma", cfg.model.sigma);

    store.number("solver.tol_dual", cfg.solver.tol_dual);
    store.number("solver.tol_residual", cfg.solver.tol_residual);
    store.integer("solver.max_iterations", cfg.solver.max_iterations);
    store.integer("solver.restarts", cfg.solver.restarts);
    store.integer("solver.path_points", cfg.solver.path_points);
    store.integer("solver.max_sweeps", cfg.solver.max_sweeps);
    store.number("solver.mp_tol_dual", cfg.solver.mp_tol_dual);

    store.int_list("experiment.k_list", cfg.experiment.k_list);
    store.int_list("experiment.mt_k_list", cfg.experiment.mt_k_list);
    store.number_list("experiment.alpha_list", cfg.experiment.alpha_list);
    store.number_list("experiment.q_list", cfg.experiment.q_list);
    store.number("experiment.moser_half_length", cfg.experiment.moser_half_length);
    store.integer("experiment.moser_n_points", cfg.experiment.moser_n_points);

    store.text("output.directory", cfg.output.directory);
    store.uinteger("output.seed", cfg.output.seed);
    store.integer("output.workers", cfg.output.workers);

    validate_config(cfg, errors);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream o;
    auto num = format_double;
    o << "[grid]\n";
    o << "half_length = " << num(cfg.grid.half_length) << "\n";
    o << "n_points = " << cfg.grid.n_points << "\n\n";
    o << "[model]\n";
    o << "potential = " << cfg.model.potential << "\n";
    o << "v0 = " << num(cfg.model.v0) << "\n";
    o << "v_exponent = " << num(cfg.model.v_exponent) << "\n";
    o << "mode = " << cfg.model.mode << "\n";
    o << "p = " << num(cfg.model.p) << "\n";
    o << "beta = " << num(cfg.model.beta) << "\n";
    o << "mu = " << num(cfg.model.mu) << "\n";
    o << "theta = " << num(cfg.model.theta) << "\n";
    o << "t0 = " << num(cfg.model.t0) << "\n";
    o << "kirchhoff = " << cfg.model.kirchhoff << "\n";
    o << "m0 = " << num(cfg.model.m0) << "\n";
    o << "slope = " << num(cfg.model.slope) << "\n";
    o << "sigma = " << num(cfg.model.sigma) << "\n\n";
    o << "[solver]\n";
    o << "tol_dual = " << num(cfg.solver.tol_dual) << "\n";
    o << "tol_residual = " << num(cfg.solver.tol_residual) << "\n";
    o << "max_iterations = " << cfg.solver.max_iterations << "\n";
    o << "restarts = " << cfg.solver.restarts << "\n";
    o << "path_points = " << cfg.solver.path_points << "\n";
    o << "max_sweeps = " << cfg.solver.max_sweeps << "\n";
    o << "mp_tol_dual = " << num(cfg.solver.mp_tol_dual) << "\n\n";
    o << "[experiment]\n";
    auto list_int = [&o](const char* key, const std::vector<int>& v) {
        o << key << " = ";
        for (size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
        o << "\n";
    };
    list_int("k_list", cfg.experiment.k_list);
    list_int("mt_k_list", cfg.experiment.mt_k_list);
    o << "alpha_list = ";
    for (size_t i = 0; i < cfg.experiment.alpha_list.size(); ++i)
        o << (i ? "," : "") << num(cfg.experiment.alpha_list[i]);
    o << "\n";
    o << "q_list = ";
    for (size_t i = 0; i < cfg.experiment.q_list.size(); ++i)
        o << (i ? "," : "") << num(cfg.experiment.q_list[i]);
    o << "\n";
    o << "moser_half_length = " << num(cfg.experiment.moser_half_length) << "\n";
    o << "moser_n_points = " << cfg.experiment.moser_n_points << "\n\n";
    o << "[output]\n";
    o << "directory = " << cfg.output.directory << "\n";
    o << "seed = " << cfg.output.seed << "\n";
    o << "workers = " << cfg.output.workers << "\n";
    return o.str();
}

int moser_grid_points(const ExperimentConfig& exp, int k_max) {
    if (exp.moser_n_points > 0) return exp.moser_n_points;
    const double dx_needed = 1.0 / (4.0 * k_max);
    int n = 2;
    while (2.0 * exp.moser_half_length / n > dx_needed) n *= 2;
    return n;
}

}  // namespace fracmp
