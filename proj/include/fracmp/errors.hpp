// Error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracmp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field contains NaN/Inf samples.
struct InvalidFieldError : Error {
    using Error::Error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Exponential nonlinearity evaluated past the overflow guard.
struct MagnitudeError : Error {
    double offending_t;
    MagnitudeError(const std::string& msg, double t) : Error(msg), offending_t(t) {}
};

// Quadrature could not reach the requested tolerance.
struct ToleranceError : Error {
    double achieved;
    ToleranceError(const std::string& msg, double est) : Error(msg), achieved(est) {}
};

// Iterative solver stagnated or hit its budget.
struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& msg, double res) : Error(msg), residual(res) {}
};

// Nehari sign condition failed: the model does not have the expected ray shape.
struct GeometryError : Error {
    using Error::Error;
};

// Ray maximization found no interior maximum before the overflow guard.
struct UnboundedRayError : Error {
    using Error::Error;
};

// Descent collapsed to the trivial critical point u = 0.
struct TrivialLimitError : Error {
    using Error::Error;
};

// Mountain-pass level rose over several consecutive sweeps.
struct DeformationStallError : Error {
    using Error::Error;
};

// Grid too coarse to resolve a Moser function.
struct ResolutionError : Error {
    using Error::Error;
};

// Invalid run configuration; carries every violation found.
struct ConfigError : Error {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& e : v) { s += "\n  - "; s += e; }
        return s;
    }
};

}  // namespace fracmp
