// Working-space norms, the first eigenvalue of (-Delta)^{1/2} + V, the
// functionals for the plain and Kirchhoff problems, their first variations as
// Sobolev (Riesz) gradients, and strong-form residuals.
//
// The working inner product is <u, v> = int v (-Delta)^{1/2} u + int V u v;
// the extension energy over the half-plane is never discretized, the trace
// identity reduces everything to the line.
#pragma once

#include <optional>
#include <vector>

#include "fracmp/grid_spectral.hpp"
#include "fracmp/model.hpp"

namespace fracmp {

enum class Functional { I, J };

class EnergyContext {
  public:
    EnergyContext(const Grid1D& grid, const ModelSpec& model);

    // Replaces the nonlinearity with a fixed spatial forcing g(x): the
    // growth term becomes g(x) u(x), so the critical point solves
    // (-Delta)^{1/2} u + V u = g (method of manufactured solutions).
    static EnergyContext with_forcing(const Grid1D& grid, const ModelSpec& model,
                                      const Field& forcing);

    const Grid1D& grid() const { return grid_; }
    void require_same_grid(const Field& u) const;  // DomainError on mismatch
    const ModelSpec& model() const { return model_; }
    const std::vector<double>& potential_samples() const { return V_; }
    bool has_forcing() const { return forcing_.has_value(); }
    double potential_floor() const;

    // h(u) pointwise (or the forcing in manufactured mode).
    Field growth(const Field& u) const;
    // H(u) pointwise.
    Field growth_primitive(const Field& u) const;

    Field apply_operator(const Field& u) const;  // (-Delta)^{1/2} u + V u
    Field solve_operator(const Field& rhs, double rel_tol = 1e-10) const;

  private:
    Grid1D grid_;
    ModelSpec model_;
    std::vector<double> V_;
    std::vector<double> xi_abs_;
    double mean_xi_ = 0.0;
    std::optional<Field> forcing_;
};

struct GradientReport {
    Field gradient;      // Riesz representative in the working inner product
    double dual_norm = 0.0;
    double energy = 0.0;
};

struct EigenResult {
    double value = 0.0;
    Field eigenfield;
    int iterations = 0;
    double residual = 0.0;
};

double v_norm_sq(const EnergyContext& ctx, const Field& u);
double inner_v(const EnergyContext& ctx, const Field& u, const Field& v);

// Smallest Rayleigh quotient of (-Delta)^{1/2} + V by inverse power
// iteration; always >= V0.
EigenResult lambda_1(const EnergyContext& ctx, double tol = 1e-11, int max_iter = 200);

double energy_I(const EnergyContext& ctx, const Field& u);
double energy_J(const EnergyContext& ctx, const Field& u);
double energy_of(const EnergyContext& ctx, const Field& u, Functional which);

// Kirchhoff weight in front of the quadratic part: 1 for I, m(|u|^2) for J.
double stiffness_weight(const EnergyContext& ctx, const Field& u, Functional which);

GradientReport gradient(const EnergyContext& ctx, const Field& u, Functional which);

// Sup-norm of kappa ((-Delta)^{1/2} u + V u) - h(u): the strong-form
// residual on the grid.
double weak_residual(const EnergyContext& ctx, const Field& u, Functional which);

}  // namespace fracmp
