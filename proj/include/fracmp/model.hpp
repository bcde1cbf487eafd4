// Catalog of potentials V, exponential-growth nonlinearities, Kirchhoff
// functions, their primitives, and numeric validators for the structural
// assumptions the variational machinery relies on.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fracmp {

enum class PotentialKind { Constant, Polynomial };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::Polynomial;
    double v0 = 1.0;        // V(x) >= v0 > 0 everywhere
    double exponent = 2.0;  // V(x) = |x|^exponent + v0 for the polynomial kind

    double operator()(double x) const;
    void validate(std::vector<std::string>& out) const;
};

enum class NonlinearityMode { H, F };  // superlinear-at-0 vs cubic-at-0 regime

// Prototype family t^p e^{t^2}, optionally t^p (e^{t^beta} - 1) e^{t^2}.
// The growth function vanishes for t <= 0.  Evaluation past t^2 > 700
// raises MagnitudeError instead of returning Inf.
struct NonlinearitySpec {
    NonlinearityMode mode = NonlinearityMode::H;
    double p = 3.0;
    std::optional<double> beta;  // in (0, 2) when present
    double mu = 0.0;             // Ambrosetti-Rabinowitz exponent; 0 = p + 1
    double theta = 0.0;          // f-mode monotonicity exponent; 0 = p
    double t0 = 1.0;             // threshold for the primitive-domination bounds
    double m_h = 0.0;            // H <= m_h * h on [t0, inf); 0 = determined by validator
    double k0 = 0.0;             // F <= k0 * f on [t0, inf); 0 = determined by validator

    double ar_exponent() const { return mu > 0.0 ? mu : p + 1.0; }
    double theta_exponent() const { return theta > 0.0 ? theta : p; }
    void validate(std::vector<std::string>& out) const;
};

// m(t) = m0 + a t with the generalized bound m(t) <= a1 + a2 t^sigma.
struct KirchhoffSpec {
    double m0 = 1.0;
    double a = 0.0;
    double a1 = 0.0;  // 0 = m0
    double a2 = 0.0;  // 0 = max(a, 1)
    double sigma = 1.0;

    void validate(std::vector<std::string>& out) const;
};

struct ModelSpec {
    std::string name;
    PotentialSpec potential;
    NonlinearitySpec nonlinearity;
    std::optional<KirchhoffSpec> kirchhoff;

    void validate() const;  // throws ConfigError with every violation
};

// Growth function and its primitive.  eval_H integrates h from 0 to t by
// adaptive quadrature; H(t) = 0 for t <= 0.
double eval_h(const NonlinearitySpec& spec, double t);
double eval_H(const NonlinearitySpec& spec, double t);

// Kirchhoff function and its closed-form primitive; t < 0 is a domain error.
double eval_m(const KirchhoffSpec& spec, double t);
double eval_M(const KirchhoffSpec& spec, double t);

inline constexpr double kOverflowGuardTSq = 700.0;

struct ConditionCheck {
    std::string name;
    bool pass = true;
    double worst_margin = 0.0;  // signed, normalized; negative = violated
    double location = 0.0;      // argument at which the worst margin occurred
    std::string note;
};

struct ValidationReport {
    std::vector<ConditionCheck> checks;
    double m_h_determined = 0.0;
    double k0_determined = 0.0;
    double lambda1_used = 0.0;
    double t_max = 0.0;

    bool all_pass() const;
    const ConditionCheck* find(const std::string& name) const;
};

struct ValidationOptions {
    double t_max = 12.0;
    int points_per_decade = 48;
    // Bound used for the small-argument condition 2H(u)/u^2 < lambda_1;
    // defaults to v0, the guaranteed lower bound for lambda_1.
    std::optional<double> lambda1;
};

// Numeric check of every structural assumption the model claims: positivity
// and growth of h/f, Ambrosetti-Rabinowitz, primitive domination, Kirchhoff
// monotonicity and superadditivity, and the increasing-difference condition
// s f(s) - 4 F(s).  Limit statements are verified as monotonicity over the
// top decade of the sample grid.  Failures are reported, never thrown.
ValidationReport validate_assumptions(const ModelSpec& model, const ValidationOptions& opts = {});

// Shipped models: every entry passes validate_assumptions.
std::vector<ModelSpec> catalog();
ModelSpec catalog_model(const std::string& name);

}  // namespace fracmp
