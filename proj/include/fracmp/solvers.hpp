// Variational algorithms: ray maximization, Nehari projection and
// constrained minimization, path-deformation mountain pass, and
// Sobolev-preconditioned descent to critical points, together with the
// critical-level threshold experiments.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracmp/energy.hpp"
#include "fracmp/moser.hpp"

namespace fracmp {

struct RayMaxResult {
    double t_star = 0.0;
    double value = 0.0;
    double derivative_residual = 0.0;
};

struct RayMaxOptions {
    double t_init = 1e-3;
    double t_cap = 1e6;
    double rel_width = 1e-10;       // golden-section stopping width
    double derivative_tol = 1e-8;   // residual bound, scaled by max(1, |value|)
};

// sup_{t>0} energy(t phi) by geometric bracketing and golden-section search.
// Raises UnboundedRayError when no interior maximum exists before the
// overflow guard.
RayMaxResult ray_max(const EnergyContext& ctx, const Field& phi, Functional which,
                     const RayMaxOptions& opts = {});

namespace detail {
// Scalar engine behind ray_max, exposed for closed-form tests.
RayMaxResult maximize_ray(const std::function<double(double)>& energy_of_t,
                          const RayMaxOptions& opts);
// Scalar engine behind nehari_scale: the unique positive root of g, which
// must be positive for small arguments.  scale_of(t) sets the tolerance
// scale at the candidate root.
double find_positive_root(const std::function<double(double)>& g,
                          const std::function<double(double)>& scale_of, double g_rel_tol,
                          double t_cap);
}  // namespace detail

struct CriticalLevelRow {
    int k = 0;
    double t_star = 0.0;
    double t_star_sq = 0.0;
    double value = 0.0;
    double threshold = 0.0;
    double margin = 0.0;  // threshold - value; positive = below the threshold
};

struct CriticalLevelReport {
    std::vector<CriticalLevelRow> rows;
    double threshold = 0.0;
    bool verdict = false;  // every margin strictly positive
};

// Ray maxima over normalized Moser traces for each k, compared against the
// critical threshold: pi/2 for the plain functional, M(pi)/2 for the
// Kirchhoff one.  t_star^2 is recorded against pi, not asserted.
CriticalLevelReport critical_level_verdict(const EnergyContext& ctx,
                                           const std::vector<int>& k_list, Functional which,
                                           int workers = 1);

struct NehariOptions {
    double g_rel_tol = 1e-10;
    double t_cap = 1e6;
};

// The scale t* > 0 placing t* u on the Nehari set <E'(t u), u> = 0.
double nehari_scale(const EnergyContext& ctx, const Field& u, Functional which,
                    const NehariOptions& opts = {});

struct SolveOptions {
    double tol_dual = 1e-6;
    double tol_residual = 1e-5;
    int max_iterations = 600;
    int restarts = 2;
    int path_points = 17;
    int max_sweeps = 240;
    double mp_tol_dual = 1e-3;
    bool nehari_projection = true;
    unsigned long long seed = 42;
    // When set, every iterate's (energy, dual_norm) is appended here as it
    // happens, so partial histories survive a convergence failure.
    std::vector<std::pair<double, double>>* history_sink = nullptr;
};

struct SolveReport {
    Field solution;
    double energy = 0.0;
    double dual_norm = 0.0;
    double weak_res = 0.0;
    double mp_level = 0.0;     // c or c*
    double nehari_level = 0.0; // b
    double norm_limit = 0.0;   // rho_0, the working norm of the final iterate
    double min_value = 0.0;
    int iterations = 0;
    bool clipped = false;      // negative undershoot ever clipped
    double ar_proxy_min = 0.0; // min over iterates of the coercivity margin
    double eq41_min = 0.0;     // min over iterates of M/2 - m t / 4
    double claim1_gap = 0.0;   // m(|u|^2)|u|^2 - int f(u) u at the solution
    double max_iterate_norm = 0.0;
    std::vector<std::pair<double, double>> history;  // (energy, dual_norm)
    std::string notes;
};

// Minimize the energy over the Nehari set by projected Sobolev descent from
// several seeds; returns the best level b and its minimizer.
SolveReport nehari_minimize(const EnergyContext& ctx, Functional which,
                            const SolveOptions& opts = {});

// Path-deformation mountain pass from 0 to e (requires energy(e) < 0):
// repeatedly pushes the maximal node along the preconditioned negative
// gradient and re-equidistributes the path in the working norm.
SolveReport mountain_pass(const EnergyContext& ctx, Functional which, const Field& e,
                          const SolveOptions& opts = {});

// Sobolev descent (with optional Nehari re-projection) from a seed to a
// critical point with dual norm below tolerance.  Collapse onto u = 0 raises
// TrivialLimitError.
SolveReport descend_to_solution(const EnergyContext& ctx, const Field& seed, Functional which,
                                const SolveOptions& opts = {});

// Scales u along its ray until the energy turns negative; the mountain-pass
// endpoint.  Raises UnboundedRayError if no sign change occurs before the
// overflow guard.
Field find_negative_endpoint(const EnergyContext& ctx, const Field& u, Functional which);

// Supremal admissible exponent 1/(1 - s) for the higher-integrability bound;
// s is the squared working norm of the weak limit, in [0, 1).
double lions_exponent(double norm_w0_sq);

}  // namespace fracmp
