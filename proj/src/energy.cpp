#include "fracmp/energy.hpp"

#include <algorithm>
#include <cmath>

#include "fracmp/errors.hpp"

namespace fracmp {

EnergyContext::EnergyContext(const Grid1D& grid, const ModelSpec& model)
    : grid_(grid), model_(model) {
    model_.validate();
    V_.resize(grid.n_points);
    xi_abs_.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        V_[i] = model_.potential(grid.point(i));
        xi_abs_[i] = std::abs(grid.wavenumber(i));
        mean_xi_ += xi_abs_[i];
    }
    mean_xi_ /= grid.n_points;
}

EnergyContext EnergyContext::with_forcing(const Grid1D& grid, const ModelSpec& model,
                                          const Field& forcing) {
    require_finite(forcing, "with_forcing");
    EnergyContext ctx(grid, model);
    ctx.forcing_ = forcing;
    return ctx;
}

double EnergyContext::potential_floor() const { return model_.potential.v0; }

void EnergyContext::require_same_grid(const Field& u) const {
    if (!(u.grid == grid_))
        throw DomainError("EnergyContext: field lives on a different grid");
}

Field EnergyContext::growth(const Field& u) const {
    require_same_grid(u);
    if (forcing_) return *forcing_;
    Field out(grid_);
    for (int i = 0; i < grid_.n_points; ++i) out.values[i] = eval_h(model_.nonlinearity, u.values[i]);
    return out;
}

Field EnergyContext::growth_primitive(const Field& u) const {
    require_same_grid(u);
    Field out(grid_);
    if (forcing_) {
        for (int i = 0; i < grid_.n_points; ++i)
            out.values[i] = forcing_->values[i] * u.values[i];
        return out;
    }
    for (int i = 0; i < grid_.n_points; ++i) out.values[i] = eval_H(model_.nonlinearity, u.values[i]);
    return out;
}

Field EnergyContext::apply_operator(const Field& u) const {
    require_same_grid(u);
    Field out = frac_laplacian(u, 0.5);
    for (int i = 0; i < grid_.n_points; ++i) out.values[i] += V_[i] * u.values[i];
    return out;
}

// Conjugate gradients with a diagonal (Jacobi) preconditioner 1/(V + xi-bar);
// the potential dominates over most of the domain, so this outperforms a
// spectral shift for confining V.
Field EnergyContext::solve_operator(const Field& rhs, double rel_tol) const {
    require_finite(rhs, "solve_operator");
    const int n = grid_.n_points;
    std::vector<double> D(n);
    for (int i = 0; i < n; ++i) D[i] = 1.0 / (V_[i] + mean_xi_);

    Field u(grid_);
    Field r = rhs;
    Field z(grid_);
    for (int i = 0; i < n; ++i) z.values[i] = D[i] * r.values[i];
    Field p = z;
    double rz = 0.0, nb = 0.0;
    for (int i = 0; i < n; ++i) {
        rz += r.values[i] * z.values[i];
        nb += rhs.values[i] * rhs.values[i];
    }
    nb = std::sqrt(nb);
    if (nb == 0.0) return u;

    const int max_iter = 40 * static_cast<int>(std::sqrt(double(n))) + 2000;
    for (int it = 0; it < max_iter; ++it) {
        Field Ap = apply_operator(p);
        double pAp = 0.0;
        for (int i = 0; i < n; ++i) pAp += p.values[i] * Ap.values[i];
        const double alpha = rz / pAp;
        double rn = 0.0;
        for (int i = 0; i < n; ++i) {
            u.values[i] += alpha * p.values[i];
            r.values[i] -= alpha * Ap.values[i];
            rn += r.values[i] * r.values[i];
        }
        if (std::sqrt(rn) <= rel_tol * nb) return u;
        double rz2 = 0.0;
        for (int i = 0; i < n; ++i) {
            z.values[i] = D[i] * r.values[i];
            rz2 += r.values[i] * z.values[i];
        }
        const double beta = rz2 / rz;
        rz = rz2;
        for (int i = 0; i < n; ++i) p.values[i] = z.values[i] + beta * p.values[i];
    }
    double rn = 0.0;
    for (int i = 0; i < n; ++i) rn += r.values[i] * r.values[i];
    throw ConvergenceError("solve_operator: conjugate gradients stalled", std::sqrt(rn) / nb);
}

double v_norm_sq(const EnergyContext& ctx, const Field& u) {
    ctx.require_same_grid(u);
    require_finite(u, "v_norm_sq");
    const SpectralField s = to_spectral(u);
    const Grid1D& g = ctx.grid();
    double semi = 0.0;
    for (int i = 0; i < g.n_points; ++i)
        semi += std::abs(g.wavenumber(i)) * std::norm(s.coeffs[i]);
    semi *= 2.0 * g.half_length;
    double pot = 0.0;
    const auto& V = ctx.potential_samples();
    for (int i = 0; i < g.n_points; ++i) pot += V[i] * u.values[i] * u.values[i];
    pot *= g.dx;
    return semi + pot;
}

double inner_v(const EnergyContext& ctx, const Field& u, const Field& v) {
    ctx.require_same_grid(u);
    ctx.require_same_grid(v);
    const SpectralField su = to_spectral(u);
    const SpectralField sv = to_spectral(v);
    const Grid1D& g = ctx.grid();
    double semi = 0.0;
    for (int i = 0; i < g.n_points; ++i)
        semi += std::abs(g.wavenumber(i)) *
                (su.coeffs[i].real() * sv.coeffs[i].real() +
                 su.coeffs[i].imag() * sv.coeffs[i].imag());
    semi *= 2.0 * g.half_length;
    double pot = 0.0;
    const auto& V = ctx.potential_samples();
    for (int i = 0; i < g.n_points; ++i) pot += V[i] * u.values[i] * v.values[i];
    pot *= g.dx;
    return semi + pot;
}

EigenResult lambda_1(const EnergyContext& ctx, double tol, int max_iter) {
    const Grid1D& g = ctx.grid();
    // Deterministic positive start: Gaussian bump plus a floor.
    Field x = Field::from_function(g, [](double t) { return std::exp(-t * t) + 0.05; });
    double lam_prev = 0.0;
    EigenResult out;
    for (int it = 0; it < max_iter; ++it) {
        Field y = ctx.solve_operator(x, 1e-12);
        const double ny = std::sqrt(inner_l2(y, y));
        for (auto& v : y.values) v /= ny;
        Field Ay = ctx.apply_operator(y);
        const double lam = inner_l2(y, Ay) / inner_l2(y, y);
        double res = 0.0;
        for (int i = 0; i < g.n_points; ++i) {
            const double d = Ay.values[i] - lam * y.values[i];
            res += d * d;
        }
        res = std::sqrt(res * g.dx);
        x = y;
        out.value = lam;
        out.iterations = it + 1;
        out.residual = res;
        if (it > 0 && std::abs(lam - lam_prev) <= tol * std::abs(lam) && res <= 100 * tol * lam) {
            out.eigenfield = y;
            // The Rayleigh quotient can never drop below the potential floor.
            if (out.value < ctx.potential_floor() - 1e-8 * std::max(1.0, ctx.potential_floor()))
                throw ConvergenceError("lambda_1: value below the potential floor", res);
            return out;
        }
        lam_prev = lam;
    }
    throw ConvergenceError("lambda_1: inverse power iteration stagnated", out.residual);
}

namespace {

void check_overflow(const EnergyContext& ctx, const Field& u) {
    if (ctx.has_forcing()) return;
    const double m = u.max_abs();
    if (m * m > kOverflowGuardTSq)
        throw MagnitudeError("energy: field amplitude past overflow guard", m);
}

}  // namespace

double energy_I(const EnergyContext& ctx, const Field& u) {
    check_overflow(ctx, u);
    return 0.5 * v_norm_sq(ctx, u) - integrate(ctx.growth_primitive(u));
}

double energy_J(const EnergyContext& ctx, const Field& u) {
    if (!ctx.model().kirchhoff) throw DomainError("energy_J: model has no Kirchhoff term");
    check_overflow(ctx, u);
    const double s = v_norm_sq(ctx, u);
    return 0.5 * eval_M(*ctx.model().kirchhoff, s) - integrate(ctx.growth_primitive(u));
}

double energy_of(const EnergyContext& ctx, const Field& u, Functional which) {
    return which == Functional::I ? energy_I(ctx, u) : energy_J(ctx, u);
}

double stiffness_weight(const EnergyContext& ctx, const Field& u, Functional which) {
    if (which == Functional::I) return 1.0;
    if (!ctx.model().kirchhoff) throw DomainError("stiffness_weight: model has no Kirchhoff term");
    return eval_m(*ctx.model().kirchhoff, v_norm_sq(ctx, u));
}

GradientReport gradient(const EnergyContext& ctx, const Field& u, Functional which) {
    require_finite(u, "gradient");
    check_overflow(ctx, u);
    const double kappa = stiffness_weight(ctx, u, which);
    // A g = kappa A u - h(u)  =>  g = kappa u - A^{-1} h(u).
    Field hu = ctx.growth(u);
    Field corr = ctx.solve_operator(hu);
    GradientReport rep;
    rep.gradient = Field(ctx.grid());
    for (int i = 0; i < ctx.grid().n_points; ++i)
        rep.gradient.values[i] = kappa * u.values[i] - corr.values[i];
    rep.dual_norm = std::sqrt(std::max(0.0, inner_v(ctx, rep.gradient, rep.gradient)));
    rep.energy = energy_of(ctx, u, which);
    return rep;
}

double weak_residual(const EnergyContext& ctx, const Field& u, Functional which) {
    require_finite(u, "weak_residual");
    const double kappa = stiffness_weight(ctx, u, which);
    Field Au = ctx.apply_operator(u);
    Field hu = ctx.growth(u);
    double sup = 0.0;
    for (int i = 0; i < ctx.grid().n_points; ++i)
        sup = std::max(sup, std::abs(kappa * Au.values[i] - hu.values[i]));
    return sup;
}

}  // namespace fracmp
