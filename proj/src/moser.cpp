#include "fracmp/moser.hpp"

#include <cmath>

#include "fracmp/errors.hpp"
#include "fracmp/model.hpp"
#include "fracmp/quadrature.hpp"

namespace fracmp {

MoserEnergy2D moser_energy_2d(int k) {
    if (k < 2) throw DomainError("moser_energy_2d: k must be at least 2");
    const double lk = std::log(double(k));
    MoserEnergy2D out;
    // |grad psi| = (1/sqrt(2 pi)) / (r sqrt(log k)) on the annulus; the
    // radial integral of 2 pi r |grad psi|^2 is int 1/(r log k) dr.
    auto grad_integrand = [lk](double r) { return 1.0 / (r * lk); };
    out.dirichlet_full_plane = integrate_adaptive(grad_integrand, 1.0 / k, 1.0, 1e-14, 1e-13).value;
    out.dirichlet_half_plane = 0.5 * out.dirichlet_full_plane;
    // Plateau disk contributes (log k / 2 pi) * pi r^2; annulus by quadrature.
    const double plateau = lk / (2.0 * k * double(k));
    auto mass_integrand = [lk](double r) {
        const double l = std::log(1.0 / r);
        return l * l / lk * r;
    };
    out.l2_mass = plateau + integrate_adaptive(mass_integrand, 1.0 / k, 1.0, 1e-14, 1e-13).value;
    return out;
}

MoserFamily::MoserFamily(int k, std::function<double(double)> V)
    : k_(k), V_(std::move(V)) {
    if (k < 2) throw DomainError("MoserFamily: k must be at least 2");
    log_k_ = std::log(double(k));
    // Trace term int_{-1}^{1} V(x) psi(x,0)^2 dx, split at the plateau seam.
    auto integrand = [this](double x) {
        const double t = psi(x, 0.0);
        return V_(x) * t * t;
    };
    const double inner =
        integrate_adaptive(integrand, -1.0 / k, 1.0 / k, 1e-13, 1e-12).value;
    const double left = integrate_adaptive(integrand, -1.0, -1.0 / k, 1e-13, 1e-12).value;
    const double right = integrate_adaptive(integrand, 1.0 / k, 1.0, 1e-13, 1e-12).value;
    norm_sq_ = 0.5 + inner + left + right;
}

double MoserFamily::psi(double x, double y) const {
    const double r = std::sqrt(x * x + y * y);
    const double c = 1.0 / std::sqrt(2.0 * M_PI);
    if (r >= 1.0) return 0.0;
    if (r <= 1.0 / k_) return c * std::sqrt(log_k_);
    return c * std::log(1.0 / r) / std::sqrt(log_k_);
}

double MoserFamily::center_sq() const { return (log_k_ / (2.0 * M_PI)) / norm_sq_; }

Field MoserFamily::trace_field(const Grid1D& grid) const {
    if (grid.dx > 1.0 / (4.0 * k_) + 1e-15)
        throw ResolutionError("MoserFamily: grid spacing exceeds 1/(4k); refine the grid");
    if (grid.half_length < 1.0)
        throw ResolutionError("MoserFamily: domain does not contain the unit-disk support");
    return Field::from_function(grid, [this](double x) { return psi(x, 0.0); });
}

Field MoserFamily::normalized_trace_field(const Grid1D& grid) const {
    Field u = trace_field(grid);
    const double inv = 1.0 / std::sqrt(norm_sq_);
    for (auto& v : u.values) v *= inv;
    return u;
}

double mt_functional(const Field& u, double alpha) {
    require_finite(u, "mt_functional");
    if (!(alpha > 0.0)) throw DomainError("mt_functional: alpha must be positive");
    const double m = u.max_abs();
    if (alpha * m * m > kOverflowGuardTSq)
        throw MagnitudeError("mt_functional: alpha u^2 past overflow guard", m);
    double s = 0.0;
    for (double v : u.values) s += std::expm1(alpha * v * v);
    return s * u.grid.dx;
}

double ozawa_ratio(const Field& u, double q) {
    require_finite(u, "ozawa_ratio");
    if (q < 2.0) throw DomainError("ozawa_ratio: q must be at least 2");
    const double l2 = std::sqrt(inner_l2(u, u));
    if (l2 == 0.0) throw DomainError("ozawa_ratio: zero field");
    double lq = 0.0;
    for (double v : u.values) lq += std::pow(std::abs(v), q);
    lq = std::pow(lq * u.grid.dx, 1.0 / q);
    const Field quarter = frac_laplacian(u, 0.25);
    const double semi = std::sqrt(inner_l2(quarter, quarter));
    return lq / (std::sqrt(q) * std::pow(semi, 1.0 - 2.0 / q) * std::pow(l2, 2.0 / q));
}

}  // namespace fracmp
