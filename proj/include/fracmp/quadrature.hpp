// Adaptive Gauss-Kronrod (G7,K15) quadrature.
#pragma once

#include <cmath>
#include <functional>

namespace fracmp {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    int evaluations = 0;
    bool converged = true;
};

// Integrate f over [a, b] until the absolute error estimate drops below
// max(abs_tol, rel_tol * |value|). Never throws on non-convergence; the
// caller inspects `converged` and decides.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-12,
                              int max_intervals = 4000);

namespace detail {

inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

}  // namespace detail

// Single G7,K15 panel without type erasure; hot paths try this first and
// fall back to integrate_adaptive when the embedded estimate is too large.
template <class F>
QuadResult gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = detail::kGk15Weights[7] * fc;
    double gauss = detail::kG7Weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * detail::kGk15Nodes[i];
        const double fsum = f(c - x) + f(c + x);
        kron += detail::kGk15Weights[i] * fsum;
        if (i % 2 == 1) gauss += detail::kG7Weights[i / 2] * fsum;
    }
    QuadResult out;
    out.value = kron * h;
    out.error = std::abs((kron - gauss) * h);
    out.evaluations = 15;
    out.converged = true;
    return out;
}

}  // namespace fracmp
