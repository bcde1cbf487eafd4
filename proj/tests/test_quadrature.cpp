#include <doctest.h>

#include <cmath>

#include "fracmp/quadrature.hpp"

using namespace fracmp;

TEST_CASE("adaptive quadrature on smooth integrands") {
    auto q = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-14, 1e-14);
    CHECK(q.converged);
    CHECK(std::abs(q.value - 2.0) < 1e-13);

    auto g = integrate_adaptive([](double x) { return std::exp(-x * x); }, -30.0, 30.0, 1e-14,
                                1e-14);
    CHECK(std::abs(g.value - std::sqrt(M_PI)) < 1e-13);
}

TEST_CASE("adaptive quadrature resolves an integrable peak") {
    auto q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0,
                                1e-10, 1e-12, 20000);
    CHECK(q.converged);
    CHECK(std::abs(q.value - 2.0) < 1e-5);
}

TEST_CASE("single panel is exact for the cubic-exponential primitive") {
    // int_0^1 s^3 e^{s^2} ds = [ (s^2-1) e^{s^2} / 2 ]_0^1 = 1/2.
    auto p = gk15_panel([](double s) { return s * s * s * std::exp(s * s); }, 0.0, 1.0);
    CHECK(std::abs(p.value - 0.5) < 1e-13);
    CHECK(p.error < 1e-8);
}
