#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fracmp/errors.hpp"
#include "fracmp/grid_spectral.hpp"

using namespace fracmp;

namespace {

double sup_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int i = 0; i < a.grid.n_points; ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_CASE("grid invariants") {
    Grid1D g(40.0, 4096);
    CHECK(g.dx * g.n_points == doctest::Approx(2 * g.half_length).epsilon(1e-15));
    // Wavenumbers symmetric except the single Nyquist mode.
    for (int j = 1; j < g.n_points / 2; ++j)
        CHECK(g.wavenumber(j) == -g.wavenumber(g.n_points - j));
    CHECK(g.wavenumber(g.n_points / 2) == -M_PI * (g.n_points / 2) / g.half_length);

    CHECK_THROWS_AS(Grid1D(0.0, 64), DomainError);
    CHECK_THROWS_AS(Grid1D(1.0, 63), DomainError);
}

TEST_CASE("multiplier maps cos(xi x) to |xi| cos(xi x)") {
    Grid1D g(4 * M_PI, 256);
    const double xi = g.wavenumber(4);  // = 1
    CHECK(xi == doctest::Approx(1.0));
    Field u = Field::from_function(g, [xi](double x) { return std::cos(xi * x); });
    Field lu = frac_laplacian(u, 0.5);
    double err = 0.0;
    for (int i = 0; i < g.n_points; ++i)
        err = std::max(err, std::abs(lu.values[i] - xi * u.values[i]));
    CHECK(err < 1e-10 * xi);

    // Odd mode as well: the phase convention must not depend on parity.
    const double xi5 = g.wavenumber(5);
    Field v = Field::from_function(g, [xi5](double x) { return std::sin(xi5 * x); });
    Field lv = frac_laplacian(v, 0.5);
    err = 0.0;
    for (int i = 0; i < g.n_points; ++i)
        err = std::max(err, std::abs(lv.values[i] - xi5 * v.values[i]));
    CHECK(err < 1e-10 * xi5);
}

TEST_CASE("constants are annihilated for both exponents") {
    Grid1D g(10.0, 128);
    Field c = Field::from_function(g, [](double) { return 3.25; });
    CHECK(frac_laplacian(c, 0.5).max_abs() < 1e-13);
    CHECK(frac_laplacian(c, 0.25).max_abs() < 1e-13);
}

TEST_CASE("invalid inputs are rejected") {
    Grid1D g(10.0, 64);
    Field u(g);
    u.values[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(frac_laplacian(u, 0.5), InvalidFieldError);
    Field v(g);
    CHECK_THROWS_AS(frac_laplacian(v, 0.3), DomainError);
}

TEST_CASE("spectral round trip and conjugate symmetry") {
    Grid1D g(25.0, 512);
    std::mt19937_64 rng(7);
    Field u = random_band_limited(g, 200, 1.0, rng);
    Field back = to_physical(to_spectral(u));
    CHECK(sup_diff(u, back) < 1e-12 * u.max_abs());

    SpectralField s = to_spectral(frac_laplacian(u, 0.25));
    for (int j = 1; j < g.n_points; ++j) {
        const auto a = s.coeffs[j];
        const auto b = std::conj(s.coeffs[g.n_points - j]);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("multiplier consistency, self-adjointness, seminorm identity") {
    Grid1D g(20.0, 512);
    std::mt19937_64 rng(11);
    Field u = random_band_limited(g, 60, 1.0, rng);
    Field v = random_band_limited(g, 60, 1.0, rng);

    Field twice = frac_laplacian(frac_laplacian(u, 0.25), 0.25);
    Field once = frac_laplacian(u, 0.5);
    CHECK(sup_diff(twice, once) < 1e-10 * once.max_abs());

    const double a = inner_l2(v, frac_laplacian(u, 0.5));
    const double b = inner_l2(u, frac_laplacian(v, 0.5));
    CHECK(std::abs(a - b) < 1e-10 * std::abs(a));

    const Field q = frac_laplacian(u, 0.25);
    const double lhs = inner_l2(u, once);
    const double rhs = inner_l2(q, q);
    CHECK(std::abs(lhs - rhs) < 1e-10 * rhs);
}

TEST_CASE("integrate: interval measure, oscillation, Gaussian") {
    Grid1D g10(10.0, 256);
    Field one = Field::from_function(g10, [](double) { return 1.0; });
    CHECK(integrate(one) == doctest::Approx(20.0).epsilon(1e-14));

    const double xi = g10.wavenumber(3);
    Field osc = Field::from_function(g10, [xi](double x) { return std::cos(xi * x); });
    CHECK(std::abs(integrate(osc)) < 1e-12);

    Grid1D g40(40.0, 4096);
    Field gauss = Field::from_function(g40, [](double x) { return std::exp(-x * x); });
    CHECK(std::abs(integrate(gauss) - std::sqrt(M_PI)) < 1e-10);
}

TEST_CASE("trigonometric interpolation hits off-grid points") {
    Grid1D g(4 * M_PI, 128);
    const double xi = g.wavenumber(3);
    Field u = Field::from_function(g, [xi](double x) { return std::sin(xi * x) + 0.5; });
    SpectralField s = to_spectral(u);
    for (double x : {0.113, -2.77, 5.001}) {
        CHECK(evaluate(s, x) == doctest::Approx(std::sin(xi * x) + 0.5).epsilon(1e-12));
        CHECK(evaluate_second_derivative(s, x) ==
              doctest::Approx(-xi * xi * std::sin(xi * x)).epsilon(1e-10));
    }
}

TEST_CASE("extension trace map returns the multiplier symbol") {
    CHECK(extension_dtn_check(0.0) == 0.0);
    CHECK(extension_dtn_check(1.0) == 1.0);
    CHECK(extension_dtn_check(3.5) == 3.5);
    CHECK(extension_dtn_check(-2.0) == 2.0);
    // Cross-check against a finite difference of the extension profile.
    const double xi = 1.7, h = 1e-6;
    const double fd = -(std::exp(-xi * h) - std::exp(xi * h)) / (2 * h);
    CHECK(extension_dtn_check(xi) == doctest::Approx(fd).epsilon(1e-9));
}

TEST_CASE("oracle: cosine closed form") {
    Grid1D g(4 * M_PI, 256);
    const double xi = g.wavenumber(4);
    Field u = Field::from_function(g, [xi](double x) { return std::cos(xi * x); });
    CHECK(std::abs(singular_integral_oracle(u, 0.0) - 1.0) < 1e-8);
    CHECK(std::abs(singular_integral_oracle(u, 1.3) - std::cos(1.3)) < 1e-8);
}

TEST_CASE("oracle: constants give zero") {
    Grid1D g(10.0, 128);
    Field one = Field::from_function(g, [](double) { return 1.0; });
    CHECK(std::abs(singular_integral_oracle(one, 0.7)) < 1e-12);
}

TEST_CASE("oracle agrees with the multiplier on a Gaussian") {
    Grid1D g(40.0, 4096);
    Field u = Field::from_function(g, [](double x) { return std::exp(-x * x); });
    Field lu = frac_laplacian(u, 0.5);
    double sup = 0.0;
    for (double v : lu.values) sup = std::max(sup, std::abs(v));

    const int i0 = g.n_points / 2;  // x = 0
    CHECK(std::abs(singular_integral_oracle(u, 0.0) - lu.values[i0]) < 1e-6 * sup);

    double err = 0.0;
    for (int off : {-512, -180, 0, 97, 400}) {
        const int i = i0 + off;
        err = std::max(err, std::abs(singular_integral_oracle(u, g.point(i)) - lu.values[i]));
    }
    CHECK(err < 1e-6 * sup);
}

TEST_CASE("oracle agrees with the multiplier on band-limited fields") {
    Grid1D g(10.0, 256);
    std::mt19937_64 rng(23);
    Field u = random_band_limited(g, 8, 1.0, rng);
    Field lu = frac_laplacian(u, 0.5);
    double sup = 0.0;
    for (double v : lu.values) sup = std::max(sup, std::abs(v));
    for (int i : {32, 96, 128, 200}) {
        const double ora = singular_integral_oracle(u, g.point(i));
        CHECK(std::abs(ora - lu.values[i]) < 1e-8 * sup);
    }
}

TEST_CASE("oracle in analytic mode matches the periodized line operator") {
    Grid1D g(40.0, 4096);
    auto gauss = [](double x) { return std::exp(-x * x); };
    Field u = Field::from_function(g, gauss);
    Field lu = frac_laplacian(u, 0.5);
    OracleOptions opts;
    opts.analytic = gauss;
    const int i0 = g.n_points / 2;
    CHECK(std::abs(singular_integral_oracle(u, 0.0, opts) - lu.values[i0]) < 1e-7);
}
