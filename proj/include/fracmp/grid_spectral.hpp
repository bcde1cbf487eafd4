// Periodic truncation of the line, spectral transforms, and the fractional
// Laplacian as a Fourier multiplier with a singular-integral oracle.
//
// The domain is [-L, L) sampled at N equispaced points; wavenumbers are
// xi_j = (pi/L) j for j in {-N/2, ..., N/2-1}.  (-Delta)^s acts as the
// multiplier |xi|^{2s}; the zero mode is annihilated (seminorm convention).
#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace fracmp {

struct Grid1D {
    double half_length = 0.0;  // L
    int n_points = 0;          // N, even
    double dx = 0.0;           // 2L/N

    Grid1D() = default;
    Grid1D(double L, int N);

    double point(int i) const { return -half_length + i * dx; }
    // Signed wavenumber for storage index i in [0, N): DFT layout, so
    // frequencies 0..N/2-1 then -N/2..-1.
    double wavenumber(int i) const;
    std::vector<double> points() const;

    bool operator==(const Grid1D& o) const {
        return half_length == o.half_length && n_points == o.n_points;
    }
};

struct Field {
    Grid1D grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid1D& g) : grid(g), values(g.n_points, 0.0) {}
    Field(const Grid1D& g, std::vector<double> v);

    static Field from_function(const Grid1D& g, const std::function<double(double)>& f);

    double max_abs() const;
    double min_value() const;
};

struct SpectralField {
    Grid1D grid;
    std::vector<std::complex<double>> coeffs;  // N coefficients, conjugate-symmetric
};

// Throws InvalidFieldError if any sample is NaN/Inf.
void require_finite(const Field& u, const char* what);

SpectralField to_spectral(const Field& u);
Field to_physical(const SpectralField& s);

// (-Delta)^s u for s in {1/4, 1/2} via the multiplier |xi|^{2s}.
Field frac_laplacian(const Field& u, double s);

// dx * sum of samples; spectrally accurate for smooth periodic integrands.
double integrate(const Field& u);
double inner_l2(const Field& u, const Field& v);

// Trigonometric interpolation of the band-limited representative at any x.
double evaluate(const SpectralField& s, double x);
// Second derivative of the interpolant at x.
double evaluate_second_derivative(const SpectralField& s, double x);

// Dirichlet-to-Neumann value of the closed-form harmonic extension
// e^{-|xi| y} cos(xi x): returns -d_y w(x,0) / w(x,0) = |xi|.
double extension_dtn_check(double xi);

struct OracleOptions {
    double abs_tol = 1e-9;
    // When set, the principal-value integral is taken against this function
    // on the whole line instead of the band-limited interpolant of the
    // samples; used for resolution studies.
    std::function<double(double)> analytic;
    double y_max = 0.0;  // analytic mode only; 0 = automatic
};

// (-Delta)^{1/2} u at x, evaluated as
//   (1/(2 pi)) PV int (2u(x) - u(x+y) - u(x-y)) / y^2 dy,
// the normalization that maps cos(xi x) to |xi| cos(xi x).  The integrand is
// replaced by its Taylor value -u''(x) for |y| < delta = 1e-3 dx, and the
// periodic images of the interpolant are folded into an exact lattice kernel
// so the quadrature covers one period.  Throws ToleranceError when the
// quadrature's error estimate exceeds the requested tolerance.
double singular_integral_oracle(const Field& u, double x, const OracleOptions& opts = {});

Field random_band_limited(const Grid1D& g, int max_mode, double amplitude,
                          std::mt19937_64& rng);

}  // namespace fracmp
