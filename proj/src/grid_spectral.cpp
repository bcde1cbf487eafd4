#include "fracmp/grid_spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fracmp/errors.hpp"

namespace fracmp {

Grid1D::Grid1D(double L, int N) : half_length(L), n_points(N) {
    if (!(L > 0.0)) throw DomainError("Grid1D: half_length must be positive");
    if (N <= 0 || N % 2 != 0) throw DomainError("Grid1D: n_points must be even and positive");
    dx = 2.0 * L / N;
}

double Grid1D::wavenumber(int i) const {
    const int j = (i < n_points / 2) ? i : i - n_points;
    return M_PI * j / half_length;
}

std::vector<double> Grid1D::points() const {
    std::vector<double> x(n_points);
    for (int i = 0; i < n_points; ++i) x[i] = point(i);
    return x;
}

Field::Field(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n_points)
        throw DomainError("Field: values length must equal grid.n_points");
}

Field Field::from_function(const Grid1D& g, const std::function<double(double)>& f) {
    Field u(g);
    for (int i = 0; i < g.n_points; ++i) u.values[i] = f(g.point(i));
    return u;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double Field::min_value() const {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) m = std::min(m, v);
    return m;
}

void require_finite(const Field& u, const char* what) {
    for (double v : u.values)
        if (!std::isfinite(v)) throw InvalidFieldError(std::string(what) + ": non-finite sample");
}

namespace {

// FFTW plans per grid size.  Plan creation is not thread-safe; execution via
// fftw_execute_dft on caller-owned buffers is.  Plans are created with
// FFTW_UNALIGNED so any heap buffer is acceptable.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                  reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

}  // namespace

// The grid starts at x = -L, so the raw DFT coefficient k picks up a phase
// e^{i pi k} = (-1)^k relative to the Fourier coefficient of e^{i xi_k x};
// the twist below makes coeffs[k] the true coefficient, so off-grid
// evaluation works mode by mode.  Multipliers are unaffected.
SpectralField to_spectral(const Field& u) {
    require_finite(u, "to_spectral");
    const int n = u.grid.n_points;
    std::vector<std::complex<double>> in(n), out(n);
    for (int i = 0; i < n; ++i) in[i] = u.values[i];
    fftw_execute_dft(plans_for(n).forward, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / n;
    for (int k = 0; k < n; ++k) out[k] *= (k % 2 == 0) ? scale : -scale;
    return {u.grid, std::move(out)};
}

Field to_physical(const SpectralField& s) {
    const int n = s.grid.n_points;
    std::vector<std::complex<double>> in(s.coeffs), out(n);
    for (int k = 1; k < n; k += 2) in[k] = -in[k];
    fftw_execute_dft(plans_for(n).backward, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    Field u(s.grid);
    for (int i = 0; i < n; ++i) u.values[i] = out[i].real();
    return u;
}

Field frac_laplacian(const Field& u, double s) {
    if (s != 0.25 && s != 0.5) throw DomainError("frac_laplacian: s must be 1/4 or 1/2");
    SpectralField sf = to_spectral(u);
    const double p = 2.0 * s;
    for (int i = 0; i < sf.grid.n_points; ++i) {
        const double xi = std::abs(sf.grid.wavenumber(i));
        sf.coeffs[i] *= (xi == 0.0) ? 0.0 : std::pow(xi, p);
    }
    return to_physical(sf);
}

double integrate(const Field& u) {
    require_finite(u, "integrate");
    double s = 0.0;
    for (double v : u.values) s += v;
    return s * u.grid.dx;
}

double inner_l2(const Field& u, const Field& v) {
    if (!(u.grid == v.grid)) throw DomainError("inner_l2: grids differ");
    double s = 0.0;
    for (int i = 0; i < u.grid.n_points; ++i) s += u.values[i] * v.values[i];
    return s * u.grid.dx;
}

double evaluate(const SpectralField& s, double x) {
    const int n = s.grid.n_points;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = s.grid.wavenumber(i);
        acc += s.coeffs[i].real() * std::cos(xi * x) - s.coeffs[i].imag() * std::sin(xi * x);
    }
    return acc;
}

double evaluate_second_derivative(const SpectralField& s, double x) {
    const int n = s.grid.n_points;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = s.grid.wavenumber(i);
        acc -= xi * xi *
               (s.coeffs[i].real() * std::cos(xi * x) - s.coeffs[i].imag() * std::sin(xi * x));
    }
    return acc;
}

double extension_dtn_check(double xi) {
    // Mode profile w(y) = e^{-|xi| y}; -w'(0)/w(0) = |xi|.
    return std::abs(xi);
}

Field random_band_limited(const Grid1D& g, int max_mode, double amplitude,
                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpectralField s{g, std::vector<std::complex<double>>(g.n_points, 0.0)};
    const int kmax = std::min(max_mode, g.n_points / 2 - 1);
    for (int j = 1; j <= kmax; ++j) {
        const std::complex<double> c(unif(rng), unif(rng));
        s.coeffs[j] = c;
        s.coeffs[g.n_points - j] = std::conj(c);
    }
    s.coeffs[0] = unif(rng);
    Field u = to_physical(s);
    const double m = u.max_abs();
    if (m > 0.0)
        for (auto& v : u.values) v *= amplitude / m;
    return u;
}

}  // namespace fracmp
