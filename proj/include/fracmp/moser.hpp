// Truncated-logarithm (Moser) functions on the half-plane, their traces and
// norms, the exponential integral functional, and the interpolation-constant
// probe for the L^q bound.
//
// psi_k(x, y) = (1/sqrt(2 pi)) * { sqrt(log k)              r <= 1/k
//                                  log(1/r)/sqrt(log k)     1/k <= r <= 1
//                                  0                        r >= 1 },
// with r = sqrt(x^2 + y^2).  The normalized family phi_k = psi_k / |psi_k|
// uses the half-plane Dirichlet energy (exactly 1/2) plus the trace term
// int V psi_k(x,0)^2 dx under the ambient potential.
#pragma once

#include <functional>

#include "fracmp/grid_spectral.hpp"

namespace fracmp {

struct MoserEnergy2D {
    double dirichlet_full_plane = 0.0;  // = 1 for every k
    double dirichlet_half_plane = 0.0;  // = 1/2
    double l2_mass = 0.0;               // O(1/log k) on the full plane
};

MoserEnergy2D moser_energy_2d(int k);

class MoserFamily {
  public:
    // V is the ambient potential used to normalize traces; it may be zero.
    MoserFamily(int k, std::function<double(double)> V);

    int k() const { return k_; }
    double psi(double x, double y) const;
    double trace_value(double x) const { return psi(x, 0.0); }

    // |psi_k|^2 = 1/2 + int V psi_k(.,0)^2 dx (adaptive quadrature).
    double psi_norm_sq() const { return norm_sq_; }

    // phi_k(0,0)^2 = (log k / (2 pi)) / |psi_k|^2; equals log k / pi when
    // V = 0.
    double center_sq() const;

    // Samples of the raw trace psi_k(.,0); requires dx <= 1/(4k).
    Field trace_field(const Grid1D& grid) const;
    // Samples of the normalized trace phi_k(.,0).
    Field normalized_trace_field(const Grid1D& grid) const;

  private:
    int k_;
    double log_k_;
    std::function<double(double)> V_;
    double norm_sq_;
};

// integrate(e^{alpha u^2} - 1); guard on alpha * max(u)^2.
double mt_functional(const Field& u, double alpha);

// |u|_q / (q^{1/2} [u]^{1-2/q} |u|_2^{2/q}), the candidate interpolation
// constant for this u and q; equals 1/sqrt(2) for every u at q = 2.
double ozawa_ratio(const Field& u, double q);

}  // namespace fracmp
