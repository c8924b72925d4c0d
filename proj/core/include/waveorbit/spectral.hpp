#pragma once

#include <complex>
#include <vector>

#include "waveorbit/field.hpp"
#include "waveorbit/grid.hpp"

namespace waveorbit {

// Spectral transforms and grid functionals.
//
// Normalization: forward_coeffs returns the Fourier coefficients c_n of the
// trigonometric interpolant on the centered box,
//     u(x) = sum_n c_n exp(i k_n . x),   c_n = (1/M^N) sum_j u_j exp(-i k_n . x_j),
// so a plane wave of unit amplitude has coefficient 1. With this convention
// Parseval reads  ||u||_2^2 = L^N sum_n |c_n|^2  (rectangle-rule L2 norm on
// the left). Arrays are in row-major FFT index order.

std::vector<cplx> forward_coeffs(const ComplexField& u);
ComplexField inverse_coeffs(std::shared_ptr<const Grid> grid, const std::vector<cplx>& coeffs);

// (sum_j |u_j|^r h^N)^(1/r); rejects r < 1.
double lp_norm(const ComplexField& u, double r);

// L2 mass ||u||_2^2 = lp_norm(u,2)^2, computed as a direct pairwise sum.
double mass(const ComplexField& u);

// L^N sum_n |k_n|^2 |c_n|^2; equals int |grad u|^2 for band-limited fields.
double gradient_norm_sq(const ComplexField& u);
double gradient_norm_sq(const ComplexField& u, const std::vector<cplx>& coeffs);

// <u,v>_L2 + <grad u, grad v>_L2, conjugate-linear in v.
cplx h1_inner(const ComplexField& u, const ComplexField& v);
double h1_norm_sq(const ComplexField& u);

// -Laplacian u, applied spectrally.
ComplexField minus_laplacian(const ComplexField& u);

struct DilateResult {
    ComplexField field;
    bool aliased = false;          // lambda > 1 pushed spectral energy past Nyquist
    double alias_fraction = 0.0;   // energy fraction of modes that fold
};

// Mass-preserving dilation u -> lambda^{N/2} u(lambda x), evaluated by exact
// chirp-z (Bluestein) resampling of the trigonometric interpolant. lambda = 1
// returns the input unchanged.
DilateResult dilate_checked(const ComplexField& u, double lambda);
ComplexField dilate(const ComplexField& u, double lambda);

// Circularly shifts u by a real-valued offset per axis via spectral phase ramps.
ComplexField shift(const ComplexField& u, const std::array<double, 3>& offset);

}  // namespace waveorbit
