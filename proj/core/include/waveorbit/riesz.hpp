#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waveorbit/field.hpp"
#include "waveorbit/grid.hpp"

namespace waveorbit {

// How the k = 0 multiplier of the Riesz symbol |k|^{-beta} is fixed on the
// periodic box (the free-space symbol is singular there and the paper-level
// theory gives no periodic counterpart):
//
//  TruncationMatched  m(0) = integral of the exactly normalized kernel over
//                     the ball |x| <= L/2; matches convolution with the
//                     box-truncated kernel in the mean. Default.
//  ZetaMatched        m(0) = -Z_N(beta) * (2*pi/L)^{-beta}, the renormalized
//                     Epstein-zeta weight. Makes the punctured lattice sum
//                     reproduce the free-space integral for smooth spectra
//                     (and, equivalently, matches the periodic kernel to the
//                     free-space kernel near the origin), so free-space
//                     dilation scalings hold to high order.
//  Zero               m(0) = 0 (discards the mean).
//  Explicit           caller-provided value.
enum class ZeroModeConvention { TruncationMatched, ZetaMatched, Zero, Explicit };

std::string to_string(ZeroModeConvention c);

struct RieszSpec {
    double beta = 1.0;
    ZeroModeConvention convention = ZeroModeConvention::TruncationMatched;
    double explicit_zero_mode = 0.0;  // used only with Explicit

    void validate(int dim) const;
    double zero_mode(const Grid& g) const;
};

// Normalization constant A with I_beta(x) = A |x|^{beta-N}, chosen so the
// free-space Fourier symbol of I_beta * (.) is exactly |k|^{-beta}.
double riesz_kernel_constant(int dim, double beta);

double zero_mode_truncation_matched(int dim, double beta, double box_extent);
double zero_mode_zeta_matched(int dim, double beta, double box_extent);

// Diagonal Fourier multiplier table m(k) for the grid. Cached per (grid, spec).
std::shared_ptr<const std::vector<double>> riesz_multiplier(const Grid& grid,
                                                            const RieszSpec& spec);

// I_beta * v for a real-valued field (imaginary parts must vanish).
ComplexField riesz_convolve(const ComplexField& v, const RieszSpec& spec);

// int (I_beta * |u|^q) |u|^q dx, evaluated in Fourier space; >= 0 whenever
// the zero mode is >= 0. Rejects q outside the admissible range
// 1 + beta/N < q < (N+beta)/(N-2)_+.
double hartree_energy(const ComplexField& u, double q, const RieszSpec& spec);

// Same integral for a precomputed real density v = |u|^q.
double hartree_pairing(const ComplexField& v, const RieszSpec& spec);

// Writes "k,m" rows of the multiplier table (flattened, FFT order).
void export_multiplier_csv(const std::filesystem::path& path, const Grid& grid,
                           const RieszSpec& spec);

}  // namespace waveorbit
