#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "waveorbit/field.hpp"
#include "waveorbit/riesz.hpp"

namespace waveorbit {

// Reference solitary-wave profiles:
//   kind Q: -Lap Q + Q = Q^p            (power)
//   kind W: -Lap W + W = (I_beta*|W|^q)|W|^{q-2} W   (Choquard)
enum class ReferenceKind { Q, W };

struct ReferenceState {
    ReferenceKind kind;
    double exponent;              // p or q
    std::optional<double> beta;   // W only
    ComplexField field;           // real positive radial profile
    double mass_sq;               // ||.||_2^2
    double residual;              // discrete equation residual, L2-relative
    int iterations;
};

struct PetviashviliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryDecayError : PetviashviliError {
    using PetviashviliError::PetviashviliError;
};

struct PetviashviliOptions {
    double tol = 1e-10;
    int max_iters = 3000;
    double boundary_decay = 1e-10;  // relative to the peak, checked post hoc
    bool check_boundary = true;
    bool throw_on_max_iters = true;  // false returns the last iterate as-is
    // deterministic initial profile exp(-|x|^2) unless overridden
    const ComplexField* initial = nullptr;
};

// Petviashvili fixed-point iteration with stabilizing exponent p/(p-1)
// (power) or (2q-1)/(2q-2) (Choquard). Deterministic from the fixed Gaussian
// initial guess. Throws PetviashviliError on non-convergence and
// BoundaryDecayError when the converged profile has not decayed below the
// boundary threshold.
ReferenceState petviashvili_solve(ReferenceKind kind, int dim, double exponent,
                                  std::optional<double> beta, std::shared_ptr<const Grid> grid,
                                  const PetviashviliOptions& opts = {});

// The critical mass threshold carried by a reference state.
double threshold_mass(const ReferenceState& ref);

// Default per-dimension grids for reference solves (boxes sized so exp(-r)
// tails clear the boundary-decay check).
std::shared_ptr<const Grid> default_reference_grid(int dim);

// Largest |u| on the boundary faces relative to the peak.
double boundary_decay_ratio(const ComplexField& u);

// Deviation from octahedral (reflection + axis permutation) symmetry about
// the box center, relative to the peak; a radial profile gives ~0.
double radial_asymmetry(const ComplexField& u);

}  // namespace waveorbit
