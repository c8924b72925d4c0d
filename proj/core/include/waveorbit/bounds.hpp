#pragma once

#include <optional>

#include "waveorbit/energy.hpp"
#include "waveorbit/field.hpp"
#include "waveorbit/potential.hpp"
#include "waveorbit/thresholds.hpp"

namespace waveorbit {

// Hoelder-split exponent pair used by the constructed potential bound. The
// inner/outer split at radius 1 takes r' = (N/(N-alpha))(1+tau) and
// s' = (N/(N-alpha))(1-tau); tau defaults to 0.1 and is clamped so that
// s' > 1 and (for N = 3) the interpolation exponent stays admissible.
double lemma22_default_tau();
double lemma22_effective_tau(double alpha, int dim, double tau = lemma22_default_tau());

// Explicit delta(eps, ||u||_2) with
//   eps ||grad u||_2^2 - gamma int |u|^2/|x|^alpha >= -delta   for all u,
// assembled from the two-region Hoelder split, sharp Gagliardo-Nirenberg
// interpolation and Young's inequality. Quadratic in the mass norm:
// delta = D(eps) * mass_l2^2. Returns 0 for gamma <= 0.
double lemma22_delta(double eps, double mass_l2, const PotentialSpec& spec, int dim,
                     double tau = lemma22_default_tau());

// margin = eps ||grad u||^2 - gamma int V |u|^2 + delta(eps, ||u||_2); the
// bound asserts margin >= 0.
double verify_lower_bound(const ComplexField& u, double eps, const PotentialSpec& spec);

// Certified energy coercivity: a constant B >= 0 with E(u) >= -B for every u
// of mass rho, built from the potential bound plus one Young step per
// subcritical component and the threshold coefficient at critical components.
// Empty when a supercritical component is present or a critical component
// sits at/above its mass threshold.
struct CoercivityBound {
    double lower_bound;        // E >= -lower_bound
    double kinetic_coeff;      // E >= kinetic_coeff * ||grad u||^2 - lower_bound
};
std::optional<CoercivityBound> coercivity_bound(const ProblemSpec& prob, double rho,
                                                ThresholdTable& thresholds);

// A-priori gradient bound along conserved-energy dynamics: for any state of
// mass rho and energy E0,
//   ||grad u||^2 <= (2 E0 + 2 B) / (2 c)
// with (B, c) the coercivity data above. Empty in the same cases.
std::optional<double> gradient_apriori_bound(const ProblemSpec& prob, double rho, double energy0,
                                             ThresholdTable& thresholds);

}  // namespace waveorbit
