#pragma once

namespace waveorbit {

// Renormalized Epstein zeta Z_N(s) = sum'_{n in Z^N} |n|^{-s}, analytically
// continued to 0 < s < N (where the raw sum diverges). Z_1(s) = 2*zeta(s).
// Evaluated by the Ewald/incomplete-gamma representation
//   Z_N(s) = pi^{s/2}/Gamma(s/2) * [ 2/(s-N) - 2/s
//            + sum'_n ( G(s/2, pi|n|^2) + G((N-s)/2, pi|n|^2) ) ],
// with G(a,x) = Gamma(a,x) x^{-a} (upper incomplete), terms decaying like
// exp(-pi |n|^2).
double epstein_zeta_ren(int dim, double s);

}  // namespace waveorbit
