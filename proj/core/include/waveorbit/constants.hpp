#pragma once

#include <optional>

namespace waveorbit {

struct CriticalExponents {
    double p_c;                   // 1 + 4/N
    std::optional<double> q_c;    // 1 + (2+beta)/N when beta given
};
CriticalExponents critical_exponents(int dim, std::optional<double> beta = std::nullopt);

// Sharp Gagliardo-Nirenberg constant:
//   ||u||_{eta+2}^{eta+2} <= C_GN(eta) ||u||_2^{2+eta(2-N)/2} ||grad u||_2^{eta N/2},
//   C_GN(eta) = 2(eta+2)/(4-(N-2)eta) * [(4-(N-2)eta)/(N eta)]^{N eta/4} * q_mass^{-eta},
// with q_mass = ||Q_{eta+1}||_2 the mass norm of the reference state.
double gn_constant(int dim, double eta, double q_mass);

// Sharp constant of the convolution Gagliardo-Nirenberg inequality:
//   int (I_beta*|u|^p)|u|^p <= C(beta,p) ||grad u||_2^{Np-N-beta} ||u||_2^{N+beta-Np+2p},
//   C(beta,p) = 2p/(2p-Np+N+beta) * [(2p-Np+N+beta)/(Np-N-beta)]^{(Np-N-beta)/2} * w_mass^{2-2p};
// at the L2-critical p this reduces to p * w_mass^{2-2p}.
double hartree_gn_constant(int dim, double beta, double p, double w_mass);

// Sharp diagonal Hardy-Littlewood-Sobolev constant
//   C_beta(N) = pi^{(N-beta)/2} Gamma(beta/2)/Gamma((N+beta)/2) *
//               [Gamma(N/2)/Gamma(N)]^{-beta/N}.
double hls_constant(int dim, double beta);

namespace closed_form {

// 1D ground state of -Q'' + Q = Q^p:
//   Q_p(x) = ((p+1)/2)^{1/(p-1)} sech^{2/(p-1)}((p-1)x/2).
double q_profile_1d(double p, double x);

// ||Q_p||_2^2 in closed form,
//   ((p+1)/2)^{2/(p-1)} * (2/(p-1)) * sqrt(pi)*Gamma(2/(p-1))/Gamma(2/(p-1)+1/2).
double q_mass_sq_1d(double p);

}  // namespace closed_form

// ||Q_{p}||_2 used inside constructed bounds: closed form in 1D, a cached
// Petviashvili solve on a default grid for N = 2, 3.
double default_gn_mass(int dim, double p);

}  // namespace waveorbit
