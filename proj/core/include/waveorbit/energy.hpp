#pragma once

#include <memory>

#include "waveorbit/field.hpp"
#include "waveorbit/nonlinearity.hpp"
#include "waveorbit/potential.hpp"

namespace waveorbit {

// Problem data: grid, potential, nonlinearity, target mass rho = ||u||_2^2,
// and the Riesz zero-mode convention in force.
struct ProblemSpec {
    std::shared_ptr<const Grid> grid;
    PotentialSpec potential;
    NonlinearitySpec nonlinearity = PowerNL{3.0};
    double rho = 1.0;
    RieszOptions riesz;

    void validate() const;
    int dim() const { return grid->dim(); }
};

// E(u) = 1/2 int |grad u|^2 - 1/2 * gamma int |u|^2/|x|^alpha - int F(u).
double total_energy(const ComplexField& u, const ProblemSpec& prob);

struct EnergyBreakdown {
    double kinetic;     // int |grad u|^2
    double potential;   // gamma int |u|^2 (|x|^2+eps^2)^{-alpha/2}
    std::vector<double> nonlinear;  // int F_c(u) per component
    double total() const;
};
EnergyBreakdown energy_breakdown(const ComplexField& u, const ProblemSpec& prob);

// omega from pairing the stationary equation with u:
// omega = (Re<f(u),u> - ||grad u||_2^2 + gamma int |u|^2/|x|^alpha) / ||u||_2^2.
double frequency_rayleigh(const ComplexField& u, const ProblemSpec& prob);

// || -Lap u - V u + omega u - f(u) ||_2 / ||u||_2 with spectral Laplacian.
double el_residual(const ComplexField& u, const ProblemSpec& prob);

}  // namespace waveorbit
