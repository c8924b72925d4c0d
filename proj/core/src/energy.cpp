#include "waveorbit/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

void ProblemSpec::validate() const {
    if (!grid) throw std::invalid_argument("ProblemSpec: grid is required");
    potential.validate(grid->dim());
    waveorbit::validate(nonlinearity, grid->dim());
    if (!(rho > 0.0)) throw std::invalid_argument("ProblemSpec: rho must be positive");
}

double EnergyBreakdown::total() const {
    double nl = 0.0;
    for (double x : nonlinear) nl += x;
    return 0.5 * kinetic - 0.5 * potential - nl;
}

EnergyBreakdown energy_breakdown(const ComplexField& u, const ProblemSpec& prob) {
    EnergyBreakdown b;
    b.kinetic = gradient_norm_sq(u);
    b.potential = potential_energy(u, prob.potential);
    const auto& uu = u.values();
    const double cellv = u.grid().cell_volume();
    for (const auto& c : components(prob.nonlinearity)) {
        if (c.kind == NLComponent::Kind::Power) {
            const double e = 0.5 * (c.exponent + 1.0);
            const double s = pairwise_sum_indexed(
                0, uu.size(), [&](std::size_t i) { return std::pow(std::norm(uu[i]), e); });
            b.nonlinear.push_back(cellv * s / (c.exponent + 1.0));
        } else {
            b.nonlinear.push_back(hartree_energy(u, c.exponent, prob.riesz.spec_for(c.beta)) /
                                  (2.0 * c.exponent));
        }
    }
    return b;
}

double total_energy(const ComplexField& u, const ProblemSpec& prob) {
    return 0.5 * gradient_norm_sq(u) - 0.5 * potential_energy(u, prob.potential) -
           nonlinear_energy(u, prob.nonlinearity, prob.riesz);
}

double frequency_rayleigh(const ComplexField& u, const ProblemSpec& prob) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("frequency_rayleigh: zero field");
    const double pairing = nonlinear_pairing(u, prob.nonlinearity, prob.riesz);
    return (pairing - gradient_norm_sq(u) + potential_energy(u, prob.potential)) / m;
}

double el_residual(const ComplexField& u, const ProblemSpec& prob) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("el_residual: zero field");
    const double omega = frequency_rayleigh(u, prob);
    ComplexField lap = minus_laplacian(u);
    ComplexField f = apply_nonlinearity(u, prob.nonlinearity, prob.riesz);
    auto v = sample_potential(u.grid(), prob.potential);
    const auto& uu = u.values();
    ComplexField r = make_uninitialized(u.grid_ptr());
    for (std::size_t i = 0; i < uu.size(); ++i)
        r[i] = lap[i] - (*v)[i] * uu[i] + omega * uu[i] - f[i];
    return std::sqrt(mass(r) / m);
}

}  // namespace waveorbit
