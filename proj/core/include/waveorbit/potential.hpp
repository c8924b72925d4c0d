#pragma once

#include <memory>
#include <vector>

#include "waveorbit/field.hpp"
#include "waveorbit/grid.hpp"

namespace waveorbit {

// The attractive slowly decaying potential gamma * |x|^{-alpha}, regularized
// near the origin. reg_eps > 0 samples gamma*(|x|^2 + reg_eps^2)^{-alpha/2};
// reg_eps = 0 samples the bare power law with the origin cell replaced by the
// cell average of |x|^{-alpha} (closed-form radial integral over the
// equal-measure ball).
struct PotentialSpec {
    double gamma = 0.0;
    double alpha = 0.5;
    double reg_eps = -1.0;  // < 0 means "default": half the grid spacing

    void validate(int dim) const;
    double effective_reg_eps(const Grid& g) const;
};

// Pointwise samples of the potential, gamma included. Cached per (grid, spec).
std::shared_ptr<const std::vector<double>> sample_potential(const Grid& grid,
                                                            const PotentialSpec& spec);

// gamma * int |u|^2 (|x|^2 + reg_eps^2)^{-alpha/2} dx. The caller applies the
// -1/2 sign that this term carries inside the energy.
double potential_energy(const ComplexField& u, const PotentialSpec& spec);

}  // namespace waveorbit
