#pragma once

#include <cstdint>
#include <random>

#include "waveorbit/field.hpp"

namespace waveorbit {

// Deterministic standard normals: explicit Box-Muller over mt19937_64 so
// streams are identical across standard libraries.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}
    double next();
    cplx next_complex() { return cplx(next(), next()); }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct RandomFieldOptions {
    double band_fraction = 0.25;    // modes kept: |n_d| <= band_fraction * M_d/2
    double envelope_fraction = 0.125;  // Gaussian envelope sigma = fraction * L
    bool real_valued = false;
};

// Band-limited complex Gaussian field under a centered Gaussian envelope, so
// samples decay at the box boundary. Deterministic per seed.
ComplexField random_band_limited(std::shared_ptr<const Grid> grid, std::uint64_t seed,
                                 const RandomFieldOptions& opts = {});

}  // namespace waveorbit
