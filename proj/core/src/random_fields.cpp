#include "waveorbit/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "waveorbit/spectral.hpp"

namespace waveorbit {

double NormalStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on uniforms from the standardized mt19937_64 stream
    double u1 = 0.0;
    do {
        u1 = static_cast<double>(rng_()) * 0x1.0p-64;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(rng_()) * 0x1.0p-64;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

ComplexField random_band_limited(std::shared_ptr<const Grid> grid, std::uint64_t seed,
                                 const RandomFieldOptions& opts) {
    const Grid& g = *grid;
    NormalStream ns(seed);
    std::vector<cplx> coeffs(static_cast<std::size_t>(g.point_count()), cplx{});
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        bool in_band = true;
        double shell = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double n = static_cast<double>(g.mode(d, idx[static_cast<std::size_t>(d)]));
            const double band = opts.band_fraction * static_cast<double>(g.points(d)) / 2.0;
            if (std::abs(n) > band) in_band = false;
            shell += (n / std::max(band, 1.0)) * (n / std::max(band, 1.0));
        }
        if (!in_band) continue;
        coeffs[static_cast<std::size_t>(i)] = ns.next_complex() * std::exp(-shell);
    }
    ComplexField u = inverse_coeffs(grid, coeffs);
    const double sigma = opts.envelope_fraction * g.extent(0);
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double x = g.coord(d, idx[static_cast<std::size_t>(d)]);
            r2 += x * x;
        }
        u[static_cast<std::size_t>(i)] *= std::exp(-0.5 * r2 / (sigma * sigma));
        if (opts.real_valued)
            u[static_cast<std::size_t>(i)] = cplx(u[static_cast<std::size_t>(i)].real(), 0.0);
    }
    return u;
}

}  // namespace waveorbit
