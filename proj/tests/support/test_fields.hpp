#pragma once

// Analytic field builders and independent quadrature oracles shared by the
// test suites. Everything here is deliberately naive (direct sums, closed
// forms) and independent of the spectral implementation paths it checks.

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "waveorbit/field.hpp"
#include "waveorbit/grid.hpp"

namespace wotest {

using waveorbit::ComplexField;
using waveorbit::cplx;
using waveorbit::Grid;

inline std::shared_ptr<const Grid> grid1d(double L, std::int64_t M) {
    return std::make_shared<const Grid>(waveorbit::make_grid(1, L, M));
}
inline std::shared_ptr<const Grid> grid_nd(int dim, double L, std::int64_t M) {
    return std::make_shared<const Grid>(waveorbit::make_grid(dim, L, M));
}

// samples f(x1,..,xd) on the grid
inline ComplexField sample(std::shared_ptr<const Grid> grid,
                           const std::function<cplx(const std::array<double, 3>&)>& f) {
    ComplexField u = waveorbit::make_uninitialized(grid);
    const Grid& g = *grid;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        std::array<double, 3> x{0, 0, 0};
        for (int d = 0; d < g.dim(); ++d)
            x[static_cast<std::size_t>(d)] = g.coord(d, idx[static_cast<std::size_t>(d)]);
        u[static_cast<std::size_t>(i)] = f(x);
    }
    return u;
}

inline ComplexField gaussian(std::shared_ptr<const Grid> grid, double width = 1.0,
                             double center = 0.0, double amplitude = 1.0) {
    return sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < grid->dim(); ++d) {
            const double y = x[static_cast<std::size_t>(d)] - (d == 0 ? center : 0.0);
            r2 += y * y;
        }
        return cplx(amplitude * std::exp(-r2 / (width * width)), 0.0);
    });
}

// sqrt(2) sech(x - center), the 1D cubic ground state profile
inline ComplexField sech_soliton(std::shared_ptr<const Grid> grid, double center = 0.0) {
    return sample(grid, [&](const std::array<double, 3>& x) {
        return cplx(std::sqrt(2.0) / std::cosh(x[0] - center), 0.0);
    });
}

inline ComplexField plane_wave(std::shared_ptr<const Grid> grid, std::int64_t mode) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(mode) / grid->extent(0);
    return sample(grid, [&](const std::array<double, 3>& x) {
        return cplx(std::cos(k * x[0]), std::sin(k * x[0]));
    });
}

// rectangle-rule quadrature of an arbitrary pointwise integrand, the oracle
// counterpart of the library's norm/energy sums
inline double direct_quadrature(const ComplexField& u,
                                const std::function<double(cplx, const std::array<double, 3>&)>& f) {
    const Grid& g = u.grid();
    long double acc = 0.0L;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        std::array<double, 3> x{0, 0, 0};
        for (int d = 0; d < g.dim(); ++d)
            x[static_cast<std::size_t>(d)] = g.coord(d, idx[static_cast<std::size_t>(d)]);
        acc += f(u[static_cast<std::size_t>(i)], x);
    }
    return static_cast<double>(acc) * g.cell_volume();
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace wotest
