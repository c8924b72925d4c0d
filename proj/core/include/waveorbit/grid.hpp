#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace waveorbit {

// Periodic uniform grid on the box [-L/2, L/2)^dim, row-major sample layout.
// Per-axis wavenumbers are the symmetric set 2*pi*n/L, n = -M/2 .. M/2-1, in
// FFT index order (n = j for j < M/2, n = j - M otherwise).
class Grid {
public:
    Grid(int dim, const std::array<double, 3>& extent, const std::array<std::int64_t, 3>& points);

    int dim() const { return dim_; }
    double extent(int axis) const { return extent_[axis]; }
    std::int64_t points(int axis) const { return points_[axis]; }
    double spacing(int axis) const { return extent_[axis] / static_cast<double>(points_[axis]); }

    std::int64_t point_count() const { return count_; }
    double cell_volume() const;  // product of spacings
    double box_volume() const;   // product of extents

    // Coordinate of sample index j along an axis: -L/2 + j*h.
    double coord(int axis, std::int64_t j) const {
        return -0.5 * extent_[axis] + spacing(axis) * static_cast<double>(j);
    }
    // Signed integer mode number for FFT index j along an axis.
    std::int64_t mode(int axis, std::int64_t j) const {
        return j < points_[axis] / 2 ? j : j - points_[axis];
    }
    // Angular wavenumber 2*pi*n/L for FFT index j along an axis.
    double wavenumber(int axis, std::int64_t j) const;

    // |k|^2 table over all modes, row-major FFT order. Cached per grid.
    const std::vector<double>& k_squared() const;

    // Decomposes a flat row-major index into per-axis indices.
    std::array<std::int64_t, 3> unravel(std::int64_t flat) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

    // Stable value-identity key, used by kernel caches.
    std::string cache_key() const;

private:
    int dim_;
    std::array<double, 3> extent_{};
    std::array<std::int64_t, 3> points_{};
    std::int64_t count_;
    mutable std::vector<double> k_squared_;  // lazily built
};

// Isotropic helper matching the common construction: same extent and point
// count on every axis. Rejects odd or tiny point counts and non-positive
// extents.
Grid make_grid(int dim, double extent, std::int64_t points);

}  // namespace waveorbit
