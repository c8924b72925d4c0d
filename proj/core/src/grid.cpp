#include "waveorbit/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace waveorbit {

Grid::Grid(int dim, const std::array<double, 3>& extent, const std::array<std::int64_t, 3>& points)
    : dim_(dim), extent_(extent), points_(points) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1, 2 or 3");
    count_ = 1;
    for (int d = 0; d < dim_; ++d) {
        if (!(extent_[d] > 0.0)) throw std::invalid_argument("Grid: extent must be positive");
        if (points_[d] < 8) throw std::invalid_argument("Grid: need at least 8 points per axis");
        if (points_[d] % 2 != 0) throw std::invalid_argument("Grid: point count must be even");
        count_ *= points_[d];
    }
    for (int d = dim_; d < 3; ++d) {
        extent_[d] = 0.0;
        points_[d] = 1;
    }
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) v *= spacing(d);
    return v;
}

double Grid::box_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim_; ++d) v *= extent_[d];
    return v;
}

double Grid::wavenumber(int axis, std::int64_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(mode(axis, j)) / extent_[axis];
}

const std::vector<double>& Grid::k_squared() const {
    if (k_squared_.empty()) {
        std::vector<double> table(static_cast<std::size_t>(count_));
        std::array<std::vector<double>, 3> axis_k2;
        for (int d = 0; d < dim_; ++d) {
            axis_k2[d].resize(static_cast<std::size_t>(points_[d]));
            for (std::int64_t j = 0; j < points_[d]; ++j) {
                const double k = wavenumber(d, j);
                axis_k2[d][static_cast<std::size_t>(j)] = k * k;
            }
        }
        std::int64_t idx = 0;
        if (dim_ == 1) {
            for (std::int64_t j0 = 0; j0 < points_[0]; ++j0)
                table[idx++] = axis_k2[0][j0];
        } else if (dim_ == 2) {
            for (std::int64_t j0 = 0; j0 < points_[0]; ++j0)
                for (std::int64_t j1 = 0; j1 < points_[1]; ++j1)
                    table[idx++] = axis_k2[0][j0] + axis_k2[1][j1];
        } else {
            for (std::int64_t j0 = 0; j0 < points_[0]; ++j0)
                for (std::int64_t j1 = 0; j1 < points_[1]; ++j1)
                    for (std::int64_t j2 = 0; j2 < points_[2]; ++j2)
                        table[idx++] = axis_k2[0][j0] + axis_k2[1][j1] + axis_k2[2][j2];
        }
        k_squared_ = std::move(table);
    }
    return k_squared_;
}

std::array<std::int64_t, 3> Grid::unravel(std::int64_t flat) const {
    std::array<std::int64_t, 3> idx{0, 0, 0};
    if (dim_ == 1) {
        idx[0] = flat;
    } else if (dim_ == 2) {
        idx[0] = flat / points_[1];
        idx[1] = flat % points_[1];
    } else {
        idx[2] = flat % points_[2];
        const std::int64_t rest = flat / points_[2];
        idx[1] = rest % points_[1];
        idx[0] = rest / points_[1];
    }
    return idx;
}

bool Grid::operator==(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int d = 0; d < dim_; ++d)
        if (extent_[d] != other.extent_[d] || points_[d] != other.points_[d]) return false;
    return true;
}

std::string Grid::cache_key() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << dim_;
    for (int d = 0; d < dim_; ++d) ss << ':' << extent_[d] << 'x' << points_[d];
    return ss.str();
}

Grid make_grid(int dim, double extent, std::int64_t points) {
    return Grid(dim, {extent, extent, extent}, {points, points, points});
}

}  // namespace waveorbit
