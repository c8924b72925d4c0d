#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "waveorbit/grid.hpp"

namespace waveorbit {

using cplx = std::complex<double>;

// Complex-valued samples on a periodic grid. Value semantics; the grid is
// shared immutably between fields that live on the same discretization.
class ComplexField {
public:
    ComplexField(std::shared_ptr<const Grid> grid, std::vector<cplx> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_) throw std::invalid_argument("ComplexField: null grid");
        if (static_cast<std::int64_t>(values_.size()) != grid_->point_count())
            throw std::invalid_argument("ComplexField: value count does not match grid");
    }

    explicit ComplexField(std::shared_ptr<const Grid> grid)
        : ComplexField(std::move(grid), {}) {}

    static ComplexField zeros(std::shared_ptr<const Grid> grid) {
        std::vector<cplx> v(static_cast<std::size_t>(grid->point_count()), cplx{0.0, 0.0});
        return ComplexField(std::move(grid), std::move(v));
    }

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    std::size_t size() const { return values_.size(); }
    cplx operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    bool same_grid(const ComplexField& other) const { return *grid_ == *other.grid_; }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<cplx> values_;

    ComplexField(std::shared_ptr<const Grid> grid, int)  // internal uninitialized ctor
        : grid_(std::move(grid)), values_(static_cast<std::size_t>(grid_->point_count())) {}

    friend ComplexField make_uninitialized(std::shared_ptr<const Grid>);
};

inline ComplexField make_uninitialized(std::shared_ptr<const Grid> grid) {
    return ComplexField(std::move(grid), 0);
}

inline void require_same_grid(const ComplexField& u, const ComplexField& v, const char* what) {
    if (!u.same_grid(v)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace waveorbit
