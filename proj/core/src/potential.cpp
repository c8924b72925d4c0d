#include "waveorbit/potential.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "waveorbit/summation.hpp"

namespace waveorbit {

void PotentialSpec::validate(int dim) const {
    const double amax = std::min(2.0, static_cast<double>(dim));
    if (!(alpha > 0.0 && alpha < amax))
        throw std::invalid_argument("PotentialSpec: need 0 < alpha < min{2, N}");
    if (reg_eps > 0.0 && !std::isfinite(reg_eps))
        throw std::invalid_argument("PotentialSpec: reg_eps must be finite");
}

double PotentialSpec::effective_reg_eps(const Grid& g) const {
    if (reg_eps < 0.0) return 0.5 * g.spacing(0);
    return reg_eps;
}

namespace {

// Cell average of |x|^{-alpha} over the equal-measure ball of the grid cell.
double origin_cell_average(const Grid& g, double alpha) {
    const int n = g.dim();
    const double nd = static_cast<double>(n);
    const double pi = std::numbers::pi;
    const double unit_ball = std::pow(pi, 0.5 * nd) / std::tgamma(0.5 * nd + 1.0);
    double cellv = g.cell_volume();
    const double radius = std::pow(cellv / unit_ball, 1.0 / nd);
    return nd / (nd - alpha) * std::pow(radius, -alpha);
}

std::string spec_key(const Grid& g, const PotentialSpec& s) {
    std::ostringstream ss;
    ss.precision(17);
    ss << g.cache_key() << '|' << s.gamma << '|' << s.alpha << '|' << s.effective_reg_eps(g);
    return ss.str();
}

}  // namespace

std::shared_ptr<const std::vector<double>> sample_potential(const Grid& grid,
                                                            const PotentialSpec& spec) {
    spec.validate(grid.dim());
    static std::mutex cache_mutex;
    static std::map<std::string, std::shared_ptr<const std::vector<double>>> cache;
    const std::string key = spec_key(grid, spec);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const double eps = spec.effective_reg_eps(grid);
    auto table = std::make_shared<std::vector<double>>(static_cast<std::size_t>(grid.point_count()));
    for (std::int64_t i = 0; i < grid.point_count(); ++i) {
        const auto idx = grid.unravel(i);
        double r2 = 0.0;
        for (int d = 0; d < grid.dim(); ++d) {
            const double x = grid.coord(d, idx[static_cast<std::size_t>(d)]);
            r2 += x * x;
        }
        double v;
        if (eps > 0.0) {
            v = std::pow(r2 + eps * eps, -0.5 * spec.alpha);
        } else if (r2 == 0.0) {
            v = origin_cell_average(grid, spec.alpha);
        } else {
            v = std::pow(r2, -0.5 * spec.alpha);
        }
        (*table)[static_cast<std::size_t>(i)] = spec.gamma * v;
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(table));
    return it->second;
}

double potential_energy(const ComplexField& u, const PotentialSpec& spec) {
    auto v = sample_potential(u.grid(), spec);
    const auto& vals = u.values();
    const double sum = pairwise_sum_indexed(
        0, vals.size(), [&](std::size_t i) { return (*v)[i] * std::norm(vals[i]); });
    return sum * u.grid().cell_volume();
}

}  // namespace waveorbit
