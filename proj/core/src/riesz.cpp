#include "waveorbit/riesz.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"
#include "waveorbit/zeta.hpp"

namespace waveorbit {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(ZeroModeConvention c) {
    switch (c) {
        case ZeroModeConvention::TruncationMatched: return "truncation";
        case ZeroModeConvention::ZetaMatched: return "zeta";
        case ZeroModeConvention::Zero: return "zero";
        case ZeroModeConvention::Explicit: return "explicit";
    }
    return "?";
}

void RieszSpec::validate(int dim) const {
    if (!(beta > 0.0 && beta < static_cast<double>(dim)))
        throw std::invalid_argument("RieszSpec: need 0 < beta < N");
}

double riesz_kernel_constant(int dim, double beta) {
    const double nd = static_cast<double>(dim);
    return std::tgamma(0.5 * (nd - beta)) /
           (std::tgamma(0.5 * beta) * std::pow(kPi, 0.5 * nd) * std::pow(2.0, beta));
}

double zero_mode_truncation_matched(int dim, double beta, double box_extent) {
    const double nd = static_cast<double>(dim);
    const double sphere = 2.0 * std::pow(kPi, 0.5 * nd) / std::tgamma(0.5 * nd);
    return riesz_kernel_constant(dim, beta) * sphere * std::pow(0.5 * box_extent, beta) / beta;
}

double zero_mode_zeta_matched(int dim, double beta, double box_extent) {
    return -epstein_zeta_ren(dim, beta) * std::pow(2.0 * kPi / box_extent, -beta);
}

double RieszSpec::zero_mode(const Grid& g) const {
    switch (convention) {
        case ZeroModeConvention::TruncationMatched:
            return zero_mode_truncation_matched(g.dim(), beta, g.extent(0));
        case ZeroModeConvention::ZetaMatched:
            return zero_mode_zeta_matched(g.dim(), beta, g.extent(0));
        case ZeroModeConvention::Zero:
            return 0.0;
        case ZeroModeConvention::Explicit:
            return explicit_zero_mode;
    }
    return 0.0;
}

std::shared_ptr<const std::vector<double>> riesz_multiplier(const Grid& grid,
                                                            const RieszSpec& spec) {
    spec.validate(grid.dim());
    static std::mutex cache_mutex;
    static std::map<std::string, std::shared_ptr<const std::vector<double>>> cache;
    std::ostringstream kb;
    kb.precision(17);
    kb << grid.cache_key() << '|' << spec.beta << '|' << spec.zero_mode(grid);
    const std::string key = kb.str();
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const auto& k2 = grid.k_squared();
    auto table = std::make_shared<std::vector<double>>(k2.size());
    const double zm = spec.zero_mode(grid);
    for (std::size_t i = 0; i < k2.size(); ++i)
        (*table)[i] = k2[i] == 0.0 ? zm : std::pow(k2[i], -0.5 * spec.beta);

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(table));
    return it->second;
}

ComplexField riesz_convolve(const ComplexField& v, const RieszSpec& spec) {
    auto m = riesz_multiplier(v.grid(), spec);
    auto c = forward_coeffs(v);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= (*m)[i];
    return inverse_coeffs(v.grid_ptr(), c);
}

double hartree_pairing(const ComplexField& v, const RieszSpec& spec) {
    auto m = riesz_multiplier(v.grid(), spec);
    const auto c = forward_coeffs(v);
    const double s = pairwise_sum_indexed(
        0, c.size(), [&](std::size_t i) { return (*m)[i] * std::norm(c[i]); });
    return v.grid().box_volume() * s;
}

namespace {
void check_hartree_exponent(int dim, double beta, double q) {
    const double nd = static_cast<double>(dim);
    const double lo = 1.0 + beta / nd;
    const double hi = dim >= 3 ? (nd + beta) / (nd - 2.0) : std::numeric_limits<double>::infinity();
    if (!(q > lo && q < hi))
        throw std::invalid_argument("hartree_energy: q outside (1+beta/N, (N+beta)/(N-2)_+)");
}
}  // namespace

double hartree_energy(const ComplexField& u, double q, const RieszSpec& spec) {
    spec.validate(u.grid().dim());
    check_hartree_exponent(u.grid().dim(), spec.beta, q);
    ComplexField v = make_uninitialized(u.grid_ptr());
    const auto& uu = u.values();
    for (std::size_t i = 0; i < uu.size(); ++i)
        v[i] = cplx(std::pow(std::norm(uu[i]), 0.5 * q), 0.0);
    return hartree_pairing(v, spec);
}

void export_multiplier_csv(const std::filesystem::path& path, const Grid& grid,
                           const RieszSpec& spec) {
    auto m = riesz_multiplier(grid, spec);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("export_multiplier_csv: cannot open " + path.string());
    os << "k,m\n";
    os.precision(17);
    const auto& k2 = grid.k_squared();
    for (std::size_t i = 0; i < m->size(); ++i)
        os << std::sqrt(k2[i]) << ',' << (*m)[i] << '\n';
}

}  // namespace waveorbit
