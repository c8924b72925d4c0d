#include "waveorbit/reference_state.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "waveorbit/constants.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

namespace {

ComplexField gaussian_seed(std::shared_ptr<const Grid> grid) {
    ComplexField u = make_uninitialized(grid);
    const Grid& g = *grid;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double x = g.coord(d, idx[static_cast<std::size_t>(d)]);
            r2 += x * x;
        }
        u[static_cast<std::size_t>(i)] = cplx(std::exp(-r2), 0.0);
    }
    return u;
}

// N(u) for the defining equation, sign-safe via |u| powers.
ComplexField petviashvili_rhs(const ComplexField& u, ReferenceKind kind, double exponent,
                              std::optional<double> beta) {
    const auto& uu = u.values();
    ComplexField out = make_uninitialized(u.grid_ptr());
    if (kind == ReferenceKind::Q) {
        const double e = 0.5 * (exponent - 1.0);
        for (std::size_t i = 0; i < uu.size(); ++i) {
            const double n2 = std::norm(uu[i]);
            out[i] = n2 > 0.0 ? std::pow(n2, e) * uu[i] : cplx{};
        }
    } else {
        RieszSpec rs{*beta, ZeroModeConvention::TruncationMatched, 0.0};
        ComplexField dens = make_uninitialized(u.grid_ptr());
        for (std::size_t i = 0; i < uu.size(); ++i)
            dens[i] = cplx(std::pow(std::norm(uu[i]), 0.5 * exponent), 0.0);
        ComplexField conv = riesz_convolve(dens, rs);
        const double e = 0.5 * (exponent - 2.0);
        for (std::size_t i = 0; i < uu.size(); ++i) {
            const double n2 = std::norm(uu[i]);
            out[i] = n2 > 1e-200 ? conv[i].real() * std::pow(n2, e) * uu[i] : cplx{};
        }
    }
    return out;
}

}  // namespace

double boundary_decay_ratio(const ComplexField& u) {
    const Grid& g = u.grid();
    double peak = 0.0;
    for (const auto& z : u.values()) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        bool on_face = false;
        for (int d = 0; d < g.dim(); ++d)
            if (idx[static_cast<std::size_t>(d)] == 0) on_face = true;
        if (on_face) edge = std::max(edge, std::abs(u[static_cast<std::size_t>(i)]));
    }
    return edge / peak;
}

double radial_asymmetry(const ComplexField& u) {
    const Grid& g = u.grid();
    double peak = 0.0;
    for (const auto& z : u.values()) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;

    auto flat = [&](const std::array<std::int64_t, 3>& idx) {
        std::int64_t f = idx[0];
        if (g.dim() > 1) f = f * g.points(1) + idx[1];
        if (g.dim() > 2) f = f * g.points(2) + idx[2];
        return f;
    };
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        // reflection through the origin
        std::array<std::int64_t, 3> r{};
        for (int d = 0; d < g.dim(); ++d) {
            const std::int64_t m = g.points(d);
            r[static_cast<std::size_t>(d)] =
                (m - idx[static_cast<std::size_t>(d)]) % m;
        }
        worst = std::max(worst, std::abs(u[static_cast<std::size_t>(i)] -
                                         u[static_cast<std::size_t>(flat(r))]));
        // axis swaps (isotropic grids)
        if (g.dim() >= 2 && g.points(0) == g.points(1)) {
            auto s = idx;
            std::swap(s[0], s[1]);
            worst = std::max(worst, std::abs(u[static_cast<std::size_t>(i)] -
                                             u[static_cast<std::size_t>(flat(s))]));
        }
        if (g.dim() == 3 && g.points(1) == g.points(2)) {
            auto s = idx;
            std::swap(s[1], s[2]);
            worst = std::max(worst, std::abs(u[static_cast<std::size_t>(i)] -
                                             u[static_cast<std::size_t>(flat(s))]));
        }
    }
    return worst / peak;
}

ReferenceState petviashvili_solve(ReferenceKind kind, int dim, double exponent,
                                  std::optional<double> beta, std::shared_ptr<const Grid> grid,
                                  const PetviashviliOptions& opts) {
    if (grid->dim() != dim)
        throw std::invalid_argument("petviashvili_solve: grid dimension mismatch");
    if (kind == ReferenceKind::W && !beta)
        throw std::invalid_argument("petviashvili_solve: W needs beta");
    if (kind == ReferenceKind::Q && !(exponent > 1.0))
        throw std::invalid_argument("petviashvili_solve: need p > 1");

    const double gamma_stab = kind == ReferenceKind::Q
                                  ? exponent / (exponent - 1.0)
                                  : (2.0 * exponent - 1.0) / (2.0 * exponent - 2.0);

    ComplexField u = opts.initial ? *opts.initial : gaussian_seed(grid);
    const auto& k2 = grid->k_squared();
    const double boxv = grid->box_volume();

    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        const auto cu = forward_coeffs(u);
        ComplexField nq = petviashvili_rhs(u, kind, exponent, beta);
        const auto cn = forward_coeffs(nq);

        // residual of (1 - Lap) u = N(u) in spectral form
        const double unorm2 = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                                  return std::norm(cu[i]);
                              });
        const double rnorm2 = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                                  return std::norm((1.0 + k2[i]) * cu[i] - cn[i]);
                              });
        residual = std::sqrt(rnorm2 / unorm2);
        if (residual <= opts.tol) break;

        const double num = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                               return (1.0 + k2[i]) * std::norm(cu[i]);
                           });
        const double den = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                               return (cn[i] * std::conj(cu[i])).real();
                           });
        if (!(den > 0.0))
            throw PetviashviliError("petviashvili_solve: degenerate stabilizing factor");
        const double s = std::pow(num / den, gamma_stab);

        std::vector<cplx> cnew(cu.size());
        for (std::size_t i = 0; i < cu.size(); ++i) cnew[i] = s * cn[i] / (1.0 + k2[i]);
        u = inverse_coeffs(grid, cnew);
        for (auto& z : u.values()) z = cplx(z.real(), 0.0);  // iteration preserves realness
    }
    if (residual > opts.tol && opts.throw_on_max_iters)
        throw PetviashviliError("petviashvili_solve: no convergence after " +
                                std::to_string(opts.max_iters) + " iterations (residual " +
                                std::to_string(residual) + ")");
    if (opts.check_boundary) {
        const double edge = boundary_decay_ratio(u);
        if (edge > opts.boundary_decay) {
            std::ostringstream ss;
            ss << "petviashvili_solve: boundary decay " << edge << " exceeds "
               << opts.boundary_decay << "; enlarge the box";
            throw BoundaryDecayError(ss.str());
        }
    }
    ReferenceState ref{kind, exponent, beta, u, mass(u), residual, iter};
    return ref;
}

double threshold_mass(const ReferenceState& ref) { return ref.mass_sq; }

// Default grids for reference solves, sized so exp(-r) profiles decay below
// 1e-10 at the boundary.
std::shared_ptr<const Grid> default_reference_grid(int dim) {
    switch (dim) {
        case 1: return std::make_shared<const Grid>(make_grid(1, 60.0, 1024));
        case 2: return std::make_shared<const Grid>(make_grid(2, 56.0, 160));
        default: return std::make_shared<const Grid>(make_grid(3, 52.0, 80));
    }
}

double default_gn_mass(int dim, double p) {
    if (dim == 1) return std::sqrt(closed_form::q_mass_sq_1d(p));
    static std::mutex m;
    static std::map<std::pair<int, long long>, double> cache;
    const auto key = std::make_pair(dim, static_cast<long long>(std::llround(p * 1e12)));
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it == cache.end()) {
        // The mass norm converges long before the far tail does, and
        // non-integer exponents leave a fractional-power noise floor there, so
        // the boundary gate is relaxed for these internal lookups. Wide
        // low-exponent profiles still get a box growth retry.
        PetviashviliOptions opts;
        opts.boundary_decay = 1e-6;
        auto grid = default_reference_grid(dim);
        for (int attempt = 0;; ++attempt) {
            try {
                auto ref = petviashvili_solve(ReferenceKind::Q, dim, p, std::nullopt, grid, opts);
                it = cache.emplace(key, std::sqrt(ref.mass_sq)).first;
                break;
            } catch (const BoundaryDecayError&) {
                if (attempt >= 2) throw;
                grid = std::make_shared<const Grid>(
                    make_grid(dim, grid->extent(0) * 1.5, grid->points(0) * 3 / 2));
            }
        }
    }
    return it->second;
}

}  // namespace waveorbit
