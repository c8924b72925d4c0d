#include "waveorbit/propagator.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "waveorbit/spectral.hpp"
#include "waveorbit/stability.hpp"

namespace waveorbit {

std::string to_string(Termination t) {
    return t == Termination::Completed ? "completed" : "blowup_flagged";
}

namespace {

// in-place pointwise rotation u *= exp(i*theta*(V+g))
void phase_rotation(ComplexField& u, const ProblemSpec& prob,
                    const std::vector<double>& vpot, double theta) {
    const auto g = nonlinear_gauge_factor(u, prob.nonlinearity, prob.riesz);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = theta * (vpot[i] + g[i]);
        u[i] *= cplx(std::cos(a), std::sin(a));
    }
}

}  // namespace

ComplexField strang_step(const ComplexField& u, const ProblemSpec& prob, double dt) {
    if (dt == 0.0) throw std::invalid_argument("strang_step: dt must be nonzero");
    auto vpot = sample_potential(*prob.grid, prob.potential);
    const auto& k2 = prob.grid->k_squared();

    ComplexField w = u;
    phase_rotation(w, prob, *vpot, 0.5 * dt);
    auto c = forward_coeffs(w);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double a = -dt * k2[i];
        c[i] *= cplx(std::cos(a), std::sin(a));
    }
    w = inverse_coeffs(prob.grid, c);
    phase_rotation(w, prob, *vpot, 0.5 * dt);
    return w;
}

EvolveResult evolve(const ComplexField& u0, const ProblemSpec& prob, double T, double dt,
                    const EvolveOptions& opts) {
    if (!(T > 0.0)) throw std::invalid_argument("evolve: T must be positive");
    if (dt == 0.0) throw std::invalid_argument("evolve: dt must be nonzero");
    for (const auto& z : u0.values())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("evolve: non-finite input");

    const std::int64_t steps = static_cast<std::int64_t>(std::llround(T / std::abs(dt)));
    const int every = std::max(1, opts.monitor_every);

    TrajectoryRecord rec;
    if (opts.reference) rec.orbital_dist_series.emplace();

    ComplexField u = u0;
    const double grad0 = std::sqrt(gradient_norm_sq(u));
    auto record_state = [&](double t) {
        rec.times.push_back(t);
        rec.mass_series.push_back(mass(u));
        rec.energy_series.push_back(total_energy(u, prob));
        rec.gradnorm_series.push_back(std::sqrt(gradient_norm_sq(u)));
        if (opts.reference)
            rec.orbital_dist_series->push_back(
                orbit_distance(u, *opts.reference, opts.translation_search));
        return rec.gradnorm_series.back();
    };
    record_state(0.0);

    for (std::int64_t s = 1; s <= steps; ++s) {
        u = strang_step(u, prob, dt);
        if (s % every == 0 || s == steps) {
            const double gn = record_state(static_cast<double>(s) * dt);
            if (!std::isfinite(gn) || gn > opts.blowup_factor * std::max(grad0, 1e-300)) {
                rec.terminated = Termination::BlowupFlagged;
                break;
            }
        }
    }
    return EvolveResult{std::move(rec), std::move(u)};
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    os << "t,mass,energy,gradnorm,dist\n";
    os.precision(17);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        os << rec.times[i] << ',' << rec.mass_series[i] << ',' << rec.energy_series[i] << ','
           << rec.gradnorm_series[i] << ',';
        if (rec.orbital_dist_series)
            os << (*rec.orbital_dist_series)[i];
        os << '\n';
    }
}

}  // namespace waveorbit
