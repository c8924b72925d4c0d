#include "waveorbit/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "waveorbit/log.hpp"
#include "waveorbit/random_fields.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

InitKind parse_init_kind(const std::string& s) {
    if (s == "gaussian") return InitKind::Gaussian;
    if (s == "sech") return InitKind::Sech;
    if (s == "seeded_random") return InitKind::SeededRandom;
    throw std::invalid_argument("init kind must be gaussian|sech|seeded_random, got '" + s + "'");
}

std::string to_string(InitKind k) {
    switch (k) {
        case InitKind::Gaussian: return "gaussian";
        case InitKind::Sech: return "sech";
        case InitKind::SeededRandom: return "seeded_random";
    }
    return "?";
}

namespace {

ComplexField rescale_to_mass(ComplexField u, double rho) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("init_guess: zero field cannot carry mass");
    const double s = std::sqrt(rho / m);
    for (auto& z : u.values()) z *= s;
    return u;
}

}  // namespace

ComplexField init_guess(const ProblemSpec& prob, InitKind kind, std::uint64_t seed) {
    const Grid& g = *prob.grid;
    if (kind == InitKind::SeededRandom) {
        ComplexField u = random_band_limited(prob.grid, seed);
        return rescale_to_mass(std::move(u), prob.rho);
    }
    ComplexField u = make_uninitialized(prob.grid);
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        double r2 = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            const double x = g.coord(d, idx[static_cast<std::size_t>(d)]);
            r2 += x * x;
        }
        const double v = kind == InitKind::Gaussian ? std::exp(-r2)
                                                    : 1.0 / std::cosh(std::sqrt(r2));
        u[static_cast<std::size_t>(i)] = cplx(v, 0.0);
    }
    return rescale_to_mass(std::move(u), prob.rho);
}

GroundStateResult normalized_gradient_flow(const ProblemSpec& prob, const ComplexField& u0,
                                           const FlowParams& params, ThresholdTable& thresholds) {
    prob.validate();
    if (u0.grid() != *prob.grid)
        throw std::invalid_argument("normalized_gradient_flow: initial data grid mismatch");

    const auto cls = classify(prob.nonlinearity, prob.dim());
    if (cls.overall == Criticality::Supercritical)
        throw RefusedSupercritical(
            "normalized_gradient_flow: supercritical component, A_rho = -infinity is possible");
    const auto gate = critical_mass_gate(prob, thresholds);
    if (!gate.ok)
        throw RefusedAboveThreshold("normalized_gradient_flow: " + gate.detail +
                                    " (margin " + std::to_string(gate.margin) + ")");

    const double rho = prob.rho;
    ComplexField u = rescale_to_mass(u0, rho);
    if (std::abs(mass(u0) - rho) > 1e-6 * rho)
        log_warn("normalized_gradient_flow: initial mass off target by ",
                 std::abs(mass(u0) - rho), ", renormalized");

    auto vpot = sample_potential(*prob.grid, prob.potential);
    const auto& k2 = prob.grid->k_squared();
    const double boxv = prob.grid->box_volume();

    double dt = params.dt;
    double energy = total_energy(u, prob);
    double residual = std::numeric_limits<double>::infinity();
    double omega = 0.0;
    int accept_streak = 0;
    int iter = 0;
    bool converged = false;

    for (; iter < params.max_iters; ++iter) {
        // forcing w = V u + f(u), treated explicitly
        ComplexField f = apply_nonlinearity(u, prob.nonlinearity, prob.riesz);
        ComplexField w = make_uninitialized(prob.grid);
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = (*vpot)[i] * u[i] + f[i];

        const auto cu = forward_coeffs(u);
        const auto cw = forward_coeffs(w);

        const double gradsq = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                                  return k2[i] * std::norm(cu[i]);
                              });
        const double pair_wu = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                                   return (cw[i] * std::conj(cu[i])).real();
                               });
        omega = (pair_wu - gradsq) / rho;

        // EL residual from spectral data, every residual_every iters
        const bool check = iter % std::max(1, params.residual_every) == 0;
        if (check) {
            const double res2 = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                                    return std::norm(k2[i] * cu[i] + omega * cu[i] - cw[i]);
                                });
            residual = std::sqrt(res2 / rho);
            if (residual <= params.tol) {
                if (params.observer) params.observer(iter, energy, residual, omega);
                converged = true;
                break;
            }
        }
        if (params.observer) params.observer(iter, energy, check ? residual : -1.0, omega);

        // semi-implicit step, dt halved on any energy increase (up to 20
        // halvings per step)
        bool accepted = false;
        for (int halvings = 0; halvings <= 20; ++halvings) {
            std::vector<cplx> cnext(cu.size());
            for (std::size_t i = 0; i < cu.size(); ++i)
                cnext[i] = (cu[i] + dt * cw[i]) / (1.0 + dt * k2[i]);
            ComplexField unext = inverse_coeffs(prob.grid, cnext);
            unext = rescale_to_mass(std::move(unext), rho);
            const double enext = total_energy(unext, prob);
            if (enext <= energy + params.energy_slack * std::max(1.0, std::abs(energy))) {
                u = std::move(unext);
                energy = enext;
                accepted = true;
                if (++accept_streak >= 50) {
                    dt = std::min(dt * 2.0, params.dt);
                    accept_streak = 0;
                }
                break;
            }
            accept_streak = 0;
            dt *= 0.5;
        }
        if (!accepted) {
            // no descent direction left at this precision; report the iterate
            break;
        }
    }

    // final diagnostics on the returned iterate
    residual = el_residual(u, prob);
    omega = frequency_rayleigh(u, prob);
    if (residual <= params.tol) converged = true;
    const double energy_final = total_energy(u, prob);

    double peak = 0.0;
    for (const auto& z : u.values()) peak = std::max(peak, std::abs(z));
    if (peak < 1e-8)
        log_warn("normalized_gradient_flow: minimizer amplitude ", peak,
                 " is degenerate (rho -> 0 regime)");

    return GroundStateResult{std::move(u), energy_final, omega, residual, iter, converged};
}

std::vector<ScanRow> dilation_energy_scan(const ComplexField& u, const ProblemSpec& prob,
                                          const std::vector<double>& lambdas) {
    prob.validate();
    const double nd = static_cast<double>(prob.dim());
    const auto comps = components(prob.nonlinearity);

    const EnergyBreakdown base = energy_breakdown(u, prob);

    std::vector<ScanRow> rows;
    rows.reserve(lambdas.size());
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw std::invalid_argument("dilation_energy_scan: lambda must be > 0");
        ScanRow row;
        row.lambda = lam;
        DilateResult d = dilate_checked(u, lam);
        row.aliased = d.aliased;
        const EnergyBreakdown b = energy_breakdown(d.field, prob);
        row.kinetic = b.kinetic;
        row.potential = b.potential;
        row.nonlinear = b.nonlinear;
        row.total = b.total();

        row.predicted_kinetic = std::pow(lam, 2.0) * base.kinetic;
        row.predicted_potential = std::pow(lam, prob.potential.alpha) * base.potential;
        row.predicted_nonlinear.resize(comps.size());
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const double expo = comps[c].kind == NLComponent::Kind::Power
                                    ? (comps[c].exponent - 1.0) * nd / 2.0
                                    : nd * comps[c].exponent - nd - comps[c].beta;
            row.predicted_nonlinear[c] = std::pow(lam, expo) * base.nonlinear[c];
        }
        double nl = 0.0;
        for (double x : row.predicted_nonlinear) nl += x;
        row.predicted_total = 0.5 * row.predicted_kinetic - 0.5 * row.predicted_potential - nl;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_scan_csv(const std::string& path, const std::vector<ScanRow>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_scan_csv: cannot open " + path);
    os << "lambda,total,kinetic,potential,nonlinear,pred_total,pred_kinetic,pred_potential,"
          "pred_nonlinear,aliased\n";
    os.precision(17);
    for (const auto& r : rows) {
        double nl = 0.0, pnl = 0.0;
        for (double x : r.nonlinear) nl += x;
        for (double x : r.predicted_nonlinear) pnl += x;
        os << r.lambda << ',' << r.total << ',' << r.kinetic << ',' << r.potential << ',' << nl
           << ',' << r.predicted_total << ',' << r.predicted_kinetic << ','
           << r.predicted_potential << ',' << pnl << ',' << (r.aliased ? 1 : 0) << '\n';
    }
}

}  // namespace waveorbit
