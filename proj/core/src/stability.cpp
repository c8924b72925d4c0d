#include "waveorbit/stability.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "waveorbit/random_fields.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

namespace {

// |sum_k w_k exp(i k.s)| at an arbitrary shift s (direct evaluation).
double correlation_at(const Grid& g, const std::vector<cplx>& w, const std::array<double, 3>& s) {
    cplx acc{};
    for (std::int64_t i = 0; i < g.point_count(); ++i) {
        const auto idx = g.unravel(i);
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d)
            phase += g.wavenumber(d, idx[static_cast<std::size_t>(d)]) *
                     s[static_cast<std::size_t>(d)];
        acc += w[static_cast<std::size_t>(i)] * cplx(std::cos(phase), std::sin(phase));
    }
    return std::abs(acc);
}

}  // namespace

double orbit_distance(const ComplexField& u, const ComplexField& v, bool translation_search) {
    require_same_grid(u, v, "orbit_distance");
    const Grid& g = u.grid();
    const auto cu = forward_coeffs(u);
    const auto cv = forward_coeffs(v);
    const auto& k2 = g.k_squared();
    const double boxv = g.box_volume();

    const double nu = boxv * pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
                          return (1.0 + k2[i]) * std::norm(cu[i]);
                      });
    const double nv = boxv * pairwise_sum_indexed(0, cv.size(), [&](std::size_t i) {
                          return (1.0 + k2[i]) * std::norm(cv[i]);
                      });

    double best;
    if (!translation_search) {
        const cplx inner = pairwise_sum_indexed(0, cu.size(), [&](std::size_t i) {
            return (1.0 + k2[i]) * cu[i] * std::conj(cv[i]);
        });
        best = boxv * std::abs(inner);
    } else {
        // C(s) = L^N sum_k (1+|k|^2) cu conj(cv) e^{iks}; grid values come from
        // one inverse transform, then a per-axis parabolic refinement.
        std::vector<cplx> w(cu.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 + k2[i]) * cu[i] * std::conj(cv[i]);
        ComplexField corr = inverse_coeffs(u.grid_ptr(), w);
        std::int64_t arg = 0;
        double cmax = -1.0;
        for (std::int64_t i = 0; i < g.point_count(); ++i) {
            const double a = std::abs(corr[static_cast<std::size_t>(i)]);
            if (a > cmax) {
                cmax = a;
                arg = i;
            }
        }
        const auto idx = g.unravel(arg);
        std::array<double, 3> s{0, 0, 0};
        for (int d = 0; d < g.dim(); ++d)
            s[static_cast<std::size_t>(d)] = g.coord(d, idx[static_cast<std::size_t>(d)]);
        // parabolic sub-grid refinement along each axis
        for (int d = 0; d < g.dim(); ++d) {
            const double h = g.spacing(d);
            auto at = [&](double off) {
                auto sp = s;
                sp[static_cast<std::size_t>(d)] += off;
                return correlation_at(g, w, sp);
            };
            const double cm = at(-h), c0 = at(0.0), cp = at(h);
            const double denom = cm - 2.0 * c0 + cp;
            if (denom < 0.0) {
                const double off = 0.5 * (cm - cp) / denom;
                if (std::abs(off) < 1.0) s[static_cast<std::size_t>(d)] += off * h;
            }
        }
        best = boxv * std::max(cmax, correlation_at(g, w, s));
    }
    const double d2 = nu + nv - 2.0 * best;
    return std::sqrt(std::max(0.0, d2));
}

PerturbMode parse_perturb_mode(const std::string& s) {
    if (s == "random") return PerturbMode::Random;
    if (s == "gradient_direction") return PerturbMode::GradientDirection;
    if (s == "translate") return PerturbMode::Translate;
    throw std::invalid_argument("perturb mode must be random|gradient_direction|translate");
}

std::string to_string(PerturbMode m) {
    switch (m) {
        case PerturbMode::Random: return "random";
        case PerturbMode::GradientDirection: return "gradient_direction";
        case PerturbMode::Translate: return "translate";
    }
    return "?";
}

ComplexField perturb(const ComplexField& gs, double delta, PerturbMode mode, std::uint64_t seed,
                     bool renormalize, const ProblemSpec* prob) {
    if (delta < 0.0) throw std::invalid_argument("perturb: delta must be >= 0");
    ComplexField w = ComplexField::zeros(gs.grid_ptr());
    switch (mode) {
        case PerturbMode::Random:
            w = random_band_limited(gs.grid_ptr(), seed);
            break;
        case PerturbMode::GradientDirection: {
            if (!prob)
                throw std::invalid_argument("perturb: gradient_direction needs the problem spec");
            ComplexField lap = minus_laplacian(gs);
            ComplexField f = apply_nonlinearity(gs, prob->nonlinearity, prob->riesz);
            auto vpot = sample_potential(gs.grid(), prob->potential);
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = lap[i] - (*vpot)[i] * gs[i] - f[i];  // E'(gs)
            break;
        }
        case PerturbMode::Translate: {
            std::array<double, 3> off{gs.grid().spacing(0), 0.0, 0.0};
            ComplexField sh = shift(gs, off);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = sh[i] - gs[i];
            break;
        }
    }
    const double wnorm = std::sqrt(h1_norm_sq(w));
    if (!(wnorm > 0.0)) throw std::runtime_error("perturb: degenerate direction");
    ComplexField out = gs;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta / wnorm * w[i];
    if (renormalize) {
        const double target = mass(gs);
        const double m = mass(out);
        const double s = std::sqrt(target / m);
        for (auto& z : out.values()) z *= s;
    }
    return out;
}

StabilityReport stability_experiment(const ProblemSpec& prob, const GroundStateResult& gs,
                                     const std::vector<double>& deltas, double T,
                                     const std::vector<std::uint64_t>& seeds,
                                     const StabilityOptions& opts, ThresholdTable& thresholds) {
    if (!gs.converged)
        throw std::invalid_argument("stability_experiment: ground state did not converge");
    if (deltas.empty() || seeds.empty())
        throw std::invalid_argument("stability_experiment: need deltas and seeds");

    std::ostringstream notes;
    {
        const auto verdicts = check_theorem_conditions(prob, thresholds);
        bool any = false;
        for (const auto& v : verdicts)
            if (v.applies) {
                notes << "in-hypothesis: theorem " << v.theorem_id << " case " << v.case_id
                      << " (margin " << v.margin << "); ";
                any = true;
                break;
            }
        if (!any) notes << "out-of-hypothesis: no theorem case applies; ";
    }
    notes << "horizon T=" << T << ", dt=" << opts.dt << ", mode=" << to_string(opts.mode)
          << ", renormalize=" << (opts.renormalize ? "true" : "false") << "; ";

    struct Job {
        std::size_t di, si;
    };
    std::vector<Job> jobs;
    for (std::size_t di = 0; di < deltas.size(); ++di)
        for (std::size_t si = 0; si < seeds.size(); ++si) jobs.push_back({di, si});
    std::vector<StabilityCell> cells(jobs.size());

    auto run_job = [&](const Job& j) {
        const double delta = deltas[j.di];
        const std::uint64_t seed = seeds[j.si];
        ComplexField u0 = perturb(gs.field, delta, opts.mode, seed, opts.renormalize, &prob);
        EvolveOptions eopts;
        eopts.monitor_every = opts.monitor_every;
        eopts.reference = &gs.field;
        eopts.translation_search = opts.translation_search;
        EvolveResult ev = evolve(u0, prob, T, opts.dt, eopts);
        const auto& dist = *ev.record.orbital_dist_series;
        double sup = 0.0;
        for (double x : dist) sup = std::max(sup, x);
        cells[j.di * seeds.size() + j.si] =
            StabilityCell{delta, seed, dist.front(), sup, ev.record.terminated};
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        for (const auto& j : jobs) run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    run_job(jobs[i]);
                }
            });
        for (auto& th : pool) th.join();
    }

    StabilityReport rep;
    rep.deltas = deltas;
    rep.horizon_T = T;
    rep.cells = cells;
    rep.sup_dist.assign(deltas.size(), 0.0);
    rep.initial_dist.assign(deltas.size(), 0.0);
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            const auto& c = cells[di * seeds.size() + si];
            rep.sup_dist[di] = std::max(rep.sup_dist[di], c.sup_dist);
            rep.initial_dist[di] = std::max(rep.initial_dist[di], c.initial_dist);
            if (c.terminated == Termination::BlowupFlagged)
                notes << "blowup flagged at delta=" << c.delta << " seed=" << c.seed << "; ";
        }
    }
    rep.verdict_notes = notes.str();
    return rep;
}

void write_stability_csv(const std::string& path, const StabilityReport& report) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_stability_csv: cannot open " + path);
    os << "delta,seed,sup_dist,initial_dist,terminated\n";
    os.precision(17);
    for (const auto& c : report.cells)
        os << c.delta << ',' << c.seed << ',' << c.sup_dist << ',' << c.initial_dist << ','
           << to_string(c.terminated) << '\n';
}

std::string stability_report_json(const StabilityReport& report) {
    nlohmann::ordered_json j;
    j["horizon_T"] = report.horizon_T;
    j["deltas"] = report.deltas;
    j["sup_dist"] = report.sup_dist;
    j["initial_dist"] = report.initial_dist;
    j["verdict_notes"] = report.verdict_notes;
    auto& cells = j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : report.cells) {
        nlohmann::ordered_json cj;
        cj["delta"] = c.delta;
        cj["seed"] = c.seed;
        cj["sup_dist"] = c.sup_dist;
        cj["initial_dist"] = c.initial_dist;
        cj["terminated"] = to_string(c.terminated);
        cells.push_back(cj);
    }
    return j.dump(2);
}

}  // namespace waveorbit
