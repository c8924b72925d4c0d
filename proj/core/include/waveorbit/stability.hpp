#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "waveorbit/ground_state.hpp"
#include "waveorbit/propagator.hpp"

namespace waveorbit {

// min over the global phase of ||u - e^{i theta} v||_{H^1}, in closed form
//   sqrt(||u||_H1^2 + ||v||_H1^2 - 2 |<u,v>_H1|).
// With translation_search the minimum is additionally taken over grid shifts
// (spectral cross-correlation argmax, quadratically refined per axis); only
// meaningful when translations are symmetries (gamma = 0).
double orbit_distance(const ComplexField& u, const ComplexField& v,
                      bool translation_search = false);

enum class PerturbMode { Random, GradientDirection, Translate };
PerturbMode parse_perturb_mode(const std::string& s);
std::string to_string(PerturbMode m);

// gs + delta * w with ||w||_{H^1} = 1, deterministic per (mode, seed); with
// renormalize the result is rescaled back to mass(gs).
ComplexField perturb(const ComplexField& gs, double delta, PerturbMode mode, std::uint64_t seed,
                     bool renormalize, const ProblemSpec* prob = nullptr);

struct StabilityCell {
    double delta;
    std::uint64_t seed;
    double initial_dist;
    double sup_dist;
    Termination terminated;
};

struct StabilityReport {
    std::vector<double> deltas;
    std::vector<double> sup_dist;      // max over seeds per delta
    std::vector<double> initial_dist;  // max over seeds per delta
    double horizon_T;
    std::string verdict_notes;
    std::vector<StabilityCell> cells;
};

struct StabilityOptions {
    PerturbMode mode = PerturbMode::Random;
    bool renormalize = false;
    int monitor_every = 10;
    double dt = 1e-3;
    int workers = 1;
    bool translation_search = false;
};

// Perturb-evolve-track experiment around a converged ground state: for each
// (delta, seed) cell the perturbed data is evolved to horizon T and the sup
// over recorded times of the orbital distance to the phase orbit of gs is
// taken. Cells run as independent jobs; aggregation is keyed, not
// order-dependent. Blow-up flags are recorded in verdict_notes, not thrown.
StabilityReport stability_experiment(const ProblemSpec& prob, const GroundStateResult& gs,
                                     const std::vector<double>& deltas, double T,
                                     const std::vector<std::uint64_t>& seeds,
                                     const StabilityOptions& opts, ThresholdTable& thresholds);

void write_stability_csv(const std::string& path, const StabilityReport& report);
std::string stability_report_json(const StabilityReport& report);

}  // namespace waveorbit
