#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveorbit/energy.hpp"

namespace waveorbit {

enum class Termination { Completed, BlowupFlagged };
std::string to_string(Termination t);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> mass_series;
    std::vector<double> energy_series;
    std::vector<double> gradnorm_series;            // ||grad u||_2
    std::optional<std::vector<double>> orbital_dist_series;
    Termination terminated = Termination::Completed;
};

// One Strang step: half phase rotation exp(i(dt/2)(V+g)), exact linear flow
// exp(-i dt |k|^2) in spectral space, second half rotation. Each substep is a
// pointwise phase rotation or a spectral unitary, so mass is conserved to
// machine precision. dt may be negative (backward evolution).
ComplexField strang_step(const ComplexField& u, const ProblemSpec& prob, double dt);

struct EvolveOptions {
    int monitor_every = 10;
    const ComplexField* reference = nullptr;   // orbital distance target
    bool translation_search = false;           // minimize distance over shifts too
    double blowup_factor = 1e6;                // gradient-norm growth cutoff
};

struct EvolveResult {
    TrajectoryRecord record;
    ComplexField final_state;
};

// Repeated Strang steps to horizon T (duration |T|, direction sign(dt)),
// recording conserved quantities every monitor_every steps. Flags blow-up
// when the gradient norm exceeds blowup_factor times its initial value or
// anything goes non-finite, and stops early.
EvolveResult evolve(const ComplexField& u0, const ProblemSpec& prob, double T, double dt,
                    const EvolveOptions& opts = {});

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec);

}  // namespace waveorbit
