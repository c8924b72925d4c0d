#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "waveorbit/energy.hpp"
#include "waveorbit/theorems.hpp"

namespace waveorbit {

struct GroundStateResult {
    ComplexField field;
    double a_rho;      // attained energy
    double omega;      // frequency from the stationary equation
    double residual;   // Euler-Lagrange residual at the last iterate
    int iterations;
    bool converged;
};

struct RefusedSupercritical : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RefusedAboveThreshold : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitKind { Gaussian, Sech, SeededRandom };
InitKind parse_init_kind(const std::string& s);
std::string to_string(InitKind k);

// Deterministic initial data of exact mass rho.
ComplexField init_guess(const ProblemSpec& prob, InitKind kind, std::uint64_t seed = 0);

struct FlowParams {
    double dt = 0.1;
    double tol = 1e-8;
    int max_iters = 50000;
    int residual_every = 10;  // EL-residual check cadence
    // Accepted steps must not raise the energy beyond this roundoff
    // allowance (relative to max(1, |E|)); the energy functional itself is
    // only reproducible to ~1e-14 near a minimizer.
    double energy_slack = 1e-13;
    // observer(iteration, energy, residual, omega); residual < 0 between checks
    std::function<void(int, double, double, double)> observer;
};

// Normalized gradient flow for A_rho = inf { E(u) : ||u||_2^2 = rho }:
// semi-implicit diffusion solved exactly in spectral space, explicit
// potential/nonlinear forcing, exact renormalization each step, dt halved on
// any energy increase. Refuses supercritical problems and critical problems
// at or above the mass threshold. Nonconvergence is reported through
// converged = false.
GroundStateResult normalized_gradient_flow(const ProblemSpec& prob, const ComplexField& u0,
                                           const FlowParams& params, ThresholdTable& thresholds);

struct ScanRow {
    double lambda;
    double total;
    double kinetic;      // ||grad u||^2 term (un-halved)
    double potential;    // gamma int V|u|^2 (un-halved)
    std::vector<double> nonlinear;  // int F_c per component
    double predicted_total;
    double predicted_kinetic;
    double predicted_potential;
    std::vector<double> predicted_nonlinear;
    bool aliased;
};

// Energy terms along the mass-preserving dilation family u_lambda, plus the
// analytic predictions lambda^2, lambda^alpha, lambda^{(p-1)N/2},
// lambda^{Nq-N-beta} propagated from the lambda = 1 row.
std::vector<ScanRow> dilation_energy_scan(const ComplexField& u, const ProblemSpec& prob,
                                          const std::vector<double>& lambdas);

void write_scan_csv(const std::string& path, const std::vector<ScanRow>& rows);

}  // namespace waveorbit
