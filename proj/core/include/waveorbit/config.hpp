#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waveorbit/energy.hpp"
#include "waveorbit/ground_state.hpp"
#include "waveorbit/stability.hpp"

namespace waveorbit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Batch experiment description, parsed from strict `key = value` text
// (# comments, dotted keys, unknown keys rejected). All defaults are filled
// at parse time and echoed by serialize(), so serialize(parse(t)) is a fixed
// point.
struct ExperimentConfig {
    std::string command = "ground-state";  // ground-state|evolve|stability|constants|check

    // problem block
    int dim = 1;
    double extent = 40.0;
    std::int64_t points = 1024;
    double gamma = 1.0;
    double alpha = 0.5;
    std::optional<double> reg_eps;  // empty = auto (h/2)
    double rho = 1.0;
    std::string nonlinearity = "power(p=3)";

    // riesz block
    std::string riesz_zero_mode = "truncation";  // truncation|zeta|zero|<number>

    // lemma22 block
    double lemma22_tau = 0.1;

    // solver block
    double solver_dt = 0.1;
    double solver_tol = 1e-8;
    int solver_max_iters = 50000;

    // init block
    std::string init_kind = "gaussian";
    std::uint64_t init_seed = 1;

    // evolve block
    double evolve_T = 10.0;
    double evolve_dt = 1e-3;
    int evolve_monitor_every = 10;
    std::string evolve_initial;  // optional path to a field record

    // stability block
    std::vector<double> stability_deltas{1e-1, 1e-2, 1e-3};
    std::vector<std::uint64_t> stability_seeds{1};
    double stability_T = 50.0;
    double stability_dt = 1e-3;
    std::string stability_mode = "random";
    bool stability_renormalize = false;
    int stability_monitor_every = 10;
    bool stability_translation_search = false;

    // constants block
    std::vector<std::string> constants_kinds{"Q"};
    std::vector<double> constants_exponents{3.0};
    double constants_beta = 0.0;
    double constants_tol = 1e-10;
    bool constants_dump_multiplier = false;

    // check/threshold sharing
    std::string thresholds_path;  // optional shared CSV; default <out>/thresholds.csv

    std::string output_dir;  // empty = resolve from --out / WAVEORBIT_OUT / ./out

    // Derived objects. Throws ConfigError citing the violated constraint.
    ProblemSpec problem() const;
    InitKind init() const;
    StabilityOptions stability_options() const;
    FlowParams flow_params() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace waveorbit
