// Batch front end: parses an experiment config, runs the named command, and
// persists a manifest plus command-specific artifacts. See README for the
// config format and exit codes.

#include <CLI11.hpp>

#include <iostream>

#include "waveorbit/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"waveorbit - constrained ground states, critical thresholds and orbital "
                 "stability for Schroedinger-type equations with slowly decaying potential"};

    std::string config_path;
    waveorbit::RunOverrides overrides;
    std::string command_override;

    app.add_option("command", command_override,
                   "Optional command override: ground-state|evolve|stability|constants|check");
    app.add_option("--config", config_path, "Experiment config file (key = value text)")
        ->required();
    app.add_option("--out", overrides.out_dir, "Output directory (default: config output.dir, "
                                               "then $WAVEORBIT_OUT/<command>, then ./out)");
    app.add_option("--workers", overrides.workers, "Worker threads for independent jobs");
    app.add_option("--seed-list", overrides.seed_list, "Comma-separated seed list override");

    CLI11_PARSE(app, argc, argv);

    try {
        waveorbit::ExperimentConfig cfg = waveorbit::load_config(config_path);
        if (!command_override.empty()) cfg.command = command_override;
        return waveorbit::run(cfg, overrides);
    } catch (const waveorbit::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return waveorbit::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return waveorbit::kIoError;
    }
}
