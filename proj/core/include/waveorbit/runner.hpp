#pragma once

#include <string>

#include "waveorbit/config.hpp"

namespace waveorbit {

// Process exit codes of the batch runner.
enum ExitCode {
    kOk = 0,
    kConfigError = 1,
    kRefusedSupercritical = 2,
    kRefusedAboveThreshold = 3,
    kNonConvergence = 4,
    kIoError = 5,
};

struct RunOverrides {
    std::string out_dir;       // --out
    int workers = 0;           // --workers (0 = config/serial)
    std::string seed_list;     // --seed-list, comma separated
};

// Executes the config's command, writing a manifest plus command-specific
// artifacts under the resolved output directory. Returns an ExitCode.
int run(const ExperimentConfig& cfg, const RunOverrides& overrides = {});

}  // namespace waveorbit
