#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveorbit/energy.hpp"
#include "waveorbit/thresholds.hpp"

namespace waveorbit {

// One stability-theorem case verdict. margin > 0 iff every strict inequality
// of the case holds, and measures the distance to the binding one:
//   - threshold cases: 1 - rho/threshold,
//   - the combined critical case: 1 - [(sqrt(rho)/||Q||)^{4/N}
//                                      + (sqrt(rho)/||W||)^{(2beta+4)/N}],
//   - exponent/sign hypotheses: the smallest raw slack (gamma, p - 1,
//     p_c - p, ...).
struct TheoremVerdict {
    std::string theorem_id;  // "1.1" .. "1.5"
    int case_id;
    bool applies;
    std::optional<double> threshold_used;  // mass_sq of the reference state
    double margin;
    std::string detail;
};

// Evaluates every case of the theorem matching the problem's nonlinearity
// type. Throws when a needed critical threshold is missing and cannot be
// computed.
std::vector<TheoremVerdict> check_theorem_conditions(const ProblemSpec& prob,
                                                     ThresholdTable& thresholds);

// The mass gate used by the ground-state solver: subcritical components pass
// unconditionally; critical components demand rho below the matching
// threshold (combined condition when both a critical power and a critical
// Hartree part are present). Supercritical never passes.
struct MassGate {
    bool ok;
    double margin;        // same convention as TheoremVerdict::margin
    std::string detail;
};
MassGate critical_mass_gate(const ProblemSpec& prob, ThresholdTable& thresholds);

}  // namespace waveorbit
