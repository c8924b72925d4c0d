#include "waveorbit/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "waveorbit/bounds.hpp"
#include "waveorbit/constants.hpp"
#include "waveorbit/field_io.hpp"
#include "waveorbit/log.hpp"
#include "waveorbit/riesz.hpp"

namespace waveorbit {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

fs::path resolve_out_dir(const ExperimentConfig& cfg, const RunOverrides& ov) {
    if (!ov.out_dir.empty()) return ov.out_dir;
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv("WAVEORBIT_OUT")) return fs::path(env) / cfg.command;
    return fs::path("out") / cfg.command;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoull(tok));
    return out;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

// Every Design-Decision setting in force, for auditability.
ordered_json settings_json(const ExperimentConfig& cfg, const ProblemSpec& prob) {
    ordered_json s;
    s["reg_eps_effective"] = prob.potential.effective_reg_eps(*prob.grid);
    s["riesz_zero_mode_convention"] = to_string(prob.riesz.convention);
    double zm = 0.0;
    bool have_beta = false;
    for (const auto& c : components(prob.nonlinearity))
        if (c.kind == NLComponent::Kind::Hartree) {
            zm = prob.riesz.spec_for(c.beta).zero_mode(*prob.grid);
            have_beta = true;
            break;
        }
    if (have_beta) s["riesz_zero_mode_value"] = zm;
    s["lemma22_tau"] = cfg.lemma22_tau;
    s["lemma22_tau_effective"] = lemma22_effective_tau(prob.potential.alpha, prob.dim(),
                                                       cfg.lemma22_tau);
    s["spectral_normalization"] = "forward carries 1/M^N; Parseval ||u||_2^2 = L^N sum|c_k|^2";
    s["stability_budget_note"] = "horizon and envelope constants are artifact acceptance choices";
    return s;
}

struct Manifest {
    ordered_json j;
    fs::path dir;

    Manifest(const ExperimentConfig& cfg, const ProblemSpec& prob, const fs::path& out) : dir(out) {
        j["version"] = "0.1.0";
        j["command"] = cfg.command;
        j["timestamp"] = timestamp_utc();
        j["config"] = serialize_config(cfg);
        j["settings"] = settings_json(cfg, prob);
        j["artifacts"] = ordered_json::array();
        j["status"] = "ok";
    }
    void add_artifact(const std::string& name) { j["artifacts"].push_back(name); }
    void finish(int code, const std::string& note = "") {
        j["exit_code"] = code;
        if (!note.empty()) j["status"] = note;
        std::ofstream os(dir / "manifest.json");
        os << j.dump(2) << '\n';
    }
};

int run_ground_state(const ExperimentConfig& cfg, const fs::path& out, Manifest& man,
                     ThresholdTable& table) {
    const ProblemSpec prob = cfg.problem();
    const ComplexField u0 = init_guess(prob, cfg.init(), cfg.init_seed);
    const GroundStateResult res = normalized_gradient_flow(prob, u0, cfg.flow_params(), table);

    write_field(out / "field.bin", res.field);
    man.add_artifact("field.bin");
    ordered_json rj;
    rj["a_rho"] = res.a_rho;
    rj["omega"] = res.omega;
    rj["residual"] = res.residual;
    rj["iterations"] = res.iterations;
    rj["converged"] = res.converged;
    rj["grid"] = {{"dim", prob.dim()},
                  {"extent", prob.grid->extent(0)},
                  {"points", prob.grid->points(0)}};
    std::ofstream(out / "result.json") << rj.dump(2) << '\n';
    man.add_artifact("result.json");
    if (!res.converged) {
        man.finish(kNonConvergence, "non-convergence");
        return kNonConvergence;
    }
    return kOk;
}

int run_evolve(const ExperimentConfig& cfg, const fs::path& out, Manifest& man,
               ThresholdTable& table) {
    (void)table;
    const ProblemSpec prob = cfg.problem();
    ComplexField u0 = cfg.evolve_initial.empty() ? init_guess(prob, cfg.init(), cfg.init_seed)
                                                 : read_field(cfg.evolve_initial);
    EvolveOptions opts;
    opts.monitor_every = cfg.evolve_monitor_every;
    EvolveResult ev = evolve(u0, prob, cfg.evolve_T, cfg.evolve_dt, opts);
    write_trajectory_csv((out / "trajectory.csv").string(), ev.record);
    man.add_artifact("trajectory.csv");
    write_field(out / "final_field.bin", ev.final_state);
    man.add_artifact("final_field.bin");
    if (ev.record.terminated == Termination::BlowupFlagged)
        man.j["status"] = "blowup_flagged";
    return kOk;
}

int run_stability(const ExperimentConfig& cfg, const fs::path& out, Manifest& man,
                  ThresholdTable& table, const RunOverrides& ov) {
    const ProblemSpec prob = cfg.problem();
    const ComplexField u0 = init_guess(prob, cfg.init(), cfg.init_seed);
    const GroundStateResult gs = normalized_gradient_flow(prob, u0, cfg.flow_params(), table);
    if (!gs.converged) {
        man.finish(kNonConvergence, "ground state non-convergence");
        return kNonConvergence;
    }
    write_field(out / "ground_state.bin", gs.field);
    man.add_artifact("ground_state.bin");

    StabilityOptions opts = cfg.stability_options();
    opts.workers = ov.workers > 0 ? ov.workers : 1;
    std::vector<std::uint64_t> seeds =
        ov.seed_list.empty() ? cfg.stability_seeds : parse_seed_list(ov.seed_list);
    const StabilityReport rep = stability_experiment(prob, gs, cfg.stability_deltas,
                                                     cfg.stability_T, seeds, opts, table);
    std::ofstream(out / "report.json") << stability_report_json(rep) << '\n';
    man.add_artifact("report.json");
    write_stability_csv((out / "cells.csv").string(), rep);
    man.add_artifact("cells.csv");
    return kOk;
}

int run_constants(const ExperimentConfig& cfg, const fs::path& out, Manifest& man,
                  ThresholdTable& table) {
    for (const auto& kind : cfg.constants_kinds) {
        const ReferenceKind rk = kind == "Q" ? ReferenceKind::Q : ReferenceKind::W;
        for (double expo : cfg.constants_exponents) {
            auto entry = table.require(rk, cfg.dim, expo,
                                       rk == ReferenceKind::W ? cfg.constants_beta : 0.0,
                                       cfg.constants_tol);
            log_info("threshold ", kind, " N=", cfg.dim, " exponent=", expo,
                     " mass_sq=", entry.mass_sq);
        }
    }
    table.save();
    man.add_artifact("thresholds.csv");

    if (cfg.constants_dump_multiplier && cfg.constants_beta > 0.0) {
        const ProblemSpec prob = cfg.problem();
        export_multiplier_csv(out / "multiplier.csv", *prob.grid,
                              prob.riesz.spec_for(cfg.constants_beta));
        man.add_artifact("multiplier.csv");
    }
    return kOk;
}

int run_check(const ExperimentConfig& cfg, const fs::path& out, Manifest& man,
              ThresholdTable& table) {
    const ProblemSpec prob = cfg.problem();
    const auto verdicts = check_theorem_conditions(prob, table);
    ordered_json vj = ordered_json::array();
    for (const auto& v : verdicts) {
        ordered_json e;
        e["theorem"] = v.theorem_id;
        e["case"] = v.case_id;
        e["applies"] = v.applies;
        if (v.threshold_used) e["threshold_used"] = *v.threshold_used;
        e["margin"] = v.margin;
        e["detail"] = v.detail;
        vj.push_back(e);
    }
    std::ofstream(out / "verdicts.json") << vj.dump(2) << '\n';
    man.add_artifact("verdicts.json");
    return kOk;
}

}  // namespace

int run(const ExperimentConfig& cfg, const RunOverrides& overrides) {
    fs::path out;
    try {
        out = resolve_out_dir(cfg, overrides);
        fs::create_directories(out);
    } catch (const std::exception& e) {
        log_warn("runner: ", e.what());
        return kIoError;
    }

    ProblemSpec prob;
    try {
        prob = cfg.problem();
    } catch (const std::exception& e) {
        log_warn("runner: ", e.what());
        return kConfigError;
    }

    Manifest man(cfg, prob, out);
    const fs::path table_path =
        cfg.thresholds_path.empty() ? out / "thresholds.csv" : fs::path(cfg.thresholds_path);
    ThresholdTable table(table_path);

    try {
        int code = kOk;
        if (cfg.command == "ground-state")
            code = run_ground_state(cfg, out, man, table);
        else if (cfg.command == "evolve")
            code = run_evolve(cfg, out, man, table);
        else if (cfg.command == "stability")
            code = run_stability(cfg, out, man, table, overrides);
        else if (cfg.command == "constants")
            code = run_constants(cfg, out, man, table);
        else if (cfg.command == "check")
            code = run_check(cfg, out, man, table);
        else
            return kConfigError;
        if (code == kOk) man.finish(kOk);
        return code;
    } catch (const RefusedSupercritical& e) {
        log_warn("runner: ", e.what());
        man.finish(kRefusedSupercritical, e.what());
        return kRefusedSupercritical;
    } catch (const RefusedAboveThreshold& e) {
        log_warn("runner: ", e.what());
        man.finish(kRefusedAboveThreshold, e.what());
        return kRefusedAboveThreshold;
    } catch (const ConfigError& e) {
        log_warn("runner: ", e.what());
        man.finish(kConfigError, e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        log_warn("runner: ", e.what());
        man.finish(kIoError, e.what());
        return kIoError;
    }
}

}  // namespace waveorbit
