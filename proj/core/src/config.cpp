#include "waveorbit/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace waveorbit {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        std::ostringstream ss;
        ss.precision(prec);
        ss << v;
        double back = 0.0;
        std::istringstream(ss.str()) >> back;
        if (back == v) return ss.str();
    }
    return std::to_string(v);
}

double to_double(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    double x;
    if (!(ss >> x) || !(ss >> std::ws).eof())
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    return x;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    std::int64_t x;
    if (!(ss >> x) || !(ss >> std::ws).eof())
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + v + "'");
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F&& conv) {
    std::vector<T> out;
    std::istringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(conv(key, tok));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' expects a nonempty list");
    return out;
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds{"ground-state", "evolve", "stability", "constants",
                                              "check"};
    return cmds;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: empty key or value on line " + std::to_string(lineno));
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = val;
    }

    ExperimentConfig cfg;
    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("command")) cfg.command = *v;
    if (std::find(known_commands().begin(), known_commands().end(), cfg.command) ==
        known_commands().end())
        throw ConfigError("config: unknown command '" + cfg.command + "'");

    if (auto v = take("problem.dim")) cfg.dim = static_cast<int>(to_int("problem.dim", *v));
    if (auto v = take("problem.extent")) cfg.extent = to_double("problem.extent", *v);
    if (auto v = take("problem.points")) cfg.points = to_int("problem.points", *v);
    if (auto v = take("problem.gamma")) cfg.gamma = to_double("problem.gamma", *v);
    if (auto v = take("problem.alpha")) cfg.alpha = to_double("problem.alpha", *v);
    if (auto v = take("problem.reg_eps")) {
        if (*v != "auto") cfg.reg_eps = to_double("problem.reg_eps", *v);
    }
    if (auto v = take("problem.rho")) cfg.rho = to_double("problem.rho", *v);
    if (auto v = take("nonlinearity")) cfg.nonlinearity = *v;
    if (auto v = take("riesz.zero_mode")) cfg.riesz_zero_mode = *v;
    if (auto v = take("lemma22.tau")) cfg.lemma22_tau = to_double("lemma22.tau", *v);
    if (auto v = take("solver.dt")) cfg.solver_dt = to_double("solver.dt", *v);
    if (auto v = take("solver.tol")) cfg.solver_tol = to_double("solver.tol", *v);
    if (auto v = take("solver.max_iters"))
        cfg.solver_max_iters = static_cast<int>(to_int("solver.max_iters", *v));
    if (auto v = take("init.kind")) cfg.init_kind = *v;
    if (auto v = take("init.seed")) cfg.init_seed = static_cast<std::uint64_t>(to_int("init.seed", *v));
    if (auto v = take("evolve.T")) cfg.evolve_T = to_double("evolve.T", *v);
    if (auto v = take("evolve.dt")) cfg.evolve_dt = to_double("evolve.dt", *v);
    if (auto v = take("evolve.monitor_every"))
        cfg.evolve_monitor_every = static_cast<int>(to_int("evolve.monitor_every", *v));
    if (auto v = take("evolve.initial")) cfg.evolve_initial = *v;
    if (auto v = take("stability.deltas"))
        cfg.stability_deltas = to_list<double>("stability.deltas", *v, to_double);
    if (auto v = take("stability.seeds"))
        cfg.stability_seeds = to_list<std::uint64_t>(
            "stability.seeds", *v, [](const std::string& k, const std::string& t) {
                return static_cast<std::uint64_t>(to_int(k, t));
            });
    if (auto v = take("stability.T")) cfg.stability_T = to_double("stability.T", *v);
    if (auto v = take("stability.dt")) cfg.stability_dt = to_double("stability.dt", *v);
    if (auto v = take("stability.mode")) cfg.stability_mode = *v;
    if (auto v = take("stability.renormalize"))
        cfg.stability_renormalize = to_bool("stability.renormalize", *v);
    if (auto v = take("stability.monitor_every"))
        cfg.stability_monitor_every = static_cast<int>(to_int("stability.monitor_every", *v));
    if (auto v = take("stability.translation_search"))
        cfg.stability_translation_search = to_bool("stability.translation_search", *v);
    if (auto v = take("constants.kinds"))
        cfg.constants_kinds = to_list<std::string>(
            "constants.kinds", *v, [](const std::string&, const std::string& t) { return t; });
    if (auto v = take("constants.exponents"))
        cfg.constants_exponents = to_list<double>("constants.exponents", *v, to_double);
    if (auto v = take("constants.beta")) cfg.constants_beta = to_double("constants.beta", *v);
    if (auto v = take("constants.tol")) cfg.constants_tol = to_double("constants.tol", *v);
    if (auto v = take("constants.dump_multiplier"))
        cfg.constants_dump_multiplier = to_bool("constants.dump_multiplier", *v);
    if (auto v = take("thresholds.path")) cfg.thresholds_path = *v;
    if (auto v = take("output.dir")) cfg.output_dir = *v;

    if (!kv.empty()) {
        std::ostringstream ss;
        ss << "config: unknown key(s):";
        for (const auto& [k, _] : kv) ss << " '" << k << "'";
        throw ConfigError(ss.str());
    }

    // fail fast on structural problems: grid, exponent ranges, enums
    cfg.problem();
    cfg.init();
    cfg.stability_options();
    for (const auto& k : cfg.constants_kinds)
        if (k != "Q" && k != "W")
            throw ConfigError("config: constants.kinds entries must be Q or W");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "command = " << cfg.command << '\n';
    os << "problem.dim = " << cfg.dim << '\n';
    os << "problem.extent = " << fmt_double(cfg.extent) << '\n';
    os << "problem.points = " << cfg.points << '\n';
    os << "problem.gamma = " << fmt_double(cfg.gamma) << '\n';
    os << "problem.alpha = " << fmt_double(cfg.alpha) << '\n';
    os << "problem.reg_eps = " << (cfg.reg_eps ? fmt_double(*cfg.reg_eps) : std::string("auto"))
       << '\n';
    os << "problem.rho = " << fmt_double(cfg.rho) << '\n';
    os << "nonlinearity = " << to_string(parse_nonlinearity(cfg.nonlinearity)) << '\n';
    os << "riesz.zero_mode = " << cfg.riesz_zero_mode << '\n';
    os << "lemma22.tau = " << fmt_double(cfg.lemma22_tau) << '\n';
    os << "solver.dt = " << fmt_double(cfg.solver_dt) << '\n';
    os << "solver.tol = " << fmt_double(cfg.solver_tol) << '\n';
    os << "solver.max_iters = " << cfg.solver_max_iters << '\n';
    os << "init.kind = " << cfg.init_kind << '\n';
    os << "init.seed = " << cfg.init_seed << '\n';
    os << "evolve.T = " << fmt_double(cfg.evolve_T) << '\n';
    os << "evolve.dt = " << fmt_double(cfg.evolve_dt) << '\n';
    os << "evolve.monitor_every = " << cfg.evolve_monitor_every << '\n';
    if (!cfg.evolve_initial.empty()) os << "evolve.initial = " << cfg.evolve_initial << '\n';
    os << "stability.deltas = ";
    for (std::size_t i = 0; i < cfg.stability_deltas.size(); ++i)
        os << (i ? "," : "") << fmt_double(cfg.stability_deltas[i]);
    os << '\n';
    os << "stability.seeds = ";
    for (std::size_t i = 0; i < cfg.stability_seeds.size(); ++i)
        os << (i ? "," : "") << cfg.stability_seeds[i];
    os << '\n';
    os << "stability.T = " << fmt_double(cfg.stability_T) << '\n';
    os << "stability.dt = " << fmt_double(cfg.stability_dt) << '\n';
    os << "stability.mode = " << cfg.stability_mode << '\n';
    os << "stability.renormalize = " << (cfg.stability_renormalize ? "true" : "false") << '\n';
    os << "stability.monitor_every = " << cfg.stability_monitor_every << '\n';
    os << "stability.translation_search = "
       << (cfg.stability_translation_search ? "true" : "false") << '\n';
    os << "constants.kinds = ";
    for (std::size_t i = 0; i < cfg.constants_kinds.size(); ++i)
        os << (i ? "," : "") << cfg.constants_kinds[i];
    os << '\n';
    os << "constants.exponents = ";
    for (std::size_t i = 0; i < cfg.constants_exponents.size(); ++i)
        os << (i ? "," : "") << fmt_double(cfg.constants_exponents[i]);
    os << '\n';
    os << "constants.beta = " << fmt_double(cfg.constants_beta) << '\n';
    os << "constants.tol = " << fmt_double(cfg.constants_tol) << '\n';
    os << "constants.dump_multiplier = " << (cfg.constants_dump_multiplier ? "true" : "false")
       << '\n';
    if (!cfg.thresholds_path.empty()) os << "thresholds.path = " << cfg.thresholds_path << '\n';
    if (!cfg.output_dir.empty()) os << "output.dir = " << cfg.output_dir << '\n';
    return os.str();
}

ProblemSpec ExperimentConfig::problem() const {
    ProblemSpec prob;
    try {
        prob.grid = std::make_shared<const Grid>(make_grid(dim, extent, points));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    prob.potential = PotentialSpec{gamma, alpha, reg_eps ? *reg_eps : -1.0};
    try {
        prob.nonlinearity = parse_nonlinearity(nonlinearity);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    prob.rho = rho;
    if (riesz_zero_mode == "truncation")
        prob.riesz.convention = ZeroModeConvention::TruncationMatched;
    else if (riesz_zero_mode == "zeta")
        prob.riesz.convention = ZeroModeConvention::ZetaMatched;
    else if (riesz_zero_mode == "zero")
        prob.riesz.convention = ZeroModeConvention::Zero;
    else {
        prob.riesz.convention = ZeroModeConvention::Explicit;
        prob.riesz.explicit_zero_mode = to_double("riesz.zero_mode", riesz_zero_mode);
    }
    try {
        prob.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return prob;
}

InitKind ExperimentConfig::init() const {
    try {
        return parse_init_kind(init_kind);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

StabilityOptions ExperimentConfig::stability_options() const {
    StabilityOptions o;
    try {
        o.mode = parse_perturb_mode(stability_mode);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    o.renormalize = stability_renormalize;
    o.monitor_every = stability_monitor_every;
    o.dt = stability_dt;
    o.translation_search = stability_translation_search;
    return o;
}

FlowParams ExperimentConfig::flow_params() const {
    FlowParams p;
    p.dt = solver_dt;
    p.tol = solver_tol;
    p.max_iters = solver_max_iters;
    return p;
}

}  // namespace waveorbit
