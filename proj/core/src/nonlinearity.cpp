#include "waveorbit/nonlinearity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "waveorbit/spectral.hpp"
#include "waveorbit/summation.hpp"

namespace waveorbit {

namespace {

double power_upper(int dim) {
    return dim >= 3 ? (static_cast<double>(dim) + 2.0) / (static_cast<double>(dim) - 2.0)
                    : std::numeric_limits<double>::infinity();
}
double hartree_upper(int dim, double beta) {
    return dim >= 3 ? (static_cast<double>(dim) + beta) / (static_cast<double>(dim) - 2.0)
                    : std::numeric_limits<double>::infinity();
}

void check_power(double p, int dim, const char* type_name) {
    if (!(p > 1.0 && p < power_upper(dim)))
        throw std::invalid_argument(std::string(type_name) +
                                    " requires 1 < p < (N+2)/(N-2)_+ ; got p=" + std::to_string(p));
}
void check_hartree(double q, double beta, int dim, const char* type_name) {
    const double nd = static_cast<double>(dim);
    if (!(beta > 0.0 && beta < nd))
        throw std::invalid_argument(std::string(type_name) + " requires 0 < beta < N; got beta=" +
                                    std::to_string(beta));
    if (!(q > 1.0 + beta / nd && q < hartree_upper(dim, beta)))
        throw std::invalid_argument(std::string(type_name) +
                                    " requires 1+beta/N < q < (N+beta)/(N-2)_+ ; got q=" +
                                    std::to_string(q));
}

// shortest decimal string that parses back to the same double
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

}  // namespace

void validate(const NonlinearitySpec& spec, int dim) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PowerNL>) {
                check_power(s.p, dim, "Type 1");
            } else if constexpr (std::is_same_v<T, HartreeNL>) {
                check_hartree(s.q, s.beta, dim, "Type 2");
            } else if constexpr (std::is_same_v<T, DoublePowerNL>) {
                check_power(s.p1, dim, "Type 3");
                check_power(s.p2, dim, "Type 3");
                if (!(s.p1 < s.p2))
                    throw std::invalid_argument("Type 3 requires p1 < p2");
            } else if constexpr (std::is_same_v<T, DoubleHartreeNL>) {
                check_hartree(s.q1, s.beta, dim, "Type 4");
                check_hartree(s.q2, s.beta, dim, "Type 4");
                if (!(s.q1 < s.q2))
                    throw std::invalid_argument("Type 4 requires q1 < q2");
            } else if constexpr (std::is_same_v<T, MixedNL>) {
                check_hartree(s.q, s.beta, dim, "Type 5");
                check_power(s.p, dim, "Type 5");
            }
        },
        spec);
}

std::vector<NLComponent> components(const NonlinearitySpec& spec) {
    std::vector<NLComponent> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PowerNL>) {
                out.push_back({NLComponent::Kind::Power, s.p, 0.0});
            } else if constexpr (std::is_same_v<T, HartreeNL>) {
                out.push_back({NLComponent::Kind::Hartree, s.q, s.beta});
            } else if constexpr (std::is_same_v<T, DoublePowerNL>) {
                out.push_back({NLComponent::Kind::Power, s.p1, 0.0});
                out.push_back({NLComponent::Kind::Power, s.p2, 0.0});
            } else if constexpr (std::is_same_v<T, DoubleHartreeNL>) {
                out.push_back({NLComponent::Kind::Hartree, s.q1, s.beta});
                out.push_back({NLComponent::Kind::Hartree, s.q2, s.beta});
            } else if constexpr (std::is_same_v<T, MixedNL>) {
                out.push_back({NLComponent::Kind::Hartree, s.q, s.beta});
                out.push_back({NLComponent::Kind::Power, s.p, 0.0});
            }
        },
        spec);
    return out;
}

std::string to_string(const NonlinearitySpec& spec) {
    std::ostringstream ss;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PowerNL>) {
                ss << "power(p=" << fmt_double(s.p) << ")";
            } else if constexpr (std::is_same_v<T, HartreeNL>) {
                ss << "hartree(q=" << fmt_double(s.q) << ",beta=" << fmt_double(s.beta) << ")";
            } else if constexpr (std::is_same_v<T, DoublePowerNL>) {
                ss << "double_power(p1=" << fmt_double(s.p1) << ",p2=" << fmt_double(s.p2) << ")";
            } else if constexpr (std::is_same_v<T, DoubleHartreeNL>) {
                ss << "double_hartree(q1=" << fmt_double(s.q1) << ",q2=" << fmt_double(s.q2)
                   << ",beta=" << fmt_double(s.beta) << ")";
            } else if constexpr (std::is_same_v<T, MixedNL>) {
                ss << "mixed(q=" << fmt_double(s.q) << ",beta=" << fmt_double(s.beta)
                   << ",p=" << fmt_double(s.p) << ")";
            }
        },
        spec);
    return ss.str();
}

NonlinearitySpec parse_nonlinearity(const std::string& text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("nonlinearity: expected form name(key=value,...): " + text);
    std::string name = text.substr(0, open);
    std::map<std::string, double> kv;
    std::string args = text.substr(open + 1, close - open - 1);
    std::istringstream as(args);
    std::string tok;
    while (std::getline(as, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("nonlinearity: bad argument '" + tok + "'");
        std::string key = tok.substr(0, eq);
        key.erase(remove_if(key.begin(), key.end(), ::isspace), key.end());
        double val = 0.0;
        std::istringstream vs(tok.substr(eq + 1));
        if (!(vs >> val))
            throw std::invalid_argument("nonlinearity: bad numeric value in '" + tok + "'");
        kv[key] = val;
    }
    auto need = [&](const char* k) {
        auto it = kv.find(k);
        if (it == kv.end())
            throw std::invalid_argument(std::string("nonlinearity: missing argument ") + k);
        return it->second;
    };
    auto expect_count = [&](std::size_t n) {
        if (kv.size() != n)
            throw std::invalid_argument("nonlinearity: unexpected arguments in " + text);
    };
    if (name == "power") {
        expect_count(1);
        return PowerNL{need("p")};
    }
    if (name == "hartree") {
        expect_count(2);
        return HartreeNL{need("q"), need("beta")};
    }
    if (name == "double_power") {
        expect_count(2);
        return DoublePowerNL{need("p1"), need("p2")};
    }
    if (name == "double_hartree") {
        expect_count(3);
        return DoubleHartreeNL{need("q1"), need("q2"), need("beta")};
    }
    if (name == "mixed") {
        expect_count(3);
        return MixedNL{need("q"), need("beta"), need("p")};
    }
    throw std::invalid_argument("nonlinearity: unknown tag '" + name + "'");
}

std::string to_string(Criticality c) {
    switch (c) {
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Critical: return "critical";
        case Criticality::Supercritical: return "supercritical";
    }
    return "?";
}

Classification classify(const NonlinearitySpec& spec, int dim) {
    const double nd = static_cast<double>(dim);
    Classification cls;
    cls.overall = Criticality::Subcritical;
    for (const auto& c : components(spec)) {
        const double crit = c.kind == NLComponent::Kind::Power ? 1.0 + 4.0 / nd
                                                               : 1.0 + (2.0 + c.beta) / nd;
        Criticality label;
        if (std::abs(c.exponent - crit) <= 1e-9 * crit)
            label = Criticality::Critical;
        else if (c.exponent < crit)
            label = Criticality::Subcritical;
        else
            label = Criticality::Supercritical;
        cls.per_component.push_back({c, crit, label});
        if (static_cast<int>(label) > static_cast<int>(cls.overall)) cls.overall = label;
    }
    return cls;
}

namespace {

// |u|^q as a real field; q > 1 here so u = 0 maps to 0.
ComplexField amplitude_power(const ComplexField& u, double q) {
    ComplexField v = make_uninitialized(u.grid_ptr());
    const auto& uu = u.values();
    for (std::size_t i = 0; i < uu.size(); ++i)
        v[i] = cplx(uu[i] == cplx{} ? 0.0 : std::pow(std::norm(uu[i]), 0.5 * q), 0.0);
    return v;
}

struct HartreeWork {
    // one convolution per distinct (beta, q) pair per evaluation
    std::map<std::pair<double, double>, ComplexField> conv;
    const ComplexField* u;
    const RieszOptions* riesz;

    const ComplexField& convolved(double beta, double q) {
        auto key = std::make_pair(beta, q);
        auto it = conv.find(key);
        if (it == conv.end()) {
            auto density = amplitude_power(*u, q);
            it = conv.emplace(key, riesz_convolve(density, riesz->spec_for(beta))).first;
        }
        return it->second;
    }
};

constexpr double kAmplitudeFloor = 1e-200;  // |u|^2 below this counts as the zero of f

}  // namespace

ComplexField apply_nonlinearity(const ComplexField& u, const NonlinearitySpec& spec,
                                const RieszOptions& riesz) {
    HartreeWork work{{}, &u, &riesz};
    ComplexField out = ComplexField::zeros(u.grid_ptr());
    const auto& uu = u.values();
    for (const auto& c : components(spec)) {
        if (c.kind == NLComponent::Kind::Power) {
            const double e = 0.5 * (c.exponent - 1.0);
            for (std::size_t i = 0; i < uu.size(); ++i) {
                const double n2 = std::norm(uu[i]);
                if (n2 > 0.0) out[i] += std::pow(n2, e) * uu[i];
            }
        } else {
            const auto& conv = work.convolved(c.beta, c.exponent);
            const double e = 0.5 * (c.exponent - 2.0);
            for (std::size_t i = 0; i < uu.size(); ++i) {
                const double n2 = std::norm(uu[i]);
                if (n2 > kAmplitudeFloor) out[i] += conv[i].real() * std::pow(n2, e) * uu[i];
            }
        }
    }
    return out;
}

double nonlinear_energy(const ComplexField& u, const NonlinearitySpec& spec,
                        const RieszOptions& riesz) {
    double total = 0.0;
    const auto& uu = u.values();
    const double cellv = u.grid().cell_volume();
    for (const auto& c : components(spec)) {
        if (c.kind == NLComponent::Kind::Power) {
            const double e = 0.5 * (c.exponent + 1.0);
            const double s = pairwise_sum_indexed(
                0, uu.size(), [&](std::size_t i) { return std::pow(std::norm(uu[i]), e); });
            total += cellv * s / (c.exponent + 1.0);
        } else {
            auto density = amplitude_power(u, c.exponent);
            total += hartree_pairing(density, riesz.spec_for(c.beta)) / (2.0 * c.exponent);
        }
    }
    return total;
}

double nonlinear_pairing(const ComplexField& u, const NonlinearitySpec& spec,
                         const RieszOptions& riesz) {
    double total = 0.0;
    const auto& uu = u.values();
    const double cellv = u.grid().cell_volume();
    for (const auto& c : components(spec)) {
        if (c.kind == NLComponent::Kind::Power) {
            const double e = 0.5 * (c.exponent + 1.0);
            total += cellv * pairwise_sum_indexed(0, uu.size(), [&](std::size_t i) {
                         return std::pow(std::norm(uu[i]), e);
                     });
        } else {
            auto density = amplitude_power(u, c.exponent);
            total += hartree_pairing(density, riesz.spec_for(c.beta));
        }
    }
    return total;
}

std::vector<double> nonlinear_gauge_factor(const ComplexField& u, const NonlinearitySpec& spec,
                                           const RieszOptions& riesz) {
    HartreeWork work{{}, &u, &riesz};
    std::vector<double> g(u.size(), 0.0);
    const auto& uu = u.values();
    for (const auto& c : components(spec)) {
        if (c.kind == NLComponent::Kind::Power) {
            const double e = 0.5 * (c.exponent - 1.0);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double n2 = std::norm(uu[i]);
                if (n2 > 0.0) g[i] += std::pow(n2, e);
            }
        } else {
            const auto& conv = work.convolved(c.beta, c.exponent);
            const double e = 0.5 * (c.exponent - 2.0);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double n2 = std::norm(uu[i]);
                if (n2 > kAmplitudeFloor) g[i] += conv[i].real() * std::pow(n2, e);
            }
        }
    }
    return g;
}

}  // namespace waveorbit
