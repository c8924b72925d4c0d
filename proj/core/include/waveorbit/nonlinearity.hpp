#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "waveorbit/field.hpp"
#include "waveorbit/riesz.hpp"

namespace waveorbit {

// Focusing nonlinearities supported by the model, f(u) =
//   Power         |u|^{p-1} u
//   Hartree       (I_beta * |u|^q) |u|^{q-2} u
//   DoublePower   |u|^{p1-1} u + |u|^{p2-1} u
//   DoubleHartree (I_beta * |u|^{q1}) |u|^{q1-2} u + (I_beta * |u|^{q2}) |u|^{q2-2} u
//   Mixed         (I_beta * |u|^q)  |u|^{q-2} u + |u|^{p-1} u
struct PowerNL {
    double p;
};
struct HartreeNL {
    double q;
    double beta;
};
struct DoublePowerNL {
    double p1, p2;
};
struct DoubleHartreeNL {
    double q1, q2, beta;
};
struct MixedNL {
    double q, beta, p;
};

using NonlinearitySpec = std::variant<PowerNL, HartreeNL, DoublePowerNL, DoubleHartreeNL, MixedNL>;

// Throws std::invalid_argument naming the violated Type 1-5 exponent range.
void validate(const NonlinearitySpec& spec, int dim);

// Flattened component view: every nonlinearity is a sum of power and Hartree
// pieces.
struct NLComponent {
    enum class Kind { Power, Hartree } kind;
    double exponent;              // p or q
    double beta = 0.0;            // Hartree only
};
std::vector<NLComponent> components(const NonlinearitySpec& spec);

// Tagged text form, e.g. power(p=3), hartree(q=2,beta=1),
// double_power(p1=2,p2=3), double_hartree(q1=1.8,q2=2,beta=1),
// mixed(q=2,beta=1,p=3).
std::string to_string(const NonlinearitySpec& spec);
NonlinearitySpec parse_nonlinearity(const std::string& text);

enum class Criticality { Subcritical, Critical, Supercritical };
std::string to_string(Criticality c);

struct ComponentClass {
    NLComponent component;
    double critical_exponent;
    Criticality label;
};
struct Classification {
    std::vector<ComponentClass> per_component;
    Criticality overall;  // worst component
};
// L2-criticality against p_c = 1 + 4/N and q_c = 1 + (2+beta)/N.
Classification classify(const NonlinearitySpec& spec, int dim);

struct RieszOptions {
    ZeroModeConvention convention = ZeroModeConvention::TruncationMatched;
    double explicit_zero_mode = 0.0;

    RieszSpec spec_for(double beta) const {
        return RieszSpec{beta, convention, explicit_zero_mode};
    }
};

// f(u); gauge covariant by construction (all amplitude factors are functions
// of |u|^2 only).
ComplexField apply_nonlinearity(const ComplexField& u, const NonlinearitySpec& spec,
                                const RieszOptions& riesz = {});

// int F(u) dx, the positive quantity subtracted in the energy:
// sum of (1/(p+1)) int |u|^{p+1} and (1/(2q)) int (I_beta*|u|^q)|u|^q.
double nonlinear_energy(const ComplexField& u, const NonlinearitySpec& spec,
                        const RieszOptions& riesz = {});

// Re<f(u), u> = sum of int |u|^{p+1} and int (I_beta*|u|^q)|u|^q.
double nonlinear_pairing(const ComplexField& u, const NonlinearitySpec& spec,
                         const RieszOptions& riesz = {});

// Real gauge factor g with f(u) = g(|u|^2, x) u; used by the splitting
// propagator's phase rotation.
std::vector<double> nonlinear_gauge_factor(const ComplexField& u, const NonlinearitySpec& spec,
                                           const RieszOptions& riesz = {});

}  // namespace waveorbit
