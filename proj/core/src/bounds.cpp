#include "waveorbit/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waveorbit/constants.hpp"
#include "waveorbit/spectral.hpp"

namespace waveorbit {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int dim) {
    const double nd = static_cast<double>(dim);
    return 2.0 * std::pow(kPi, 0.5 * nd) / std::tgamma(0.5 * nd);
}

// gamma*A*X^{b/2} <= (eps/2)*X + delta by weighted AM-GM, X = ||grad u||^2,
// 0 < b < 2.
double young_remainder(double gamma, double A, double b, double eps) {
    const double theta = 0.5 * b;
    const double c = eps / (gamma * b);
    return gamma * (1.0 - theta) * std::pow(A * std::pow(c, -theta), 1.0 / (1.0 - theta));
}

struct HoelderTerm {
    double kernel_norm;   // C_i  = || |x|^{-alpha} chi ||_{r or s}
    double dual;          // r' or s'
    double eta;           // 2(dual - 1), the GN index
    double grad_power;    // b = N - N/dual in (0, 2)
};

// Inner (ball) and outer Hoelder pieces of the split at radius 1.
std::pair<HoelderTerm, HoelderTerm> split_terms(double alpha, int dim, double tau) {
    const double nd = static_cast<double>(dim);
    const double base = nd / (nd - alpha);
    const double rp = base * (1.0 + tau);
    const double sp = base * (1.0 - tau);
    const double r = rp / (rp - 1.0);
    const double s = sp / (sp - 1.0);
    // r < N/alpha is the inner integrability condition, s > N/alpha the outer
    if (!(alpha * r < nd) || !(alpha * s > nd))
        throw std::logic_error("lemma22: Hoelder window violated; tau clamp failed");
    HoelderTerm inner{std::pow(sphere_area(dim) / (nd - alpha * r), 1.0 / r), rp,
                      2.0 * (rp - 1.0), nd - nd / rp};
    HoelderTerm outer{std::pow(sphere_area(dim) / (alpha * s - nd), 1.0 / s), sp,
                      2.0 * (sp - 1.0), nd - nd / sp};
    return {inner, outer};
}

// A_i = C_i * [C_GN(eta) m^{2+eta(2-N)/2}]^{1/dual}; the gradient power of the
// resulting bound is b/2 with b = eta*N/(2*dual) * 2 = N - N/dual.
double term_coefficient(const HoelderTerm& t, int dim, double mass_l2) {
    const double nd = static_cast<double>(dim);
    const double cgn = gn_constant(dim, t.eta, default_gn_mass(dim, t.eta + 1.0));
    const double mass_pow = 2.0 + t.eta * (2.0 - nd) / 2.0;
    return t.kernel_norm * std::pow(cgn * std::pow(mass_l2, mass_pow), 1.0 / t.dual);
}

}  // namespace

double lemma22_default_tau() { return 0.1; }

double lemma22_effective_tau(double alpha, int dim, double tau) {
    // s' > 1 needs tau < alpha/N; the N=3 interpolation window additionally
    // needs r' < N/(N-2), i.e. tau < (2-alpha)/(N-2). Half-distance clamps.
    const double nd = static_cast<double>(dim);
    double t = tau;
    t = std::min(t, 0.5 * alpha / nd);
    if (dim >= 3) t = std::min(t, 0.5 * (2.0 - alpha) / (nd - 2.0));
    return t;
}

double lemma22_delta(double eps, double mass_l2, const PotentialSpec& spec, int dim, double tau) {
    if (!(eps > 0.0)) throw std::invalid_argument("lemma22_delta: eps must be positive");
    if (mass_l2 < 0.0) throw std::invalid_argument("lemma22_delta: mass_l2 must be >= 0");
    spec.validate(dim);
    if (spec.gamma <= 0.0 || mass_l2 == 0.0) return 0.0;

    const double t = lemma22_effective_tau(spec.alpha, dim, tau);
    const auto [inner, outer] = split_terms(spec.alpha, dim, t);
    double delta = 0.0;
    for (const auto& term : {inner, outer}) {
        const double A = term_coefficient(term, dim, mass_l2);
        delta += young_remainder(spec.gamma, A, term.grad_power, eps);
    }
    return delta;
}

double verify_lower_bound(const ComplexField& u, double eps, const PotentialSpec& spec) {
    const double m2 = mass(u);
    const double delta = lemma22_delta(eps, std::sqrt(m2), spec, u.grid().dim());
    return eps * gradient_norm_sq(u) - potential_energy(u, spec) + delta;
}

std::optional<CoercivityBound> coercivity_bound(const ProblemSpec& prob, double rho,
                                                ThresholdTable& thresholds) {
    const int dim = prob.dim();
    const double nd = static_cast<double>(dim);
    const auto cls = classify(prob.nonlinearity, dim);
    if (cls.overall == Criticality::Supercritical) return std::nullopt;
    const double m = std::sqrt(rho);

    // critical components eat kinetic coefficient outright
    double crit_coeff = 0.0;
    for (const auto& pc : cls.per_component) {
        if (pc.label != Criticality::Critical) continue;
        if (pc.component.kind == NLComponent::Kind::Power) {
            const double qm = thresholds.require(ReferenceKind::Q, dim, pc.component.exponent, 0.0)
                                  .mass_sq;
            crit_coeff += 0.5 * std::pow(rho / qm, 2.0 / nd);
        } else {
            const double wm = thresholds
                                  .require(ReferenceKind::W, dim, pc.component.exponent,
                                           pc.component.beta)
                                  .mass_sq;
            crit_coeff += 0.5 * std::pow(rho / wm, (pc.component.beta + 2.0) / nd);
        }
    }
    const double slack = 0.5 - crit_coeff;
    if (!(slack > 0.0)) return std::nullopt;

    // split half the slack across the potential term and the subcritical
    // components; the other half stays as the kinetic coefficient
    int consumers = prob.potential.gamma > 0.0 ? 1 : 0;
    for (const auto& pc : cls.per_component)
        if (pc.label == Criticality::Subcritical) ++consumers;

    double bound = 0.0;
    if (consumers > 0) {
        const double eps_each = slack / static_cast<double>(consumers);
        if (prob.potential.gamma > 0.0)
            bound += 0.5 * lemma22_delta(eps_each, m, prob.potential, dim);
        for (const auto& pc : cls.per_component) {
            if (pc.label != Criticality::Subcritical) continue;
            const auto& c = pc.component;
            double A, b;
            if (c.kind == NLComponent::Kind::Power) {
                const double p = c.exponent;
                const double cgn = gn_constant(dim, p - 1.0, default_gn_mass(dim, p));
                A = cgn * std::pow(m, 2.0 + (p - 1.0) * (2.0 - nd) / 2.0) / (p + 1.0);
                b = (p - 1.0) * nd / 2.0;
            } else {
                const double q = c.exponent;
                const double wm = std::sqrt(
                    thresholds.require(ReferenceKind::W, dim, q, c.beta).mass_sq);
                const double cq = hartree_gn_constant(dim, c.beta, q, wm);
                A = cq * std::pow(m, nd + c.beta - nd * q + 2.0 * q) / (2.0 * q);
                b = nd * q - nd - c.beta;
            }
            // A X^{b/2} <= (eps_each/2) X + remainder (gamma = 1 weight here)
            bound += young_remainder(1.0, A, b, eps_each);
        }
    }
    const double kinetic_coeff = 0.5 * slack;
    return CoercivityBound{bound, kinetic_coeff};
}

std::optional<double> gradient_apriori_bound(const ProblemSpec& prob, double rho, double energy0,
                                             ThresholdTable& thresholds) {
    auto cb = coercivity_bound(prob, rho, thresholds);
    if (!cb) return std::nullopt;
    // E(u) >= c ||grad u||^2 - B and E(u) = E0 give the bound
    return std::max(0.0, (energy0 + cb->lower_bound) / cb->kinetic_coeff);
}

}  // namespace waveorbit
