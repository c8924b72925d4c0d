#include "waveorbit/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace waveorbit {

namespace {

constexpr double kCritTol = 1e-9;  // relative tolerance for p == p_c style hypotheses

struct CaseBuilder {
    std::vector<double> slacks;
    std::ostringstream detail;
    bool structural_fail = false;
    double structural_margin = 0.0;

    void require_positive(double slack, const char* what) {
        slacks.push_back(slack);
        detail << what << "=" << slack << " ";
    }
    // equality hypothesis like p == p_c
    void require_equal(double value, double target, const char* what) {
        const double miss = std::abs(value - target);
        if (miss > kCritTol * std::max(1.0, std::abs(target))) {
            structural_fail = true;
            structural_margin = std::min(structural_margin, -miss);
            detail << what << " not met (off by " << miss << ") ";
        }
    }
    TheoremVerdict finish(const std::string& thm, int case_id,
                          std::optional<double> threshold) const {
        TheoremVerdict v{thm, case_id, false, threshold, 0.0, detail.str()};
        if (structural_fail) {
            v.margin = structural_margin;
            return v;
        }
        v.margin = *std::min_element(slacks.begin(), slacks.end());
        v.applies = v.margin > 0.0;
        return v;
    }
};

double power_threshold(ThresholdTable& t, int dim, double p) {
    return t.require(ReferenceKind::Q, dim, p, 0.0).mass_sq;
}
double hartree_threshold(ThresholdTable& t, int dim, double q, double beta) {
    return t.require(ReferenceKind::W, dim, q, beta).mass_sq;
}

}  // namespace

std::vector<TheoremVerdict> check_theorem_conditions(const ProblemSpec& prob,
                                                     ThresholdTable& thresholds) {
    prob.validate();
    const int dim = prob.dim();
    const double nd = static_cast<double>(dim);
    const double gamma = prob.potential.gamma;
    const double rho = prob.rho;
    const double p_c = 1.0 + 4.0 / nd;
    std::vector<TheoremVerdict> out;

    auto subcritical_power = [&](CaseBuilder& b, double p) {
        b.require_positive(p - 1.0, "p-1");
        b.require_positive(p_c - p, "p_c-p");
    };
    auto subcritical_hartree = [&](CaseBuilder& b, double q, double beta) {
        const double q_c = 1.0 + (2.0 + beta) / nd;
        b.require_positive(q - 1.0 - beta / nd, "q-(1+beta/N)");
        b.require_positive(q_c - q, "q_c-q");
    };
    auto common = [&](CaseBuilder& b) {
        b.require_positive(gamma, "gamma");
        b.require_positive(rho, "rho");
    };

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PowerNL>) {
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_power(b, s.p);
                    out.push_back(b.finish("1.1", 1, std::nullopt));
                }
                {
                    CaseBuilder b;
                    common(b);
                    b.require_equal(s.p, p_c, "p=p_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = power_threshold(thresholds, dim, s.p);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||Q||^2");
                    }
                    out.push_back(b.finish("1.1", 2, thr));
                }
            } else if constexpr (std::is_same_v<T, HartreeNL>) {
                const double q_c = 1.0 + (2.0 + s.beta) / nd;
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_hartree(b, s.q, s.beta);
                    out.push_back(b.finish("1.3", 1, std::nullopt));
                }
                {
                    CaseBuilder b;
                    common(b);
                    b.require_equal(s.q, q_c, "q=q_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = hartree_threshold(thresholds, dim, s.q, s.beta);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||W||^2");
                    }
                    out.push_back(b.finish("1.3", 2, thr));
                }
            } else if constexpr (std::is_same_v<T, DoublePowerNL>) {
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_power(b, s.p1);
                    subcritical_power(b, s.p2);
                    b.require_positive(s.p2 - s.p1, "p2-p1");
                    out.push_back(b.finish("1.2", 1, std::nullopt));
                }
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_power(b, s.p1);
                    b.require_positive(s.p2 - s.p1, "p2-p1");
                    b.require_equal(s.p2, p_c, "p2=p_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = power_threshold(thresholds, dim, s.p2);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||Q||^2");
                    }
                    out.push_back(b.finish("1.2", 2, thr));
                }
            } else if constexpr (std::is_same_v<T, DoubleHartreeNL>) {
                const double q_c = 1.0 + (2.0 + s.beta) / nd;
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_hartree(b, s.q1, s.beta);
                    subcritical_hartree(b, s.q2, s.beta);
                    b.require_positive(s.q2 - s.q1, "q2-q1");
                    out.push_back(b.finish("1.4", 1, std::nullopt));
                }
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_hartree(b, s.q1, s.beta);
                    b.require_positive(s.q2 - s.q1, "q2-q1");
                    b.require_equal(s.q2, q_c, "q2=q_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = hartree_threshold(thresholds, dim, s.q2, s.beta);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||W||^2");
                    }
                    out.push_back(b.finish("1.4", 2, thr));
                }
            } else if constexpr (std::is_same_v<T, MixedNL>) {
                const double q_c = 1.0 + (2.0 + s.beta) / nd;
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_power(b, s.p);
                    subcritical_hartree(b, s.q, s.beta);
                    out.push_back(b.finish("1.5", 1, std::nullopt));
                }
                {
                    CaseBuilder b;
                    common(b);
                    subcritical_power(b, s.p);
                    b.require_equal(s.q, q_c, "q=q_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = hartree_threshold(thresholds, dim, s.q, s.beta);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||W||^2");
                    }
                    out.push_back(b.finish("1.5", 2, thr));
                }
                {
                    CaseBuilder b;
                    common(b);
                    b.require_equal(s.p, p_c, "p=p_c");
                    subcritical_hartree(b, s.q, s.beta);
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        thr = power_threshold(thresholds, dim, s.p);
                        b.require_positive(1.0 - rho / *thr, "1-rho/||Q||^2");
                    }
                    out.push_back(b.finish("1.5", 3, thr));
                }
                {
                    CaseBuilder b;
                    common(b);
                    b.require_equal(s.p, p_c, "p=p_c");
                    b.require_equal(s.q, q_c, "q=q_c");
                    std::optional<double> thr;
                    if (!b.structural_fail) {
                        const double qm = power_threshold(thresholds, dim, s.p);
                        const double wm = hartree_threshold(thresholds, dim, s.q, s.beta);
                        const double sum = std::pow(rho / qm, 2.0 / nd) +
                                           std::pow(rho / wm, (s.beta + 2.0) / nd);
                        thr = qm;  // record the power threshold; detail carries both
                        b.detail << "||Q||^2=" << qm << " ||W||^2=" << wm << " ";
                        b.require_positive(1.0 - sum, "1-combined");
                    }
                    out.push_back(b.finish("1.5", 4, thr));
                }
            }
        },
        prob.nonlinearity);
    return out;
}

MassGate critical_mass_gate(const ProblemSpec& prob, ThresholdTable& thresholds) {
    const auto cls = classify(prob.nonlinearity, prob.dim());
    if (cls.overall == Criticality::Supercritical)
        return {false, -std::numeric_limits<double>::infinity(), "supercritical component present"};

    const double nd = static_cast<double>(prob.dim());
    std::optional<double> qm, wm, beta_crit;
    for (const auto& pc : cls.per_component) {
        if (pc.label != Criticality::Critical) continue;
        if (pc.component.kind == NLComponent::Kind::Power)
            qm = power_threshold(thresholds, prob.dim(), pc.component.exponent);
        else {
            wm = hartree_threshold(thresholds, prob.dim(), pc.component.exponent,
                                   pc.component.beta);
            beta_crit = pc.component.beta;
        }
    }
    if (!qm && !wm) return {true, 1.0, "all components subcritical"};

    std::ostringstream det;
    double margin;
    if (qm && wm) {
        const double sum = std::pow(prob.rho / *qm, 2.0 / nd) +
                           std::pow(prob.rho / *wm, (*beta_crit + 2.0) / nd);
        margin = 1.0 - sum;
        det << "combined condition: sum=" << sum << " with ||Q||^2=" << *qm
            << ", ||W||^2=" << *wm;
    } else if (qm) {
        margin = 1.0 - prob.rho / *qm;
        det << "critical power: rho=" << prob.rho << " vs ||Q||^2=" << *qm;
    } else {
        margin = 1.0 - prob.rho / *wm;
        det << "critical Hartree: rho=" << prob.rho << " vs ||W||^2=" << *wm;
    }
    return {margin > 0.0, margin, det.str()};
}

}  // namespace waveorbit
