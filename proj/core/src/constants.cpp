#include "waveorbit/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace waveorbit {

CriticalExponents critical_exponents(int dim, std::optional<double> beta) {
    if (dim < 1) throw std::invalid_argument("critical_exponents: N >= 1 required");
    const double nd = static_cast<double>(dim);
    CriticalExponents ce{1.0 + 4.0 / nd, std::nullopt};
    if (beta) {
        if (!(*beta > 0.0 && *beta < nd))
            throw std::invalid_argument("critical_exponents: need 0 < beta < N");
        ce.q_c = 1.0 + (2.0 + *beta) / nd;
    }
    return ce;
}

double gn_constant(int dim, double eta, double q_mass) {
    const double nd = static_cast<double>(dim);
    const double upper = dim >= 3 ? 4.0 / (nd - 2.0) : std::numeric_limits<double>::infinity();
    if (!(eta > 0.0 && eta < upper))
        throw std::invalid_argument("gn_constant: need 0 < eta < 4/(N-2)_+");
    if (!(q_mass > 0.0)) throw std::invalid_argument("gn_constant: q_mass must be positive");
    const double a = 4.0 - (nd - 2.0) * eta;
    return 2.0 * (eta + 2.0) / a * std::pow(a / (nd * eta), 0.25 * nd * eta) *
           std::pow(q_mass, -eta);
}

double hartree_gn_constant(int dim, double beta, double p, double w_mass) {
    const double nd = static_cast<double>(dim);
    if (!(beta > 0.0 && beta < nd))
        throw std::invalid_argument("hartree_gn_constant: need 0 < beta < N");
    const double upper = dim >= 3 ? (nd + beta) / (nd - 2.0) : std::numeric_limits<double>::infinity();
    if (!(p > 1.0 + beta / nd && p < upper))
        throw std::invalid_argument("hartree_gn_constant: p outside (1+beta/N, (N+beta)/(N-2)_+)");
    if (!(w_mass > 0.0)) throw std::invalid_argument("hartree_gn_constant: w_mass must be positive");
    const double theta = nd * p - nd - beta;       // gradient power, in (0, 2p)
    const double a = 2.0 * p - theta;              // 2p - Np + N + beta
    return 2.0 * p / a * std::pow(a / theta, 0.5 * theta) * std::pow(w_mass, 2.0 - 2.0 * p);
}

double hls_constant(int dim, double beta) {
    const double nd = static_cast<double>(dim);
    if (!(beta > 0.0 && beta < nd)) throw std::invalid_argument("hls_constant: need 0 < beta < N");
    const double pi = std::numbers::pi;
    // evaluate through lgamma for stability at larger arguments
    const double lg = 0.5 * (nd - beta) * std::log(pi) + std::lgamma(0.5 * beta) -
                      std::lgamma(0.5 * (nd + beta)) -
                      (beta / nd) * (std::lgamma(0.5 * nd) - std::lgamma(nd));
    return std::exp(lg);
}

namespace closed_form {

double q_profile_1d(double p, double x) {
    const double amp = std::pow(0.5 * (p + 1.0), 1.0 / (p - 1.0));
    const double s = 1.0 / std::cosh(0.5 * (p - 1.0) * x);
    return amp * std::pow(s, 2.0 / (p - 1.0));
}

double q_mass_sq_1d(double p) {
    const double a = 2.0 / (p - 1.0);  // sech power in the mass integrand is 2a
    const double sech_integral = std::sqrt(std::numbers::pi) *
                                 std::exp(std::lgamma(a) - std::lgamma(a + 0.5));
    return std::pow(0.5 * (p + 1.0), a) * a * sech_integral;
}

}  // namespace closed_form

}  // namespace waveorbit
