#include "waveorbit/zeta.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace waveorbit {

double epstein_zeta_ren(int dim, double s) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("epstein_zeta_ren: dim must be 1..3");
    if (!(s > 0.0) || !(s < static_cast<double>(dim)))
        throw std::invalid_argument("epstein_zeta_ren: need 0 < s < N");
    if (dim == 1) return 2.0 * std::riemann_zeta(s);

    const double pi = std::numbers::pi;
    const double nd = static_cast<double>(dim);
    double total = 2.0 / (s - nd) - 2.0 / s;
    const int R = 6;  // exp(-pi*36) ~ 1e-50, far below double precision
    const double a1 = 0.5 * s;
    const double a2 = 0.5 * (nd - s);
    auto term = [&](double n2) {
        const double x = pi * n2;
        return boost::math::tgamma(a1, x) * std::pow(x, -a1) +
               boost::math::tgamma(a2, x) * std::pow(x, -a2);
    };
    if (dim == 2) {
        for (int i = -R; i <= R; ++i)
            for (int j = -R; j <= R; ++j) {
                if (i == 0 && j == 0) continue;
                total += term(static_cast<double>(i * i + j * j));
            }
    } else {
        for (int i = -R; i <= R; ++i)
            for (int j = -R; j <= R; ++j)
                for (int k = -R; k <= R; ++k) {
                    if (i == 0 && j == 0 && k == 0) continue;
                    total += term(static_cast<double>(i * i + j * j + k * k));
                }
    }
    return std::pow(pi, 0.5 * s) / std::tgamma(0.5 * s) * total;
}

}  // namespace waveorbit
