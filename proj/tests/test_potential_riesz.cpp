#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "support/test_fields.hpp"
#include "waveorbit/potential.hpp"
#include "waveorbit/random_fields.hpp"
#include "waveorbit/riesz.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/zeta.hpp"

using namespace waveorbit;
using namespace wotest;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("PotentialSpec validation enforces 0 < alpha < min{2,N}") {
    CHECK_THROWS_AS(PotentialSpec({1.0, 1.5, 0.0}).validate(1), std::invalid_argument);
    CHECK_NOTHROW(PotentialSpec({1.0, 1.5, 0.0}).validate(3));
    CHECK_THROWS_AS(PotentialSpec({1.0, 2.5, 0.0}).validate(3), std::invalid_argument);
    CHECK_THROWS_AS(PotentialSpec({1.0, -0.1, 0.0}).validate(2), std::invalid_argument);
}

TEST_CASE("sample_potential: zero coupling, point values, origin cell average") {
    auto g = grid1d(8.0, 64);

    auto zero = sample_potential(*g, PotentialSpec{0.0, 1.0 - 1e-9, 0.0});
    for (double v : *zero) CHECK(v == 0.0);

    // gamma=1, alpha=1, |x| = 2 -> 1/2 (alpha = 1 is admissible for N = 2)
    auto g2 = grid_nd(2, 8.0, 64);
    auto v = sample_potential(*g2, PotentialSpec{1.0, 1.0, 0.0});
    const std::int64_t jx = 48, jy = 32;  // (x, y) = (2, 0)
    CHECK(g2->coord(0, jx) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rel_err((*v)[static_cast<std::size_t>(jx * 64 + jy)], 0.5) < 1e-14);

    // origin cell, alpha = 1/2: cell average (1/h) int_{-h/2}^{h/2} |x|^{-1/2}
    // = 4 (h/2)^{1/2} / h in closed form
    const double alpha = 0.5;
    auto vo = sample_potential(*g, PotentialSpec{1.0, alpha, 0.0});
    const double h = g->spacing(0);
    const double want = 4.0 * std::sqrt(0.5 * h) / h;
    CHECK(rel_err((*vo)[32], want) < 1e-13);

    // regularized sampling: (|x|^2 + eps^2)^{-alpha/2} with default eps = h/2
    auto vr = sample_potential(*g, PotentialSpec{2.0, 0.5, -1.0});
    CHECK(rel_err((*vr)[32], 2.0 * std::pow(0.25 * h * h, -0.25)) < 1e-13);
}

TEST_CASE("potential_energy matches a direct quadrature oracle away from the origin") {
    auto g = grid1d(40.0, 1024);
    auto u = gaussian(g, 1.3, 9.0);  // supported away from x = 0
    const PotentialSpec spec{1.0, 0.5, 0.0};
    const double got = potential_energy(u, spec);
    const double want = direct_quadrature(u, [&](cplx z, const std::array<double, 3>& x) {
        return x[0] == 0.0 ? 0.0 : std::norm(z) / std::sqrt(std::abs(x[0]));  // u(0) ~ 0
    });
    CHECK(rel_err(got, want) < 1e-10);
}

TEST_CASE("potential_energy scales as lambda^alpha under dilation") {
    auto g = grid1d(64.0, 2048);
    auto u = gaussian(g, 1.0, 8.0);
    const PotentialSpec spec{1.0, 0.5, 0.0};
    const double base = potential_energy(u, spec);
    for (double lam : {0.5, 0.8, 1.25, 2.0}) {
        const double got = potential_energy(dilate(u, lam), spec);
        CHECK(rel_err(got, std::pow(lam, spec.alpha) * base) < 1e-6);
    }
}

TEST_CASE("riesz multiplier: validation, zero input, single mode") {
    auto g = grid1d(10.0, 128);
    CHECK_THROWS_AS(riesz_convolve(ComplexField::zeros(g), RieszSpec{1.5}),
                    std::invalid_argument);  // beta >= N

    const RieszSpec rs{0.5};
    auto out0 = riesz_convolve(ComplexField::zeros(g), rs);
    for (auto& z : out0.values()) CHECK(std::abs(z) == 0.0);

    // v = cos(k0 x): a diagonal multiplier returns |k0|^{-beta} cos(k0 x)
    const double k0 = 2.0 * kPi * 3.0 / 10.0;
    auto v = sample(g, [&](const std::array<double, 3>& x) {
        return cplx(std::cos(k0 * x[0]), 0.0);
    });
    auto out = riesz_convolve(v, rs);
    const double scale = std::pow(k0, -0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::abs(out[i] - scale * v[i]));
    CHECK(worst < 1e-13 * scale);
}

TEST_CASE("riesz_convolve is linear and positivity-preserving") {
    auto g = grid1d(20.0, 256);
    const RieszSpec rs{0.7};
    auto u = random_band_limited(g, 3);
    auto v = random_band_limited(g, 4);
    auto w = u;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * u[i] - 3.5 * v[i];
    auto cu = riesz_convolve(u, rs);
    auto cv = riesz_convolve(v, rs);
    auto cw = riesz_convolve(w, rs);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        worst = std::max(worst, std::abs(cw[i] - (2.0 * cu[i] - 3.5 * cv[i])));
        scale = std::max(scale, std::abs(cw[i]));
    }
    CHECK(worst < 1e-12 * scale);

    for (std::uint64_t seed : {11u, 12u, 13u}) {
        auto r = random_band_limited(g, seed);
        ComplexField nn = r;
        for (auto& z : nn.values()) z = cplx(std::norm(z), 0.0);  // nonnegative
        auto conv = riesz_convolve(nn, rs);
        double mn = 1e300;
        for (auto& z : conv.values()) mn = std::min(mn, z.real());
        CHECK(mn > -1e-12);
    }
}

TEST_CASE("zero-mode conventions: values and reporting") {
    // truncation-matched: integral of the normalized kernel over |x| <= L/2
    // (1D closed form: 2 A (L/2)^beta / beta)
    const double L = 24.0, beta = 0.5;
    const double A = riesz_kernel_constant(1, beta);
    CHECK(rel_err(zero_mode_truncation_matched(1, beta, L),
                  2.0 * A * std::pow(0.5 * L, beta) / beta) < 1e-14);

    // zeta-matched in 1D uses the Riemann zeta value
    const double dk = 2.0 * kPi / L;
    CHECK(rel_err(zero_mode_zeta_matched(1, beta, L),
                  -2.0 * std::riemann_zeta(beta) * std::pow(dk, -beta)) < 1e-13);

    auto g = grid1d(L, 64);
    RieszSpec ex{beta, ZeroModeConvention::Explicit, 7.25};
    CHECK(ex.zero_mode(*g) == 7.25);
    RieszSpec z0{beta, ZeroModeConvention::Zero, 0.0};
    CHECK(z0.zero_mode(*g) == 0.0);
}

TEST_CASE("3D convolution reproduces the Newtonian potential of a narrow Gaussian") {
    // beta = 2, N = 3: I_2 is the Newton kernel 1/(4 pi |x|). The zeta-matched
    // zero mode pins the periodic kernel to the free-space one near the
    // origin, so the potential of a unit-mass narrow Gaussian matches
    // erf(r/(sqrt(2) sigma))/(4 pi r) at radii well inside the box.
    const double L = 64.0;
    const std::int64_t M = 192;
    auto g = grid_nd(3, L, M);
    const double sigma = 0.6;
    const double norm = 1.0 / std::pow(2.0 * kPi * sigma * sigma, 1.5);
    auto rho = sample(g, [&](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return cplx(norm * std::exp(-0.5 * r2 / (sigma * sigma)), 0.0);
    });
    const double total = direct_quadrature(rho, [](cplx z, const auto&) { return z.real(); });
    CHECK(rel_err(total, 1.0) < 1e-12);

    const RieszSpec rs{2.0, ZeroModeConvention::ZetaMatched, 0.0};
    auto phi = riesz_convolve(rho, rs);

    const double h = g->spacing(0);
    for (double r : {1.0, 2.0, 4.0}) {
        const std::int64_t j = static_cast<std::int64_t>(std::llround(r / h)) + M / 2;
        // flat index of (x=r, y=0, z=0)
        const std::int64_t flat = (j * M + M / 2) * M + M / 2;
        const double got = phi[static_cast<std::size_t>(flat)].real();
        const double want = std::erf(r / (std::sqrt(2.0) * sigma)) / (4.0 * kPi * r);
        CHECK(rel_err(got, want) < 1e-3);
    }
}

TEST_CASE("hartree_energy: zero field, phase invariance, range check") {
    auto g = grid1d(30.0, 256);
    const RieszSpec rs{0.5};
    CHECK(hartree_energy(ComplexField::zeros(g), 2.0, rs) == 0.0);

    auto u = random_band_limited(g, 21);
    const double base = hartree_energy(u, 2.0, rs);
    ComplexField up = u;
    for (auto& z : up.values()) z *= std::polar(1.0, 0.8128);
    CHECK(rel_err(hartree_energy(up, 2.0, rs), base) < 1e-13);

    CHECK_THROWS_AS(hartree_energy(u, 1.2, rs), std::invalid_argument);  // q <= 1+beta/N
    CHECK(base >= 0.0);
}

TEST_CASE("hartree_energy is nonnegative whenever the zero mode is") {
    auto g = grid1d(20.0, 128);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto u = random_band_limited(g, 1000 + seed);
        CHECK(hartree_energy(u, 2.0, RieszSpec{0.5}) >= 0.0);
        CHECK(hartree_energy(u, 2.0, RieszSpec{0.5, ZeroModeConvention::Zero, 0.0}) >= 0.0);
    }
}

TEST_CASE("hartree_energy scales as lambda^{Nq-N-beta} with the zeta-matched zero mode") {
    auto g = grid1d(64.0, 2048);
    auto u = gaussian(g, 0.5, 6.0);
    const double q = 2.0, beta = 0.5;
    const RieszSpec rs{beta, ZeroModeConvention::ZetaMatched, 0.0};
    const double base = hartree_energy(u, q, rs);
    for (double lam : {0.5, 0.8, 1.25, 2.0}) {
        const double got = hartree_energy(dilate(u, lam), q, rs);
        CHECK(rel_err(got, std::pow(lam, q - 1.0 - beta) * base) < 1e-5);
    }
}

TEST_CASE("multiplier table exports as CSV") {
    auto g = grid1d(10.0, 16);
    const auto path = std::filesystem::temp_directory_path() / "wo_multiplier_test.csv";
    export_multiplier_csv(path, *g, RieszSpec{0.5});
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "k,m");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 16);
    std::filesystem::remove(path);
}
