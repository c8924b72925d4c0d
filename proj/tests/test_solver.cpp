#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_fields.hpp"
#include "waveorbit/constants.hpp"
#include "waveorbit/ground_state.hpp"
#include "waveorbit/random_fields.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/stability.hpp"

using namespace waveorbit;
using namespace wotest;

namespace {

ProblemSpec cubic_free()  // gamma = 0, the translation-invariant baseline
{
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 1024);
    prob.potential = PotentialSpec{0.0, 0.5, -1.0};
    prob.nonlinearity = PowerNL{3.0};
    prob.rho = 4.0;
    return prob;
}

ProblemSpec cubic_attractive(double rho = 1.0) {
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 1024);
    prob.potential = PotentialSpec{1.0, 0.5, -1.0};
    prob.nonlinearity = PowerNL{3.0};
    prob.rho = rho;
    return prob;
}

}  // namespace

TEST_CASE("init_guess: exact mass, determinism, seed variation") {
    const auto prob = cubic_attractive(4.0);
    for (auto kind : {InitKind::Gaussian, InitKind::Sech, InitKind::SeededRandom}) {
        auto u = init_guess(prob, kind, 11);
        CHECK(std::abs(mass(u) - prob.rho) < 1e-12 * prob.rho);
    }
    auto a = init_guess(prob, InitKind::SeededRandom, 5);
    auto b = init_guess(prob, InitKind::SeededRandom, 5);
    auto c = init_guess(prob, InitKind::SeededRandom, 6);
    double same = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = std::max(same, std::abs(a[i] - b[i]));
        diff = std::max(diff, std::abs(a[i] - c[i]));
    }
    CHECK(same == 0.0);
    CHECK(diff > 1e-6);

    CHECK_THROWS_AS(parse_init_kind("fourier"), std::invalid_argument);
}

TEST_CASE("gradient flow recovers the free cubic soliton") {
    const auto prob = cubic_free();
    ThresholdTable table;
    FlowParams params;
    params.tol = 1e-9;
    const auto res = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                              params, table);
    CHECK(res.converged);
    CHECK(res.residual <= params.tol);
    CHECK(std::abs(mass(res.field) - prob.rho) < 1e-10 * prob.rho);

    // closed-form values: A_rho = -2/3, omega = 1
    CHECK(std::abs(res.a_rho + 2.0 / 3.0) < 1e-4);
    CHECK(std::abs(res.omega - 1.0) < 1e-3);

    // profile equals sqrt(2) sech up to phase and translation (H1 dominates L2)
    auto ref = sech_soliton(prob.grid);
    CHECK(orbit_distance(res.field, ref, /*translation_search=*/true) < 1e-3);
}

TEST_CASE("gradient flow with the attractive potential pins a negative-energy state") {
    const auto prob = cubic_attractive();
    ThresholdTable table;
    const auto res = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                              FlowParams{}, table);
    CHECK(res.converged);
    CHECK(res.residual <= 1e-8);
    CHECK(res.a_rho < 0.0);  // A_rho <= -C_1 < 0 with gamma > 0

    // variational consistency: no trial state of the same mass goes lower
    for (std::uint64_t s = 0; s < 50; ++s) {
        ComplexField trial = s % 3 == 0   ? init_guess(prob, InitKind::Gaussian, s)
                             : s % 3 == 1 ? init_guess(prob, InitKind::Sech, s)
                                          : init_guess(prob, InitKind::SeededRandom, s);
        CHECK(total_energy(trial, prob) >= res.a_rho - 1e-8);
    }
}

TEST_CASE("flow observer sees monotone energies and settled frequency") {
    const auto prob = cubic_attractive();
    ThresholdTable table;
    FlowParams params;
    std::vector<double> energies, omegas;
    params.observer = [&](int, double e, double r, double w) {
        energies.push_back(e);
        if (r >= 0.0) omegas.push_back(w);
    };
    const auto res = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                              params, table);
    CHECK(res.converged);
    REQUIRE(energies.size() > 10);
    for (std::size_t i = 1; i < energies.size(); ++i) CHECK(energies[i] <= energies[i - 1]);

    REQUIRE(omegas.size() > 10);
    const double w_final = omegas.back();
    for (std::size_t i = omegas.size() - 10; i < omegas.size(); ++i)
        CHECK(std::abs(omegas[i] - w_final) <= 10.0 * params.tol * std::abs(w_final));
}

TEST_CASE("solver refuses supercritical and above-threshold problems") {
    ThresholdTable table;
    auto prob = cubic_attractive();
    prob.nonlinearity = PowerNL{5.4};
    CHECK_THROWS_AS(normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                             FlowParams{}, table),
                    RefusedSupercritical);

    const double thr = std::sqrt(3.0) * std::numbers::pi / 2.0;
    prob.nonlinearity = PowerNL{5.0};
    prob.rho = 1.1 * thr;
    CHECK_THROWS_AS(normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                             FlowParams{}, table),
                    RefusedAboveThreshold);

    prob.rho = 0.9 * thr;
    FlowParams params;
    params.max_iters = 30000;
    const auto res = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                              params, table);
    CHECK(res.converged);
}

TEST_CASE("gradient flow handles Hartree and mixed nonlinearities") {
    ThresholdTable table;
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 512);
    prob.potential = PotentialSpec{1.0, 0.5, -1.0};
    prob.nonlinearity = HartreeNL{2.0, 0.5};
    prob.rho = 1.0;
    auto res = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                        FlowParams{}, table);
    CHECK(res.converged);
    CHECK(res.a_rho < 0.0);

    prob.nonlinearity = MixedNL{2.0, 0.5, 3.0};
    auto res2 = normalized_gradient_flow(prob, init_guess(prob, InitKind::Gaussian, 0),
                                         FlowParams{}, table);
    CHECK(res2.converged);
    CHECK(res2.a_rho < res.a_rho + 1e-12);  // extra focusing term can only lower the infimum
}

TEST_CASE("dilation_energy_scan: lambda=1 row is exact and E goes negative at small lambda") {
    const auto prob = cubic_attractive();
    auto u = init_guess(prob, InitKind::Gaussian, 0);
    const auto rows = dilation_energy_scan(u, prob, {0.05, 0.2, 1.0, 2.0});
    const double e_direct = total_energy(u, prob);
    bool negative_somewhere = false;
    for (const auto& r : rows) {
        if (r.lambda == 1.0) {
            CHECK(r.total == doctest::Approx(e_direct).epsilon(1e-14));
            CHECK(r.predicted_total == doctest::Approx(e_direct).epsilon(1e-14));
        }
        if (r.total < 0.0) negative_somewhere = true;
    }
    CHECK(negative_somewhere);  // gamma > 0, subcritical: small lambda drives E below 0
}

TEST_CASE("dilation_energy_scan predictions track measured terms on band-limited fields") {
    ProblemSpec prob;
    prob.grid = grid1d(64.0, 2048);
    prob.potential = PotentialSpec{1.0, 0.5, 0.0};
    prob.nonlinearity = MixedNL{2.0, 0.5, 3.0};
    prob.riesz.convention = ZeroModeConvention::ZetaMatched;
    prob.rho = 1.0;
    auto u = gaussian(prob.grid, 0.5, 6.0);
    {
        const double s = std::sqrt(prob.rho / mass(u));
        for (auto& z : u.values()) z *= s;
    }
    const auto rows = dilation_energy_scan(u, prob, {0.5, 0.8, 1.25, 2.0});
    for (const auto& r : rows) {
        CHECK(!r.aliased);
        CHECK(rel_err(r.kinetic, r.predicted_kinetic) < 1e-5);
        CHECK(rel_err(r.potential, r.predicted_potential) < 1e-5);
        for (std::size_t c = 0; c < r.nonlinear.size(); ++c)
            CHECK(rel_err(r.nonlinear[c], r.predicted_nonlinear[c]) < 1e-5);
    }
}
