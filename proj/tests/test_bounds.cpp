#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/test_fields.hpp"
#include "waveorbit/bounds.hpp"
#include "waveorbit/random_fields.hpp"
#include "waveorbit/spectral.hpp"

using namespace waveorbit;
using namespace wotest;

namespace {

ComplexField unit_mass(ComplexField u) {
    const double s = 1.0 / std::sqrt(mass(u));
    for (auto& z : u.values()) z *= s;
    return u;
}

}  // namespace

TEST_CASE("lemma22_delta: sign cases and the quadratic mass law") {
    const PotentialSpec attracting{1.0, 0.5, 0.0};
    const PotentialSpec repelling{-1.0, 0.5, 0.0};

    CHECK(lemma22_delta(0.25, 1.0, repelling, 1) == 0.0);
    CHECK(lemma22_delta(0.25, 0.0, attracting, 1) == 0.0);

    const double d1 = lemma22_delta(0.25, 1.0, attracting, 1);
    CHECK(d1 > 0.0);
    CHECK(std::isfinite(d1));

    // delta(eps, m) = D(eps) m^2 exactly: the Hoelder/GN/Young chain is
    // 2-homogeneous in the amplitude
    const double d2 = lemma22_delta(0.25, 2.0, attracting, 1);
    CHECK(rel_err(d2, 4.0 * d1) < 1e-12);

    // larger eps buys a smaller delta
    CHECK(lemma22_delta(0.5, 1.0, attracting, 1) < d1);
    CHECK(lemma22_delta(0.1, 1.0, attracting, 1) > d1);

    CHECK_THROWS_AS(lemma22_delta(0.0, 1.0, attracting, 1), std::invalid_argument);
}

TEST_CASE("lemma22 tau clamps keep the exponent windows admissible") {
    CHECK(lemma22_effective_tau(0.5, 1) == doctest::Approx(0.1));
    // s' > 1 forces tau < alpha/N
    CHECK(lemma22_effective_tau(0.05, 1) <= 0.5 * 0.05);
    // N = 3 interpolation window forces tau < (2-alpha)/(N-2)
    CHECK(lemma22_effective_tau(1.9, 3) <= 0.5 * (2.0 - 1.9));
}

TEST_CASE("verify_lower_bound: trivial for gamma <= 0") {
    auto g = grid1d(40.0, 512);
    const PotentialSpec spec{-2.0, 0.5, 0.0};
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto u = unit_mass(random_band_limited(g, s));
        CHECK(verify_lower_bound(u, 0.25, spec) >= 0.0);
    }
}

TEST_CASE("verify_lower_bound holds along a dilated Gaussian family") {
    auto g = grid1d(40.0, 1024);
    const PotentialSpec spec{1.0, 0.5, 0.0};
    auto u = unit_mass(gaussian(g, 1.0));
    for (double lam : {0.5, 1.0, 2.0, 4.0}) {
        auto v = dilate(u, lam);
        CHECK(verify_lower_bound(v, 0.25, spec) >= 0.0);
    }
}

TEST_CASE("verify_lower_bound holds on random unit-mass band-limited fields") {
    auto g = grid1d(40.0, 512);
    const PotentialSpec spec{1.0, 0.5, 0.0};
    double min_margin = 1e300;
    for (double eps : {0.1, 0.25, 0.5}) {
        for (std::uint64_t s = 0; s < 200; ++s) {
            auto u = unit_mass(random_band_limited(g, 7000 + s));
            min_margin = std::min(min_margin, verify_lower_bound(u, eps, spec));
        }
    }
    CHECK(min_margin >= 0.0);
}

TEST_CASE("lemma22_delta is valid in 2D as well") {
    auto g = grid_nd(2, 24.0, 96);
    const PotentialSpec spec{1.5, 0.8, 0.0};
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto u = unit_mass(random_band_limited(g, 300 + s));
        CHECK(verify_lower_bound(u, 0.25, spec) >= 0.0);
    }
}

TEST_CASE("coercivity bound certifies E >= -B at subcritical exponents") {
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 512);
    prob.potential = PotentialSpec{1.0, 0.5, 0.0};
    prob.nonlinearity = PowerNL{3.0};
    prob.rho = 1.0;
    ThresholdTable table;
    auto cb = coercivity_bound(prob, prob.rho, table);
    REQUIRE(cb.has_value());
    CHECK(cb->kinetic_coeff > 0.0);

    for (std::uint64_t s = 0; s < 50; ++s) {
        auto u = unit_mass(random_band_limited(prob.grid, 600 + s));
        const double e = total_energy(u, prob);
        CHECK(e >= -cb->lower_bound);
        CHECK(e >= cb->kinetic_coeff * gradient_norm_sq(u) - cb->lower_bound);
    }
}

TEST_CASE("energy blows up along the dilation family at subcritical exponents") {
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 1024);
    prob.potential = PotentialSpec{1.0, 0.5, 0.0};
    prob.nonlinearity = PowerNL{3.0};
    prob.rho = 1.0;
    auto u = unit_mass(gaussian(prob.grid, 1.0));
    const double e8 = total_energy(dilate(u, 8.0), prob);
    const double e16 = total_energy(dilate(u, 16.0), prob);
    const double e32 = total_energy(dilate(u, 32.0), prob);
    CHECK(e8 > 0.0);
    CHECK(e16 > 2.0 * e8);
    CHECK(e32 > 2.0 * e16);
}

TEST_CASE("critical-mass coercivity below the threshold, refusal above") {
    ThresholdTable table;
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 1024);
    prob.potential = PotentialSpec{1.0, 0.5, 0.0};
    prob.nonlinearity = PowerNL{5.0};
    const double thr = table.require(ReferenceKind::Q, 1, 5.0, 0.0).mass_sq;

    prob.rho = 0.5 * thr;
    auto cb = coercivity_bound(prob, prob.rho, table);
    REQUIRE(cb.has_value());
    auto u = gaussian(prob.grid, 1.0);
    {
        const double s = std::sqrt(prob.rho / mass(u));
        for (auto& z : u.values()) z *= s;
    }
    for (double lam : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        CHECK(total_energy(dilate(u, lam), prob) >= -cb->lower_bound);
    }

    prob.rho = 1.1 * thr;
    CHECK(!coercivity_bound(prob, prob.rho, table).has_value());

    prob.nonlinearity = PowerNL{5.4};  // supercritical
    prob.rho = 0.1;
    CHECK(!coercivity_bound(prob, prob.rho, table).has_value());
}
