#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <numbers>

#include "support/test_fields.hpp"
#include "waveorbit/constants.hpp"
#include "waveorbit/energy.hpp"
#include "waveorbit/random_fields.hpp"
#include "waveorbit/reference_state.hpp"
#include "waveorbit/riesz.hpp"
#include "waveorbit/spectral.hpp"
#include "waveorbit/theorems.hpp"
#include "waveorbit/thresholds.hpp"

using namespace waveorbit;
using namespace wotest;

namespace {
constexpr double kPi = std::numbers::pi;
const double kQuinticMassSq = std::sqrt(3.0) * kPi / 2.0;  // ||Q_5||_2^2 closed form
}

TEST_CASE("critical exponents") {
    CHECK(critical_exponents(1).p_c == doctest::Approx(5.0));
    CHECK(!critical_exponents(1).q_c.has_value());
    CHECK(*critical_exponents(2, 1.0).q_c == doctest::Approx(2.5));
    CHECK(*critical_exponents(3, 2.0).q_c == doctest::Approx(1.0 + 4.0 / 3.0));
    CHECK_THROWS_AS(critical_exponents(2, 3.0), std::invalid_argument);
}

TEST_CASE("1D closed forms for Q_p") {
    CHECK(rel_err(closed_form::q_mass_sq_1d(3.0), 4.0) < 1e-13);
    CHECK(rel_err(closed_form::q_mass_sq_1d(5.0), kQuinticMassSq) < 1e-13);
    // profile solves -Q'' + Q = Q^p pointwise (check p = 3 against sqrt2 sech)
    for (double x : {-2.0, 0.0, 0.7, 3.1})
        CHECK(rel_err(closed_form::q_profile_1d(3.0, x), std::sqrt(2.0) / std::cosh(x)) < 1e-14);
}

TEST_CASE("gn_constant: reference values and the critical-case identity") {
    // N=1, eta=2, ||Q_3||_2 = 2: (8/6) (6/2)^{1/2} / 4 = 1/sqrt(3)
    CHECK(rel_err(gn_constant(1, 2.0, 2.0), 1.0 / std::sqrt(3.0)) < 1e-14);
    // N=1, eta=4: prefactor reduces to 3
    CHECK(rel_err(gn_constant(1, 4.0, 1.3), 3.0 * std::pow(1.3, -4.0)) < 1e-13);
    // at eta = 4/N the constant is (N+2)/N * mass^{-4/N}
    for (int n : {1, 2, 3}) {
        const double eta = 4.0 / n;
        const double m = 1.7;
        const double want = (n + 2.0) / n * std::pow(m, -eta);
        CHECK(rel_err(gn_constant(n, eta, m), want) < 1e-13);
    }
    CHECK_THROWS_AS(gn_constant(3, 4.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gn_constant(1, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("hartree_gn_constant: critical identity and mass power law") {
    const int n = 1;
    const double beta = 0.5;
    const double qc = 1.0 + (2.0 + beta) / n;  // 3.5
    const double w = 1.23;
    CHECK(rel_err(hartree_gn_constant(n, beta, qc, w), qc * std::pow(w, 2.0 - 2.0 * qc)) < 1e-12);

    const double p = 2.0;
    const double c1 = hartree_gn_constant(3, 2.0, p, 1.0);
    const double c2 = hartree_gn_constant(3, 2.0, p, 2.0);
    CHECK(rel_err(c2, c1 * std::pow(2.0, 2.0 - 2.0 * p)) < 1e-14);

    CHECK_THROWS_AS(hartree_gn_constant(1, 0.5, 1.2, 1.0), std::invalid_argument);
}

TEST_CASE("hls_constant: N=3 beta=2 closed form and finiteness") {
    // pi^{1/2} Gamma(1)/Gamma(5/2) [Gamma(3/2)/Gamma(3)]^{-2/3} = (4/3)(4/sqrt(pi))^{2/3}
    const double want = 4.0 / 3.0 * std::pow(4.0 / std::sqrt(kPi), 2.0 / 3.0);
    CHECK(rel_err(hls_constant(3, 2.0), want) < 1e-12);
    CHECK(std::abs(hls_constant(3, 2.0) - 2.2940) < 1e-3);

    for (double beta : {0.2, 1.0, 1.9}) CHECK(hls_constant(2, beta) > 0.0);
    CHECK(std::isfinite(hls_constant(3, 2.999)));
    CHECK_THROWS_AS(hls_constant(2, 2.5), std::invalid_argument);
}

TEST_CASE("petviashvili: 1D cubic matches sqrt(2) sech") {
    auto g = grid1d(60.0, 1024);
    auto ref = petviashvili_solve(ReferenceKind::Q, 1, 3.0, std::nullopt, g, {});
    CHECK(ref.residual <= 1e-10);
    CHECK(std::abs(ref.mass_sq - 4.0) < 1e-6);

    auto exact = sech_soliton(g);
    double err2 = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) err2 += std::norm(ref.field[i] - exact[i]);
    CHECK(std::sqrt(err2 * g->cell_volume()) < 1e-6);

    CHECK(radial_asymmetry(ref.field) < 1e-8);
    CHECK(boundary_decay_ratio(ref.field) < 1e-10);
}

TEST_CASE("petviashvili: 1D quintic mass hits the closed form") {
    auto g = grid1d(60.0, 1024);
    auto ref = petviashvili_solve(ReferenceKind::Q, 1, 5.0, std::nullopt, g, {});
    CHECK(std::abs(ref.mass_sq - kQuinticMassSq) < 1e-4);
    CHECK(threshold_mass(ref) == ref.mass_sq);
}

TEST_CASE("petviashvili output is a fixed point") {
    auto g = grid1d(60.0, 512);
    PetviashviliOptions opts;
    opts.tol = 1e-11;
    auto ref = petviashvili_solve(ReferenceKind::Q, 1, 3.0, std::nullopt, g, opts);
    // one extra forced sweep from the converged profile moves it by <= tol in L2
    PetviashviliOptions one;
    one.tol = 0.0;  // unreachable: runs exactly max_iters sweeps
    one.max_iters = 1;
    one.throw_on_max_iters = false;
    one.check_boundary = false;
    one.initial = &ref.field;
    auto ref2 = petviashvili_solve(ReferenceKind::Q, 1, 3.0, std::nullopt, g, one);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < ref.field.size(); ++i)
        diff2 += std::norm(ref.field[i] - ref2.field[i]);
    CHECK(std::sqrt(diff2 * g->cell_volume()) <= 1e-10);
}

TEST_CASE("petviashvili: ground-state mass is initial-guess independent") {
    // the L2 norm of the ground state is well-defined even where uniqueness
    // is open, so two admissible starts must agree
    auto g = grid_nd(2, 56.0, 160);
    auto a = petviashvili_solve(ReferenceKind::W, 2, 2.0, 1.0, g, {});

    ComplexField wide = gaussian(g, 2.0);  // a different admissible start
    PetviashviliOptions opts;
    opts.initial = &wide;
    auto b = petviashvili_solve(ReferenceKind::W, 2, 2.0, 1.0, g, opts);
    CHECK(rel_err(a.mass_sq, b.mass_sq) < 1e-6);
}

TEST_CASE("petviashvili: 2D Choquard self-convergence under refinement") {
    auto coarse = petviashvili_solve(ReferenceKind::W, 2, 2.0, 1.0, grid_nd(2, 56.0, 160), {});
    auto fine = petviashvili_solve(ReferenceKind::W, 2, 2.0, 1.0, grid_nd(2, 56.0, 224), {});
    CHECK(coarse.residual <= 1e-10);
    CHECK(std::abs(coarse.mass_sq - fine.mass_sq) < 1e-3 * fine.mass_sq);
}

TEST_CASE("petviashvili rejects boxes that are too small") {
    auto tiny = grid1d(10.0, 128);  // exp(-5) tail at the boundary
    CHECK_THROWS_AS(petviashvili_solve(ReferenceKind::Q, 1, 3.0, std::nullopt, tiny, {}),
                    BoundaryDecayError);
}

TEST_CASE("sharp GN inequality: no violations, saturated by Q") {
    auto g = grid1d(60.0, 1024);
    auto ref = petviashvili_solve(ReferenceKind::Q, 1, 3.0, std::nullopt, g, {});
    const double cgn = gn_constant(1, 2.0, std::sqrt(ref.mass_sq));

    auto quotient = [&](const ComplexField& u) {
        double l4 = 0.0;
        for (const auto& z : u.values()) l4 += std::norm(z) * std::norm(z);
        l4 *= u.grid().cell_volume();
        const double m = std::sqrt(mass(u));
        const double gn = std::sqrt(gradient_norm_sq(u));
        return l4 / (m * m * m * gn);
    };

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto u = random_band_limited(g, 9000 + seed);
        CHECK(quotient(u) <= cgn * (1.0 + 1e-9));
    }
    CHECK(quotient(ref.field) >= 0.999 * cgn);
}

TEST_CASE("convolution GN inequality (2D): no violations, near-saturated by W") {
    const double beta = 1.0, p = 2.0;
    auto g = grid_nd(2, 56.0, 160);
    auto ref = petviashvili_solve(ReferenceKind::W, 2, p, beta, g, {});
    const double c = hartree_gn_constant(2, beta, p, std::sqrt(ref.mass_sq));
    const RieszSpec rs{beta};

    auto quotient = [&](const ComplexField& u) {
        const double lhs = hartree_energy(u, p, rs);
        const double gn = std::sqrt(gradient_norm_sq(u));
        const double m = std::sqrt(mass(u));
        // exponents: ||grad u||^{Np-N-beta} ||u||^{N+beta-Np+2p}, N=2
        return lhs / (std::pow(gn, 1.0) * std::pow(m, 3.0));
    };

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto u = random_band_limited(g, 500 + seed);
        CHECK(quotient(u) <= c * 1.002);  // periodization/quadrature slack
    }
    CHECK(quotient(ref.field) >= 0.99 * c);
}

TEST_CASE("HLS diagonal bound on sampled nonnegative fields (N=3)") {
    const double beta = 2.0;
    auto g = grid_nd(3, 24.0, 48);
    const double c_sharp = hls_constant(3, beta) * riesz_kernel_constant(3, beta);
    const RieszSpec rs{beta};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto r = random_band_limited(g, 40 + seed);
        ComplexField v = r;
        for (auto& z : v.values()) z = cplx(std::norm(z), 0.0);  // nonnegative
        const double lhs = hartree_pairing(v, rs);
        // ||v||_{2N/(N+beta)} with 2N/(N+beta) = 6/5
        const double nrm = lp_norm(v, 1.2);
        CHECK(lhs <= c_sharp * nrm * nrm * (1.0 + 1e-3));
        CHECK(lhs <= hls_constant(3, beta) * nrm * nrm * (1.0 + 1e-3));  // un-normalized form
    }
}

TEST_CASE("threshold table: persistence, lookup, on-demand compute") {
    namespace fs = std::filesystem;
    const auto path = fs::temp_directory_path() / "wo_thresholds_test.csv";
    fs::remove(path);
    {
        ThresholdTable table(path);
        CHECK(!table.lookup(ReferenceKind::Q, 1, 3.0, 0.0).has_value());
        auto e = table.require(ReferenceKind::Q, 1, 3.0, 0.0);
        CHECK(std::abs(e.mass_sq - 4.0) < 1e-6);
        CHECK(fs::exists(path));
    }
    {
        ThresholdTable table(path);  // reload from disk
        auto hit = table.lookup(ReferenceKind::Q, 1, 3.0, 0.0);
        REQUIRE(hit.has_value());
        CHECK(std::abs(hit->mass_sq - 4.0) < 1e-6);
        CHECK(hit->kind == "Q");
        CHECK(hit->points == 1024);
    }
    fs::remove(path);
    fs::remove(path.string() + ".lock");
}

TEST_CASE("Richardson threshold reports an error bar") {
    auto rt = compute_threshold_richardson(ReferenceKind::Q, 1, 3.0, std::nullopt, 60.0, 512, 1024);
    CHECK(std::abs(rt.entry.mass_sq - 4.0) < 1e-6);
    CHECK(rt.mass_sq_error < 1e-6);
}

namespace {
ProblemSpec power_problem(double gamma, double p, double rho) {
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 256);
    prob.potential = PotentialSpec{gamma, 0.5, -1.0};
    prob.nonlinearity = PowerNL{p};
    prob.rho = rho;
    return prob;
}
}  // namespace

TEST_CASE("theorem checker: subcritical power case applies for gamma > 0") {
    ThresholdTable table;
    auto verdicts = check_theorem_conditions(power_problem(1.0, 3.0, 7.0), table);
    REQUIRE(verdicts.size() == 2);
    CHECK(verdicts[0].theorem_id == "1.1");
    CHECK(verdicts[0].case_id == 1);
    CHECK(verdicts[0].applies);
    CHECK(verdicts[0].margin > 0.0);
    CHECK(!verdicts[1].applies);  // p != p_c

    auto neg = check_theorem_conditions(power_problem(-1.0, 3.0, 7.0), table);
    CHECK(!neg[0].applies);
    CHECK(neg[0].margin <= 0.0);
}

TEST_CASE("theorem checker: critical power threshold gate") {
    ThresholdTable table;
    // rho = 3 exceeds ||Q_5||_2^2 = sqrt(3) pi/2 ~ 2.7207
    auto over = check_theorem_conditions(power_problem(1.0, 5.0, 3.0), table);
    REQUIRE(over.size() == 2);
    CHECK(!over[1].applies);
    CHECK(over[1].margin < 0.0);
    CHECK(*over[1].threshold_used == doctest::Approx(kQuinticMassSq).epsilon(1e-4));

    auto under = check_theorem_conditions(power_problem(1.0, 5.0, 2.0), table);
    CHECK(under[1].applies);
    CHECK(under[1].margin == doctest::Approx(1.0 - 2.0 / kQuinticMassSq).epsilon(1e-4));
}

TEST_CASE("theorem checker: combined critical condition of the mixed type") {
    ThresholdTable table;
    ProblemSpec prob;
    prob.grid = grid1d(40.0, 256);
    prob.potential = PotentialSpec{1.0, 0.5, -1.0};
    const double qc = 3.5;  // 1 + (2+beta)/N at beta = 0.5, N = 1
    prob.nonlinearity = MixedNL{qc, 0.5, 5.0};

    const double qm = table.require(ReferenceKind::Q, 1, 5.0, 0.0).mass_sq;
    const double wm = table.require(ReferenceKind::W, 1, qc, 0.5).mass_sq;

    // choose rho so the combined sum is exactly 1/2 by the independent formula
    auto sum_for = [&](double rho) {
        return std::pow(rho / qm, 2.0) + std::pow(rho / wm, 2.5);
    };
    double lo = 0.0, hi = std::min(qm, wm);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (sum_for(mid) < 0.5 ? lo : hi) = mid;
    }
    prob.rho = 0.5 * (lo + hi);

    auto verdicts = check_theorem_conditions(prob, table);
    REQUIRE(verdicts.size() == 4);
    const auto& combined = verdicts[3];
    CHECK(combined.theorem_id == "1.5");
    CHECK(combined.case_id == 4);
    CHECK(combined.applies);
    CHECK(std::abs(combined.margin - 0.5) < 1e-9);
    CHECK(std::abs(combined.margin - (1.0 - sum_for(prob.rho))) < 1e-12);

    // the mass gate mirrors the combined condition
    auto gate = critical_mass_gate(prob, table);
    CHECK(gate.ok);
    CHECK(std::abs(gate.margin - combined.margin) < 1e-12);
}

TEST_CASE("mass gate: subcritical always passes, supercritical never") {
    ThresholdTable table;
    auto sub = critical_mass_gate(power_problem(1.0, 3.0, 100.0), table);
    CHECK(sub.ok);
    auto sup = critical_mass_gate(power_problem(1.0, 5.5, 0.1), table);
    CHECK(!sup.ok);
}
