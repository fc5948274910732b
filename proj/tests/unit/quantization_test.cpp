#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "quantization.hpp"
#include "rational.hpp"

using namespace bohrwave;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-3/2") == make_rational(-3, 2));
    CHECK(parse_rational("1.5e-3") == make_rational(3, 2000));
    CHECK(parse_rational("1/137.5") == make_rational(2, 275));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(to_string(make_rational(10, 4)) == "5/2");
    CHECK(to_decimal_string(make_rational(139, 4)) == "34.75");
    CHECK(to_decimal_string(make_rational(1, 3)) == "1/3");
    CHECK(distance_to_integer(make_rational(7, 4)) == make_rational(1, 4));
}

TEST_CASE("exact mode numbers reproduce the published table") {
    const Rational alpha = make_rational(1, 137);
    const Rational b = 1;
    struct Row {
        Rational n, plus, minus;
    };
    const Row rows[] = {
        {make_rational(1, 2), make_rational(139, 4), make_rational(135, 4)},
        {1, 138, 136},
        {make_rational(3, 2), make_rational(1239, 4), make_rational(1227, 4)},
        {2, 550, 546},
        {make_rational(5, 2), make_rational(3435, 4), make_rational(3415, 4)},
        {10, 13710, 13690},
    };
    for (const Row& row : rows) {
        const ExactModeNumbers m = mode_numbers_exact(alpha, b, row.n);
        CHECK(m.m_plus == row.plus);
        CHECK(m.m_minus == row.minus);
    }
    CHECK(to_decimal_string(mode_numbers_exact(alpha, b, make_rational(3, 2)).m_plus) == "309.75");
}

TEST_CASE("b = 2 halves the mode numbers") {
    const Rational alpha = make_rational(1, 137);
    const ExactModeNumbers one = mode_numbers_exact(alpha, 1, 2);
    const ExactModeNumbers two = mode_numbers_exact(alpha, 2, 2);
    CHECK(two.m_plus * 2 == one.m_plus);
    CHECK(two.m_minus * 2 == one.m_minus);
    CHECK(two.m_plus == 275);
}

TEST_CASE("selection rule") {
    PhysicalParams p = PhysicalParams::exact(make_rational(1, 137), 1);
    CHECK(check_selection_rule(p, 1.0).ok);
    const SelectionResult half = check_selection_rule(p, 0.5);
    CHECK_FALSE(half.ok);
    CHECK(half.residual == doctest::Approx(0.25));
    PhysicalParams approx;
    approx.alpha = 1.0 / 137.035999;
    CHECK_FALSE(check_selection_rule(approx, 1.0).ok);
}

TEST_CASE("fine structure round trip over random triples") {
    std::mt19937_64 rng(20261017);
    std::uniform_real_distribution<double> alpha_dist(1e-3, 0.6);
    std::uniform_real_distribution<double> b_dist(0.25, 4.0);
    std::uniform_real_distribution<double> n_dist(1.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        PhysicalParams p;
        p.alpha = alpha_dist(rng);
        p.b = b_dist(rng);
        const double n = n_dist(rng);
        const ModeNumbers m = mode_numbers(p, n);
        worst = std::max(worst, std::abs(fine_structure_from_modes(m.m_plus, m.m_minus, p.b) - p.alpha) / p.alpha);
    }
    CHECK(worst < 1e-12);
    CHECK(fine_structure_from_modes_exact(138, 136, 1) == make_rational(1, 137));
    CHECK_THROWS_AS(fine_structure_from_modes(5.0, 5.0, 1.0), Error);
}

TEST_CASE("orbit identities") {
    PhysicalParams p;
    for (double n : {1.0, 2.0, 3.0, 7.5}) {
        const OrbitSolution o = solve_orbit(p, n);
        CHECK(o.v == doctest::Approx(p.alpha / n).epsilon(1e-15));
        CHECK(o.k_plus - o.omega_plus == doctest::Approx(o.epsilon).epsilon(1e-9));
        CHECK(o.k_minus - o.omega_minus == doctest::Approx(o.epsilon).epsilon(1e-9));
        // Coulomb balance gamma m v^2 r = alpha
        CHECK(o.m_eff * o.v * o.v * o.r / o.s == doctest::Approx(p.alpha).epsilon(1e-14));
        // angular momentum P r = n
        CHECK(o.P * o.r == doctest::Approx(n).epsilon(1e-14));
        CHECK(p.b * o.Omega_p == doctest::Approx(-o.lagrangian() / o.s).epsilon(1e-14));
    }
}

TEST_CASE("orbit domain errors") {
    PhysicalParams p;
    p.alpha = 0.5;
    try {
        solve_orbit(p, 0.4);
        FAIL("expected superluminal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::superluminal);
    }
    p.alpha = 0.7;
    try {
        solve_orbit(p, 1.0);
        FAIL("expected the positivity bound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
        CHECK(std::string(e.what()).find("params.alpha") != std::string::npos);
    }
    p.require_positive_frequencies = false;
    CHECK_NOTHROW(solve_orbit(p, 1.0));
    PhysicalParams bad;
    bad.b = -1.0;
    CHECK_THROWS_WITH_AS(solve_orbit(bad, 1.0), doctest::Contains("params.b"), Error);
}

TEST_CASE("particle constants fix the effective mass") {
    PhysicalParams p;
    p.particle = ParticleConstants{1.0, 0.5, 1.2};
    const OrbitSolution o = solve_orbit(p, 1.0);
    REQUIRE(o.z0_mod2);
    CHECK(*o.z0_mod2 >= 0.0);
    CHECK(o.Omega_p == 1.2);
    CHECK(*o.mass_consistency_residual < 1e-14);

    p.particle = ParticleConstants{1.0, 0.5, 0.5};
    try {
        solve_orbit(p, 1.0);
        FAIL("expected a negative amplitude");
    } catch (const UnphysicalAmplitudeError& e) {
        CHECK(e.code() == ErrorCode::unphysical_amplitude);
        CHECK(e.min_omega_p() > 0.5);
    }
}

TEST_CASE("historical phase wave returns the quantum number") {
    PhysicalParams p;
    for (double n : {1.0, 2.0, 5.0}) {
        const OrbitSolution o = solve_orbit(p, n);
        const PhaseWaveResult w = historical_phase_wave(o.v, 2.0 * kPi * o.r, 1.0);
        CHECK(w.v_phi * o.v == doctest::Approx(1.0));
        CHECK(w.action_over_h == doctest::Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("non-relativistic limit") {
    PhysicalParams p;
    const OrbitSolution o = solve_orbit(p, 1.0);
    CHECK(std::abs(o.E - nonrel_energy(p, 1.0)) < 1e-8);
}
