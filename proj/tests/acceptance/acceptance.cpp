#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "checks.hpp"
#include "dynamics.hpp"
#include "quantization.hpp"
#include "rational.hpp"
#include "wavefield.hpp"

using namespace bohrwave;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome from_check(const CheckResult& r) {
    std::string detail = fmt("measured %.3e, threshold %.1e", r.measured, r.threshold);
    if (!r.detail.empty()) detail += "; " + r.detail;
    return {r.passed, detail};
}

PhysicalParams fine_structure() { return PhysicalParams::exact(make_rational(1, 137), 1); }

PhysicalParams figure_params() {
    PhysicalParams p = PhysicalParams::exact(make_rational(1, 3), 1);
    p.xi_charge = 1.0;
    p.omega0 = 0.0;
    return p;
}

Outcome table_ii() {
    const Rational alpha = make_rational(1, 137);
    const char* ns[] = {"1/2", "1", "3/2", "2", "5/2", "10"};
    const char* plus[] = {"34.75", "138", "309.75", "550", "858.75", "13710"};
    const char* minus[] = {"33.75", "136", "306.75", "546", "853.75", "13690"};
    int mismatches = 0;
    std::string got;
    for (int i = 0; i < 6; ++i) {
        const ExactModeNumbers m = mode_numbers_exact(alpha, 1, parse_rational(ns[i]));
        mismatches += m.m_plus != parse_rational(plus[i]);
        mismatches += m.m_minus != parse_rational(minus[i]);
        got += (i ? " " : "") + to_decimal_string(m.m_plus) + "/" + to_decimal_string(m.m_minus);
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches; m+/m- = " + got};
}

Outcome round_trip() {
    std::mt19937_64 rng(137);
    std::uniform_real_distribution<double> alpha_dist(1e-4, 0.6);
    std::uniform_real_distribution<double> b_dist(0.1, 10.0);
    std::uniform_real_distribution<double> n_dist(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        PhysicalParams p;
        p.alpha = alpha_dist(rng);
        p.b = b_dist(rng);
        const double n = p.alpha + 0.01 + 30.0 * n_dist(rng);
        const ModeNumbers m = mode_numbers(p, n);
        const double back = fine_structure_from_modes(m.m_plus, m.m_minus, p.b);
        worst = std::max(worst, std::abs(back - p.alpha) / p.alpha);
    }
    return {worst < 1e-12, fmt("max relative error %.3e over 100 triples", worst)};
}

Outcome quantum_potential_criterion() {
    const PhysicalParams p = fine_structure();
    const OrbitSolution o = solve_orbit(p, 1.0);
    const ModePair pair = make_mode_pair(o);
    const SphericalPoint at{o.r, kPi / 2.0, 0.0};
    bool ok = true;
    double worst = 0.0;
    double min_order = 1e300;
    for (const Mode* mode : {&pair.plus, &pair.minus}) {
        const double k2 = (mode->m / o.r) * (mode->m / o.r);
        worst = std::max(worst, std::abs(quantum_potential(*mode, at, 1e-4 * o.r)) / k2);
        double prev = std::abs(quantum_potential(*mode, at, 1e-2 * o.r));
        for (double h : {5e-3, 2.5e-3}) {
            const double cur = std::abs(quantum_potential(*mode, at, h * o.r));
            min_order = std::min(min_order, std::log2(prev / cur));
            prev = cur;
        }
    }
    ok = worst < 1e-4 && min_order > 1.8;

    PhysicalParams off = p;
    off.xi_charge = 2.0;
    const OrbitSolution oo = solve_orbit(off, 1.0);
    const ModePair op = make_mode_pair(oo);
    const SphericalPoint ato{oo.r, kPi / 2.0, 0.0};
    double mismatch = 0.0;
    for (Sign s : {Sign::plus, Sign::minus}) {
        const double want = quantum_potential_on_orbit(oo, s);
        const double got = quantum_potential(s == Sign::plus ? op.plus : op.minus, ato, 1e-4 * oo.r);
        mismatch = std::max(mismatch, std::abs(got - want) / std::abs(want));
    }
    ok = ok && mismatch < 1e-3;
    return {ok, fmt("max |Q|/k^2 = %.3e (< 1e-4), convergence order %.2f, off-charge relative mismatch %.3e (< 1e-3)",
                    worst, min_order, mismatch)};
}

IntegratorOptions tuned_options(const OrbitSolution& o) {
    IntegratorOptions opt;
    opt.omega_p = o.Omega_p;
    opt.sample_interval = o.period() / 64.0;
    return opt;
}

Outcome self_consistency() {
    const PhysicalParams p = fine_structure();
    const OrbitSolution o = solve_orbit(p, 1.0);
    const Trajectory t = integrate_orbit(p, circular_initials(o), 100.0 * o.period(), 1e-12, tuned_options(o));
    const TrajectorySummary s = summarize_trajectory(t, o, 1.0);
    const double action_err = std::abs(s.action_per_period - 1.0);
    const bool ok = s.radius_deviation < 1e-6 && s.energy_drift < 1e-9 && s.angular_momentum_drift < 1e-9 &&
                    action_err < 1e-8;
    return {ok, fmt("radius %.2e, E drift %.2e, L drift %.2e", s.radius_deviation, s.energy_drift,
                    s.angular_momentum_drift) +
                    fmt(", |action/2pi - n| %.2e, %.0f steps", action_err, double(t.accepted_steps))};
}

Outcome constraint() {
    const PhysicalParams p = fine_structure();
    const OrbitSolution o = solve_orbit(p, 1.0);
    const Trajectory t = integrate_orbit(p, circular_initials(o), 10.0 * o.period(), 1e-12, tuned_options(o));
    const ConstraintResidual r = constraint_residual(t, o, 1.0);
    return {r.max_abs < 1e-8 && r.max_phase < 1e-8,
            fmt("modulus residual %.3e, phase residual %.3e over %.0f samples", r.max_abs, r.max_phase,
                double(t.samples.size()))};
}

Outcome mode_equivalence() {
    CheckResult worst = check_mode_equivalence(figure_params(), 1.0, 256);
    for (double n : {2.0, 3.0}) {
        const CheckResult r = check_mode_equivalence(figure_params(), n, 256);
        if (worst.passed && (!r.passed || r.measured > worst.measured)) worst = r;
    }
    return from_check(worst);
}

Outcome figure_maps() {
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int grid_n = 256;
    bool ok = true;
    std::string detail;
    for (double n : {1.0, 2.0, 3.0}) {
        const OrbitSolution o = solve_orbit(figure_params(), n);
        const ModePair pair = matched_pair(o, 1.0);
        const IntensityGrid g = intensity_map(o, pair, Plane::equatorial, 2.0 * o.r / o.a0, grid_n, threads);
        const double x = g.axis[g.argmax % grid_n];
        const double y = g.axis[g.argmax / grid_n];
        const double off = std::abs(std::hypot(x, y) - g.r_orbit) / g.cell;
        ok = ok && off <= 1.0;
        detail += fmt("n=%.0f argmax radius %.4f a0 vs r_n %.4f a0", n, std::hypot(x, y), g.r_orbit) +
                  fmt(" (%.1f cells); ", off);
    }
    const OrbitSolution o = solve_orbit(figure_params(), 1.0);
    const IntensityGrid g =
        intensity_map(o, matched_pair(o, 1.0), Plane::meridian, 2.0 * o.r / o.a0, grid_n, threads);
    const std::vector<std::size_t> peaks = local_maxima(g, 0.5);
    bool placed = peaks.size() == 2;
    double worst = 0.0;
    for (std::size_t idx : peaks) {
        const double x = g.axis[idx % grid_n];
        const double z = g.axis[idx / grid_n];
        const double off = std::max(std::abs(std::abs(x) - g.r_orbit), std::abs(z)) / g.cell;
        worst = std::max(worst, off);
        placed = placed && off <= 1.0;
    }
    ok = ok && placed;
    detail += fmt("meridian: %.0f maxima, farthest %.1f cells from (+-r_1, 0)", double(peaks.size()), worst);
    return {ok, detail};
}

Outcome nonrelativistic() {
    const PhysicalParams p = fine_structure();
    const OrbitSolution o = solve_orbit(p, 1.0);
    const double d = std::abs(o.E - nonrel_energy(p, 1.0));
    return {d < 1e-8, fmt("|E_1 - (m - m alpha^2/2)| = %.3e m", d)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const PhysicalParams fs = fine_structure();
    const std::vector<Criterion> criteria = {
        {"table_ii_reproduction", table_ii},
        {"fine_structure_round_trip", round_trip},
        {"phase_harmony", [] { return from_check(check_phase_harmony({1.0 / 137.0, 1.0 / 3.0}, 20)); }},
        {"quantum_potential_vanishing", quantum_potential_criterion},
        {"orbit_self_consistency", self_consistency},
        {"constraint_residual", constraint},
        {"mode_closed_form_equivalence", mode_equivalence},
        {"bessel_kummer_reduction", [] { return from_check(check_bessel_kummer(10, 50.0)); }},
        {"asymptotic_law", [] { return from_check(check_asymptotics(5, 1.0 / 3.0)); }},
        {"guidance_equivalence", [fs] { return from_check(check_bohmian(fs, {1.0, 2.0, 3.0})); }},
        {"figure_data_properties", figure_maps},
        {"nonrelativistic_limit", nonrelativistic},
    };

    int failed = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !out.passed;
        std::printf("%s %2d %-30s %s [%.2fs]\n", out.passed ? "PASS" : "FAIL", index, c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
