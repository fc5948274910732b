#include "checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "dynamics.hpp"
#include "rational.hpp"
#include "wavefield.hpp"

namespace bohrwave {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

CheckResult make(std::string name, std::string identity, double measured, double threshold, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.identity = std::move(identity);
    r.measured = measured;
    r.threshold = threshold;
    r.passed = std::isfinite(measured) && measured <= threshold;
    r.detail = std::move(detail);
    return r;
}

CheckResult failed(std::string name, std::string identity, double threshold, const std::exception& e) {
    CheckResult r = make(std::move(name), std::move(identity), std::nan(""), threshold, e.what());
    r.passed = false;
    return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

CheckResult check_table_ii() {
    const char* identity = "b m_pm = n^2/alpha +- n, alpha^-1 = 137, b = 1";
    struct Row {
        const char* n;
        const char* m_plus;
        const char* m_minus;
    };
    static const Row published[] = {
        {"1/2", "34.75", "33.75"}, {"1", "138", "136"},         {"3/2", "309.75", "306.75"},
        {"2", "550", "546"},       {"5/2", "858.75", "853.75"}, {"10", "13710", "13690"},
    };
    try {
        const Rational alpha = make_rational(1, 137);
        const Rational b = 1;
        Rational worst = 0;
        for (const Row& row : published) {
            const ExactModeNumbers m = mode_numbers_exact(alpha, b, parse_rational(row.n));
            worst = std::max(worst, Rational(abs(m.m_plus - parse_rational(row.m_plus))));
            worst = std::max(worst, Rational(abs(m.m_minus - parse_rational(row.m_minus))));
        }
        return make("table_ii", identity, to_double(worst), 0.0, "exact rational comparison, 6 columns");
    } catch (const std::exception& e) {
        return failed("table_ii", identity, 0.0, e);
    }
}

CheckResult check_selection(const PhysicalParams& params, const std::vector<double>& n_values, bool strict) {
    const char* identity = "m_pm integer";
    try {
        double worst = 0.0;
        std::string bad;
        for (double n : n_values) {
            const SelectionResult s = check_selection_rule(params, n);
            worst = std::max(worst, s.residual);
            if (!s.ok) bad += (bad.empty() ? "" : ",") + fmt(n);
        }
        CheckResult r = make("selection_rule", identity, worst, kDefaultIntegerTolerance,
                             bad.empty() ? "all n admissible" : "non-integer m_pm at n = " + bad);
        if (!strict) {
            r.passed = true;
            if (!bad.empty()) r.detail += " (not enforced)";
        }
        return r;
    } catch (const std::exception& e) {
        return failed("selection_rule", identity, kDefaultIntegerTolerance, e);
    }
}

CheckResult check_round_trip(const PhysicalParams& params, const std::vector<double>& n_values) {
    const char* identity = "alpha = (b/2)(m+ - m-)^2/(m+ + m-)";
    try {
        double worst = 0.0;
        for (double n : n_values) {
            const ModeNumbers m = mode_numbers(params, n);
            worst = std::max(worst, rel(fine_structure_from_modes(m.m_plus, m.m_minus, params.b), params.alpha));
        }
        return make("fine_structure_round_trip", identity, worst, 1e-12);
    } catch (const std::exception& e) {
        return failed("fine_structure_round_trip", identity, 1e-12, e);
    }
}

CheckResult check_dispersion(const PhysicalParams& params, const std::vector<double>& n_values) {
    const char* identity = "k_pm - omega_pm = alpha/(b r_n)";
    try {
        double worst = 0.0;
        for (double n : n_values) {
            const OrbitSolution o = solve_orbit(params, n);
            const double eps = params.alpha / (params.b * o.r);
            worst = std::max(worst, std::abs(o.k_plus - o.omega_plus - eps) / o.k_plus);
            worst = std::max(worst, std::abs(o.k_minus - o.omega_minus - eps) / o.k_minus);
            worst = std::max(worst, rel(o.epsilon, eps));
        }
        return make("dispersion", identity, worst, 1e-12);
    } catch (const std::exception& e) {
        return failed("dispersion", identity, 1e-12, e);
    }
}

CheckResult check_velocity_triple(const PhysicalParams& params, const std::vector<double>& n_values) {
    const char* identity = "v = alpha/n, P = m gamma v, gamma m v^2 r = alpha";
    try {
        double worst = 0.0;
        for (double n : n_values) {
            const OrbitSolution o = solve_orbit(params, n);
            const double g = 1.0 / o.s;
            worst = std::max(worst, rel(o.v, params.alpha / n));
            worst = std::max(worst, rel(o.P, o.m_eff * g * o.v));
            worst = std::max(worst, rel(g * o.m_eff * o.v * o.v * o.r, params.alpha));
        }
        return make("velocity_triple", identity, worst, 1e-12);
    } catch (const std::exception& e) {
        return failed("velocity_triple", identity, 1e-12, e);
    }
}

CheckResult check_phase_harmony(const std::vector<double>& alphas, int n_max) {
    const char* identity = "b Omega_p = -L_n/sqrt(1 - alpha^2/n^2)";
    try {
        double worst = 0.0;
        for (double alpha : alphas) {
            PhysicalParams p;
            p.alpha = alpha;
            for (int n = 1; n <= n_max; ++n) {
                const OrbitSolution o = solve_orbit(p, n);
                worst = std::max(worst, rel(p.b * o.Omega_p, -o.lagrangian() / o.s));
            }
        }
        return make("phase_harmony", identity, worst, 1e-12);
    } catch (const std::exception& e) {
        return failed("phase_harmony", identity, 1e-12, e);
    }
}

CheckResult check_group_velocity(const PhysicalParams& params, const std::vector<double>& n_values) {
    const char* identity = "(omega+ - omega-)/(k+ + k-) = v_n";
    try {
        double worst = 0.0;
        for (double n : n_values) {
            const OrbitSolution o = solve_orbit(params, n);
            worst = std::max(worst, rel(group_velocity(o), o.v));
        }
        return make("group_velocity", identity, worst, 1e-12);
    } catch (const std::exception& e) {
        return failed("group_velocity", identity, 1e-12, e);
    }
}

CheckResult check_quantum_potential(const PhysicalParams& params, double n) {
    const char* identity = "Q_pm(r_n, pi/2) = 0 when b beta = alpha, omega0 = 0";
    try {
        const OrbitSolution o = solve_orbit(params, n);
        const ModePair pair = make_mode_pair(o);
        const SphericalPoint at{o.r, kPi / 2.0, 0.0};
        double worst = 0.0;
        std::string detail;
        for (Sign sign : {Sign::plus, Sign::minus}) {
            const Mode& mode = sign == Sign::plus ? pair.plus : pair.minus;
            const double k2 = (mode.m / o.r) * (mode.m / o.r);
            const double q = quantum_potential(mode, at, 1e-4 * o.r);
            const double predicted = quantum_potential_on_orbit(o, sign);
            worst = std::max(worst, std::abs(q) / k2);
            detail += std::string(sign == Sign::plus ? "Q+" : " Q-") + " = " + fmt(q) + " (predicted " + fmt(predicted) + ")";
        }
        return make("quantum_potential", identity, worst, 1e-4, detail);
    } catch (const std::exception& e) {
        return failed("quantum_potential", identity, 1e-4, e);
    }
}

CheckResult check_bessel_kummer(int l_max, double wr_max) {
    const char* identity = "Kummer form at beta = 0 equals spherical Bessel form";
    try {
        double worst = 0.0;
        const double step = 0.25;
        for (int l = 0; l <= l_max; ++l) {
            const Mode bessel = make_mode(Sign::plus, l, 0, 1.0, 0.0);
            const Mode kummer = make_mode(Sign::plus, l, 0, 1.0, 0.0, 0.0, Regime::coulomb);
            for (double x = step; x <= wr_max + 1e-12; x += step) {
                const double rb = radial(bessel, x).real();
                const double rk = radial(kummer, x).real();
                worst = std::max(worst, std::abs(rk - rb) / std::abs(rb));
            }
        }
        return make("bessel_kummer", identity, worst, 1e-10,
                    "l <= " + std::to_string(l_max) + ", omega r in (0, " + fmt(wr_max) + "]");
    } catch (const std::exception& e) {
        return failed("bessel_kummer", identity, 1e-10, e);
    }
}

CheckResult check_asymptotics(int l_max, double beta) {
    const char* identity = "R ~ C sin(w r - pi l'/2 + beta ln 2wr + eta)/(w r)";
    try {
        double worst = 0.0;
        bool monotone = true;
        for (int l = 0; l <= l_max; ++l) {
            const Mode mode = make_mode(Sign::plus, l, 0, 1.0, beta);
            const double c = std::abs(asymptotic_normalization(mode));
            std::array<double, 3> err{};
            const std::array<double, 3> radii{1e2, 1e3, 1e4};
            // Largest deviation over one wavelength, so the oscillating error is not sampled at a node.
            for (int i = 0; i < 3; ++i) {
                for (int k = 0; k < 256; ++k) {
                    const double r = radii[i] + 2.0 * kPi * k / 256.0;
                    err[i] = std::max(err[i], std::abs(radial(mode, r) - radial_asymptotic(mode, r)) * r / c);
                }
            }
            worst = std::max(worst, err[1]);
            monotone = monotone && err[0] > err[1] && err[1] > err[2];
        }
        CheckResult r = make("asymptotics", identity, worst, 1e-2,
                             "l <= " + std::to_string(l_max) + ", error relative to envelope at w r = 1e3");
        if (!monotone) {
            r.passed = false;
            r.detail += "; error not decreasing over w r = 1e2, 1e3, 1e4";
        }
        return r;
    } catch (const std::exception& e) {
        return failed("asymptotics", identity, 1e-2, e);
    }
}

CheckResult check_bohmian(const PhysicalParams& params, const std::vector<double>& n_values) {
    const char* identity = "|-grad S/(d_t S + eV)| = alpha/n on the orbit";
    try {
        double worst = 0.0;
        for (double n : n_values) {
            const OrbitSolution o = solve_orbit(params, n);
            const double phi = 0.7;
            const Vec3 v = bohmian_velocity(o, {0.3 * o.r, o.r, kPi / 2.0, phi});
            const Vec3 azimuthal{-std::sin(phi), std::cos(phi), 0.0};
            worst = std::max(worst, rel(norm(v), o.v));
            worst = std::max(worst, std::abs(1.0 - dot(v, azimuthal) / norm(v)));
        }
        return make("bohmian_velocity", identity, worst, 1e-10);
    } catch (const std::exception& e) {
        return failed("bohmian_velocity", identity, 1e-10, e);
    }
}

CheckResult check_mode_equivalence(const PhysicalParams& params, double n, int samples) {
    const char* identity = "u_+ + u_- = u0 e^{i carrier} cos(envelope) on the orbit";
    try {
        const OrbitSolution o = solve_orbit(params, n);
        const double u0 = 1.0;
        const ModePair pair = matched_pair(o, u0);
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const double phi = 2.0 * kPi * k / samples;
            const double t = 0.37 * o.r * k;
            const Complex modes = eval_pair(pair, t, o.r, kPi / 2.0, phi);
            worst = std::max(worst, std::abs(modes - field_on_orbit(o, u0, t, phi).value) / u0);
        }
        return make("mode_equivalence", identity, worst, 1e-10,
                    "n = " + fmt(n) + ", " + std::to_string(samples) + " samples, relative to u0");
    } catch (const std::exception& e) {
        return failed("mode_equivalence", identity, 1e-10, e);
    }
}

CheckResult check_nonrelativistic(const PhysicalParams& params) {
    const char* identity = "E_1 = m - m alpha^2/2 + O(alpha^4)";
    try {
        const OrbitSolution o = solve_orbit(params, 1.0);
        const double diff = std::abs(o.E - nonrel_energy(params, 1.0)) / o.m_eff;
        return make("nonrelativistic_limit", identity, diff, 1e-8);
    } catch (const std::exception& e) {
        return failed("nonrelativistic_limit", identity, 1e-8, e);
    }
}

std::vector<CheckResult> run_checks(const CheckConfig& config) {
    config.params.validate();
    const PhysicalParams& p = config.params;
    std::vector<CheckResult> out;
    out.push_back(check_table_ii());
    out.push_back(check_selection(p, config.n_values, config.strict_selection));
    out.push_back(check_round_trip(p, config.n_values));
    out.push_back(check_dispersion(p, config.n_values));
    out.push_back(check_velocity_triple(p, config.n_values));
    out.push_back(check_phase_harmony({p.alpha, 1.0 / 3.0}, 20));
    out.push_back(check_group_velocity(p, config.n_values));
    out.push_back(check_quantum_potential(p, config.n_values.empty() ? 1.0 : config.n_values.front()));
    out.push_back(check_bessel_kummer(10, 50.0));
    out.push_back(check_asymptotics(config.asymptotic_l_max, 1.0 / 3.0));
    out.push_back(check_bohmian(p, config.n_values));
    PhysicalParams fig1;
    fig1.alpha = 1.0 / 3.0;
    CheckResult eq = check_mode_equivalence(fig1, 1.0, 256);
    for (double n : {2.0, 3.0}) {
        const CheckResult more = check_mode_equivalence(fig1, n, 256);
        if (eq.passed && (!more.passed || more.measured > eq.measured)) eq = more;
    }
    out.push_back(eq);
    out.push_back(check_nonrelativistic(p));
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace bohrwave
