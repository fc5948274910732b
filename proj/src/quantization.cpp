#include "quantization.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "types.hpp"

namespace bohrwave {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
    throw Error(ErrorCode::invalid_argument, "params." + field + ": " + why);
}

double integer_distance(double x) { return std::abs(x - std::nearbyint(x)); }

}  // namespace

double positive_frequency_alpha_bound() { return (std::sqrt(5.0) - 1.0) / 2.0; }

void PhysicalParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) invalid("alpha", "must satisfy 0 < alpha < 1");
    if (require_positive_frequencies && !(alpha < positive_frequency_alpha_bound()))
        invalid("alpha", "exceeds (sqrt(5)-1)/2, omega_- would be negative");
    if (!(b > 0.0) || !std::isfinite(b)) invalid("b", "must be positive");
    if (!std::isfinite(xi_charge) || xi_charge < 0.0) invalid("xi_charge", "must be finite and >= 0");
    if (!(omega0 >= 0.0) || !std::isfinite(omega0)) invalid("omega0", "must be >= 0");
    if (!(m_eff > 0.0) || !std::isfinite(m_eff)) invalid("m_eff", "must be positive");
    if (particle) {
        if (!(particle->m_p > 0.0)) invalid("m_p", "must be positive");
        if (!(particle->sigma > 0.0)) invalid("sigma", "must be positive when particle constants are given");
        if (!(particle->omega_p > 0.0)) invalid("omega_p", "must be positive");
    }
    if (alpha_exact && (*alpha_exact <= 0 || *alpha_exact >= 1)) invalid("alpha", "exact value out of (0, 1)");
    if (b_exact && *b_exact <= 0) invalid("b", "exact value must be positive");
}

PhysicalParams PhysicalParams::exact(const Rational& alpha, const Rational& b) {
    PhysicalParams p;
    p.alpha = to_double(alpha);
    p.b = to_double(b);
    p.alpha_exact = alpha;
    p.b_exact = b;
    return p;
}

double OrbitSolution::lagrangian() const { return -m_eff * s + params.alpha / r; }

double OrbitSolution::period() const { return 2.0 * kPi * r / v; }

ModeNumbers mode_numbers(const PhysicalParams& params, double n) {
    const double N = n * n / params.alpha;
    return {(N + n) / params.b, (N - n) / params.b};
}

ExactModeNumbers mode_numbers_exact(const Rational& alpha, const Rational& b, const Rational& n) {
    if (alpha <= 0 || b <= 0) throw Error(ErrorCode::invalid_argument, "mode_numbers: alpha and b must be positive");
    const Rational N = n * n / alpha;
    return {(N + n) / b, (N - n) / b};
}

SelectionResult check_selection_rule(const PhysicalParams& params, double n, double tol) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "check_selection_rule: tol must be >= 0");
    if (params.alpha_exact && params.b_exact)
        return check_selection_rule_exact(*params.alpha_exact, *params.b_exact, Rational(n), tol);
    const ModeNumbers m = mode_numbers(params, n);
    const double residual = std::max(integer_distance(m.m_plus), integer_distance(m.m_minus));
    return {residual <= tol, residual};
}

SelectionResult check_selection_rule_exact(const Rational& alpha, const Rational& b, const Rational& n, double tol) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::invalid_argument, "check_selection_rule: tol must be >= 0");
    const ExactModeNumbers m = mode_numbers_exact(alpha, b, n);
    const Rational dp = distance_to_integer(m.m_plus);
    const Rational dm = distance_to_integer(m.m_minus);
    const double residual = to_double(dp > dm ? dp : dm);
    return {residual <= tol, residual};
}

double fine_structure_from_modes(double m_plus, double m_minus, double b) {
    if (!(m_minus >= 0.0) || !(m_plus >= m_minus))
        throw Error(ErrorCode::invalid_argument, "fine_structure_from_modes: need m_plus > m_minus >= 0");
    if (m_plus == m_minus) throw Error(ErrorCode::zero_charge, "fine_structure_from_modes: m_plus == m_minus gives alpha = 0");
    const double d = m_plus - m_minus;
    return 0.5 * b * d * d / (m_plus + m_minus);
}

Rational fine_structure_from_modes_exact(const Rational& m_plus, const Rational& m_minus, const Rational& b) {
    if (m_minus < 0 || m_plus < m_minus)
        throw Error(ErrorCode::invalid_argument, "fine_structure_from_modes: need m_plus > m_minus >= 0");
    if (m_plus == m_minus) throw Error(ErrorCode::zero_charge, "fine_structure_from_modes: m_plus == m_minus gives alpha = 0");
    const Rational d = m_plus - m_minus;
    return b * d * d / (2 * (m_plus + m_minus));
}

OrbitSolution solve_orbit(const PhysicalParams& params, double n) {
    params.validate();
    if (!(n > params.alpha))
        throw Error(ErrorCode::superluminal,
                    "solve_orbit: n = " + std::to_string(n) + " <= alpha gives v >= 1");

    const double alpha = params.alpha;
    const double b = params.b;
    const double ratio = alpha / n;
    const double s = std::sqrt((1.0 - ratio) * (1.0 + ratio));
    const double harmony = 1.0 - alpha * alpha / ((n - alpha) * (n + alpha));
    if (!(harmony > 0.0))
        throw Error(ErrorCode::domain, "solve_orbit: 1 - alpha^2/(n^2 - alpha^2) <= 0 at n = " + std::to_string(n));

    OrbitSolution o;
    o.params = params;
    o.n = n;
    o.s = s;

    if (params.particle) {
        const ParticleConstants& pc = *params.particle;
        o.Omega_p = pc.omega_p;
        o.m_eff = b * pc.omega_p / harmony;
        const double z2 = (o.m_eff - pc.m_p) / (pc.m_p * pc.sigma * pc.omega_p * pc.omega_p);
        if (z2 < 0.0) {
            const double min_omega = pc.m_p * harmony / b;
            throw UnphysicalAmplitudeError(
                "solve_orbit: |z0|^2 < 0 at n = " + std::to_string(n) + "; Omega_p must be >= " + std::to_string(min_omega),
                min_omega);
        }
        o.z0_mod2 = z2;
        const double rebuilt = pc.m_p * (1.0 + pc.sigma * pc.omega_p * pc.omega_p * z2);
        o.mass_consistency_residual = std::abs(rebuilt - o.m_eff) / o.m_eff;
    } else {
        o.m_eff = params.m_eff;
        o.Omega_p = o.m_eff * harmony / b;
    }

    const double m = o.m_eff;
    o.a0 = 1.0 / (m * alpha);
    o.N = n * n / alpha;
    const ModeNumbers modes = mode_numbers(params, n);
    o.m_plus = modes.m_plus;
    o.m_minus = modes.m_minus;
    o.v = ratio;
    o.r = n * n * o.a0 * s;
    o.P = m * ratio / s;
    o.E = m * s;
    o.omega_plus = m / s * (1.0 + ratio - ratio * ratio) / b;
    o.omega_minus = m / s * (1.0 - ratio - ratio * ratio) / b;
    o.k_plus = o.m_plus / o.r;
    o.k_minus = o.m_minus / o.r;
    o.epsilon = alpha / (b * o.r);

    const SelectionResult sel = check_selection_rule(params, n);
    o.selection_ok = sel.ok;
    o.selection_residual = sel.residual;
    return o;
}

PhaseWaveResult historical_phase_wave(double v_e, double orbit_length, double m_e) {
    if (!(v_e > 0.0 && v_e < 1.0)) throw Error(ErrorCode::invalid_argument, "historical_phase_wave: need 0 < v_e < 1");
    if (!(orbit_length > 0.0) || !(m_e > 0.0))
        throw Error(ErrorCode::invalid_argument, "historical_phase_wave: orbit length and mass must be positive");
    PhaseWaveResult out;
    out.v_phi = 1.0 / v_e;
    out.delta_t = orbit_length / (out.v_phi - v_e);
    const double lab_clock = m_e * std::sqrt((1.0 - v_e) * (1.0 + v_e));
    out.action_over_h = lab_clock * out.delta_t / (2.0 * kPi);
    return out;
}

double nonrel_energy(const PhysicalParams& params, double n) {
    if (!(n > 0.0)) throw Error(ErrorCode::invalid_argument, "nonrel_energy: n must be positive");
    return params.m_eff - params.m_eff * params.alpha * params.alpha / (2.0 * n * n);
}

}  // namespace bohrwave
