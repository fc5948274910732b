#pragma once

#include <optional>
#include <utility>

#include "rational.hpp"

namespace bohrwave {

/// Bare particle constants (m_p, sigma, Omega_p) from which the effective mass
/// and the internal amplitude |z0| follow at each n.
struct ParticleConstants {
    double m_p = 1.0;
    double sigma = 0.0;
    double omega_p = 1.0;
};

/// Model constants in natural units (c = hbar = 1).
struct PhysicalParams {
    double alpha = 1.0 / 137.0;
    double b = 1.0;
    double xi_charge = 1.0;  ///< e' = xi e, so beta = xi alpha
    double omega0 = 0.0;
    double m_eff = 1.0;
    std::optional<ParticleConstants> particle;
    /// Exact values, when known, for the integer-valued statements.
    std::optional<Rational> alpha_exact;
    std::optional<Rational> b_exact;
    /// Enforce alpha < (sqrt(5)-1)/2 so both mode frequencies stay positive.
    bool require_positive_frequencies = true;

    double beta() const { return xi_charge * alpha; }

    /// Throws Error(invalid_argument) with the offending field name.
    void validate() const;

    /// Sets alpha and b (and their exact counterparts) from rationals.
    static PhysicalParams exact(const Rational& alpha, const Rational& b);
};

/// Upper bound on alpha for non-negative mode frequencies.
double positive_frequency_alpha_bound();

struct OrbitSolution {
    PhysicalParams params;
    double n = 0.0;
    double N = 0.0;
    double m_plus = 0.0;
    double m_minus = 0.0;
    double v = 0.0;
    double r = 0.0;
    double P = 0.0;
    double E = 0.0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double k_plus = 0.0;
    double k_minus = 0.0;
    double epsilon = 0.0;
    double Omega_p = 0.0;
    std::optional<double> z0_mod2;
    bool selection_ok = false;
    double selection_residual = 0.0;

    double m_eff = 1.0;  ///< mass actually used at this n
    double s = 1.0;      ///< sqrt(1 - alpha^2/n^2)
    double a0 = 0.0;     ///< 1/(m_eff alpha)
    /// |m_p(1 + sigma Omega_p^2 |z0|^2) - m_eff| / m_eff when particle constants are given.
    std::optional<double> mass_consistency_residual;

    /// Orbital Lagrangian -m_eff s + alpha/r.
    double lagrangian() const;
    /// Lab-frame period 2 pi r / v.
    double period() const;
};

inline constexpr double kDefaultIntegerTolerance = 1e-9;

/// Closed-form quantized orbit at angular momentum n.
/// Throws Error(superluminal) for n <= alpha and UnphysicalAmplitudeError when the
/// amplitude equation has a negative right-hand side.
OrbitSolution solve_orbit(const PhysicalParams& params, double n);

struct ModeNumbers {
    double m_plus;
    double m_minus;
};

struct ExactModeNumbers {
    Rational m_plus;
    Rational m_minus;
};

/// b m_pm = n^2/alpha +- n.
ModeNumbers mode_numbers(const PhysicalParams& params, double n);
ExactModeNumbers mode_numbers_exact(const Rational& alpha, const Rational& b, const Rational& n);

struct SelectionResult {
    bool ok;
    double residual;  ///< largest distance of m_pm from an integer
};

SelectionResult check_selection_rule(const PhysicalParams& params, double n, double tol = kDefaultIntegerTolerance);
SelectionResult check_selection_rule_exact(const Rational& alpha, const Rational& b, const Rational& n,
                                           double tol = kDefaultIntegerTolerance);

/// alpha = (b/2)(m+ - m-)^2/(m+ + m-). Throws Error(zero_charge) when m+ == m-.
double fine_structure_from_modes(double m_plus, double m_minus, double b);
Rational fine_structure_from_modes_exact(const Rational& m_plus, const Rational& m_minus, const Rational& b);

struct PhaseWaveResult {
    double v_phi;
    double delta_t;
    double action_over_h;
};

/// De Broglie's original phase-wave argument for an electron of speed v_e on an
/// orbit of length L: the phase wave (speed 1/v_e) catches up after delta_t, and
/// the clock phase accumulated meanwhile, over 2 pi, is the quantum number.
PhaseWaveResult historical_phase_wave(double v_e, double orbit_length, double m_e);

/// m_eff - m_eff alpha^2/(2 n^2).
double nonrel_energy(const PhysicalParams& params, double n);

}  // namespace bohrwave
