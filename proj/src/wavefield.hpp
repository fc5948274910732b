#pragma once

#include <optional>
#include <vector>

#include "quantization.hpp"
#include "specfun.hpp"
#include "types.hpp"

namespace bohrwave {

enum class Sign { plus, minus };

enum class Regime {
    coulomb,       ///< Kummer form with charge beta
    chargeless,    ///< spherical Bessel form, beta = 0
    klein_gordon,  ///< Kummer form with omega~ = sqrt(omega^2 - omega0^2), beta~ = beta omega/omega~
};

const char* regime_name(Regime regime) noexcept;

/// One eigenmode u = A R(r) P_l^{+-m}(cos theta) exp(i(+-m phi - omega t)).
struct Mode {
    Sign sign = Sign::plus;
    int l = 0;
    int m = 0;  ///< non-negative; the sign picks +m or -m
    double omega = 1.0;
    double beta = 0.0;
    double omega0 = 0.0;
    double l_prime = 0.0;
    Regime regime = Regime::chargeless;
    Complex amplitude{1.0, 0.0};

    int signed_m() const { return sign == Sign::plus ? m : -m; }
    /// Radial wavenumber and charge parameter actually entering the Kummer form.
    double radial_omega() const;
    double radial_beta() const;
};

/// l' = -1/2 + sqrt((l + 1/2)^2 - beta^2). Throws Error(supercritical_charge) for beta >= l + 1/2.
double effective_order(int l, double beta);

/// Builds a mode; the regime defaults to klein_gordon when omega0 > 0, chargeless
/// when beta == 0 and coulomb otherwise. Passing Regime::coulomb with beta = 0
/// forces the Kummer path.
Mode make_mode(Sign sign, int l, int m, double omega, double beta, double omega0 = 0.0,
               std::optional<Regime> regime = std::nullopt);

/// Radial function. The charged forms are real up to rounding (Kummer's
/// transformation maps the expression to its own conjugate), so the rounding
/// residue in the imaginary part is dropped.
Complex radial(const Mode& mode, double r, const specfun::KummerOptions& opts = {});

/// C sin(w r - pi l'/2 + beta ln(2 w r) + eta)/(w r), eta = arg Gamma(l' + 1 - i beta).
Complex radial_asymptotic(const Mode& mode, double r);

/// Normalization constant C of the large-r form (real).
Complex asymptotic_normalization(const Mode& mode);

/// Residual of R'' + 2R'/r - l'(l'+1)R/r^2 + (2 beta w/r + w^2) R by central differences.
Complex radial_ode_residual(const Mode& mode, double r, double h);

Complex eval_mode(const Mode& mode, double t, double r, double theta, double phi);

struct ModePair {
    Mode plus;
    Mode minus;
};

/// Counter-propagating modes for an orbit: l_pm default to m_pm, frequencies and
/// charge from the orbit parameters. Throws Error(invalid_argument) when m_pm are
/// not integers.
ModePair make_mode_pair(const OrbitSolution& orbit, std::optional<int> l_plus = std::nullopt,
                        std::optional<int> l_minus = std::nullopt);

struct MatchedAmplitudes {
    Complex a_plus;
    Complex a_minus;
    double z0;  ///< internal amplitude identified with u0
};

/// A_pm = u0 / (2 R(r_n) P_l^{+-m}(0)). Throws Error(unmatched_parity) for odd l+m
/// and Error(node_on_orbit) when the orbit sits on a radial node.
MatchedAmplitudes match_amplitudes(const OrbitSolution& orbit, const ModePair& modes, double u0);

/// Returns the pair with amplitudes set by match_amplitudes.
ModePair matched_pair(const OrbitSolution& orbit, double u0, std::optional<int> l_plus = std::nullopt,
                      std::optional<int> l_minus = std::nullopt);

Complex eval_pair(const ModePair& pair, double t, double r, double theta, double phi);

struct FieldSample {
    Complex value;
    double carrier_phase = 0.0;
    double envelope = 0.0;
    SpacetimePoint position;
};

/// Closed-form field on the orbit:
/// u0 exp(i(n phi/b - (N - alpha) t/(b r_n))) cos(N phi/b - n t/(b r_n)).
FieldSample field_on_orbit(const OrbitSolution& orbit, double u0, double t, double phi);

/// Q = -laplacian(f)/f for f = |u| of one mode, central differences with step h
/// (angular steps h/r and h/(r sin theta)). Throws Error(undefined_potential) when f
/// is negligible against its neighbourhood.
double quantum_potential(const Mode& mode, const SphericalPoint& point, double h);

/// Exact value implied by the mode's phase: (w + beta/r)^2 - (m/(r sin theta))^2 - w0^2.
double quantum_potential_exact(const Mode& mode, const SphericalPoint& point);

/// On-orbit value for a mode pair member: ((m + beta - alpha/b)/r_n)^2 - (m/r_n)^2 - w0^2.
double quantum_potential_on_orbit(const OrbitSolution& orbit, Sign sign);

struct CurrentDivergence {
    double time_part;     ///< d_t[f^2 (d_t Phi + e'V)], identically zero for a stationary mode
    double spatial_part;  ///< -div(f^2 grad Phi)
    double total;
};

/// Divergence of the current f^2(dPhi + e'A) by nested central differences.
CurrentDivergence current_divergence(const Mode& mode, const SphericalPoint& point, double h);

/// (d_t - i beta/r)^2 u - laplacian(u) + w0^2 u for a superposition of modes sharing
/// beta and w0, by central differences in t and space with step h.
Complex field_equation_residual(const std::vector<Mode>& modes, const SpacetimePoint& point, double h);

/// (omega_+ - omega_-)/(k_+ + k_-) for the orbit's mode pair.
double group_velocity(const OrbitSolution& orbit);

/// (1/(r sin theta)) d arg(u)/d phi by central differences.
double phase_gradient_wavevector(const Mode& mode, const SphericalPoint& point, double h);

enum class Plane { equatorial, meridian };

const char* plane_name(Plane plane) noexcept;

struct IntensityGrid {
    Plane plane = Plane::equatorial;
    int grid_n = 0;
    double extent = 0.0;     ///< half-width in units of a0
    double cell = 0.0;       ///< cell width in units of a0
    double a0 = 0.0;
    double r_orbit = 0.0;    ///< r_n in units of a0
    std::vector<double> axis;       ///< cell centres in units of a0
    std::vector<Complex> value;     ///< row-major, row index along the second axis
    std::vector<double> intensity;  ///< |u|^2
    std::size_t argmax = 0;

    double at(int row, int col) const { return intensity[static_cast<std::size_t>(row) * grid_n + col]; }
};

inline constexpr int kMinGridN = 16;

/// |u(0, .)|^2 of the matched pair on a cell-centred grid covering
/// [-extent, extent]^2 (units of a0). Rows run along y (equatorial) or z (meridian).
/// Deterministic for any thread count.
IntensityGrid intensity_map(const OrbitSolution& orbit, const ModePair& modes, Plane plane, double extent,
                            int grid_n, int threads = 1);

/// Radius (units of a0) maximising the azimuthal mean of an equatorial grid,
/// using rings one cell wide.
double radial_intensity_argmax(const IntensityGrid& grid);

/// Local maxima of a grid above `fraction` of the global maximum: cells no
/// neighbour exceeds, with a run of equal cells counted once at its first
/// cell in row-major order.
std::vector<std::size_t> local_maxima(const IntensityGrid& grid, double fraction);

struct CurvePoint {
    double phi;
    double x;
    double y;
    double radius;
};

struct OrbitWaveCurves {
    std::vector<CurvePoint> total;   ///< r_n + delta Re u(0, r_n, pi/2, phi)
    std::vector<CurvePoint> phase;   ///< r_n + delta z0 cos(n phi / b)
    std::vector<CurvePoint> circle;  ///< r_n
    double delta = 0.0;
    double u0 = 1.0;
    bool undersampled = false;
    double closure = 0.0;  ///< distance between first and last point of the total curve
    int total_zero_count = 0;
    int phase_zero_count = 0;
    int envelope_zero_count = 0;
    double expected_phase_zero_count = 0.0;     ///< 2n/b
    double expected_envelope_zero_count = 0.0;  ///< 2N/b = m_+ + m_-
};

/// Figure-style curves over phi in [0, 2 pi] inclusive at t = 0. A non-positive
/// delta selects the default 0.15 r_n.
OrbitWaveCurves orbit_wave_curve(const OrbitSolution& orbit, double u0, double delta, int samples);

}  // namespace bohrwave
