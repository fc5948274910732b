#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "quantization.hpp"
#include "types.hpp"

namespace bohrwave {

/// Particle state in lab time; natural units, velocities in units of c.
struct TrajectoryState {
    double t = 0.0;
    Vec3 pos{0.0, 0.0, 0.0};
    Vec3 vel{0.0, 0.0, 0.0};
    double tau = 0.0;      ///< accumulated proper time
    double z_phase = 0.0;  ///< internal oscillator phase Omega_p tau
    double action = 0.0;   ///< accumulated integral of P . dx

    double gamma() const;
};

/// Reaction field N(tau) coupling particle and wave outside the transparency regime.
struct GeneralForceSpec {
    std::function<Complex(double tau)> script_N;
    bool enabled = false;
};

/// Spatial gradient of the u-field at (t, x).
using FieldGradient = std::function<std::array<Complex, 3>(double t, const Vec3& pos)>;

/// m_p (1 + sigma Omega_p^2 |z0|^2).
double effective_mass(double m_p, double sigma, double omega_p, double z0_mod);

struct Acceleration {
    Vec3 dv_dt;    ///< lab-time acceleration
    Vec3 du_dtau;  ///< proper-time derivative of the spatial four-velocity gamma v
    Vec3 force;    ///< dP/dt, lab-time force
};

/// Coulomb attraction -alpha r_hat/r^2 on a particle of mass m_eff, plus the
/// reaction term -(N* grad u + N grad u*) when the general force is enabled.
/// A cutoff <= 0 selects 1e-6 a0; closer approach throws Error(singularity).
Acceleration coulomb_acceleration(const PhysicalParams& params, const TrajectoryState& state,
                                  const GeneralForceSpec& force = {}, const FieldGradient& field_gradient = {},
                                  double cutoff = 0.0);

struct IntegratorOptions {
    /// Internal pulsation driving z_phase; defaults to the orbit-free value m_eff/b.
    std::optional<double> omega_p;
    /// Output spacing in lab time (dense output); 0 records every accepted step.
    double sample_interval = 0.0;
    /// Singularity radius in units of a0.
    double cutoff_factor = 1e-6;
    long max_steps = 20'000'000;
    GeneralForceSpec force;
    FieldGradient field_gradient;
};

struct Trajectory {
    std::vector<TrajectoryState> samples;
    long accepted_steps = 0;
    long rejected_steps = 0;
};

/// Thrown when integration stops early; carries everything computed so far.
class IntegrationError : public Error {
public:
    IntegrationError(ErrorCode code, const std::string& what, Trajectory partial)
        : Error(code, what), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Adaptive Dormand-Prince 5(4) in lab time with dense output. Position and the
/// four-velocity gamma v are propagated together with tau, z_phase and the action.
/// A negative duration integrates backwards.
Trajectory integrate_orbit(const PhysicalParams& params, const TrajectoryState& initial, double duration, double tol,
                           const IntegratorOptions& options = {});

/// Circular orbit start: position (r_n, 0, 0), velocity (0, v_n, 0).
TrajectoryState circular_initials(const OrbitSolution& orbit);

double orbit_energy(const PhysicalParams& params, const TrajectoryState& s);
double orbit_angular_momentum(const PhysicalParams& params, const TrajectoryState& s);

struct ConstraintResidual {
    double max_abs = 0.0;      ///< max |z(tau) - u(t, x_p)|
    double max_phase = 0.0;    ///< max |arg z - arg u|
    double phase_slope = 0.0;  ///< least-squares slope of the phase mismatch against t
};

/// Holonomic-constraint mismatch along a trajectory started on the orbit, with
/// z(tau) = z0 exp(-i z_phase) and u from the closed-form orbit field.
/// Throws Error(usage) when the trajectory does not start on this orbit.
ConstraintResidual constraint_residual(const Trajectory& trajectory, const OrbitSolution& orbit, double u0);

/// v = -grad S/(d_t S + eV) with S = n phi - (N - alpha) t/r_n and eV = -alpha/r,
/// gradients by central differences. Cartesian components.
Vec3 bohmian_velocity(const OrbitSolution& orbit, const SpacetimePoint& point);

struct TrajectorySummary {
    double radius_deviation = 0.0;          ///< max |r - r_n|/r_n
    double mean_radius_drift = 0.0;         ///< |mean r over the last period - mean r over the first|/r_n
    double energy_drift = 0.0;              ///< max relative change of m gamma - alpha/r
    double angular_momentum_drift = 0.0;    ///< max relative change of m gamma |r x v|
    double action_per_period = 0.0;         ///< accumulated action/(2 pi periods)
    double clock_ratio = 0.0;               ///< tau/(t sqrt(1 - v_n^2)) at the last sample
    std::optional<ConstraintResidual> constraint;
};

/// Drift and closure metrics of a trajectory against its reference orbit. The
/// constraint residual is included when the trajectory starts on the orbit.
TrajectorySummary summarize_trajectory(const Trajectory& trajectory, const OrbitSolution& orbit, double u0);

}  // namespace bohrwave
