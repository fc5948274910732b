#include "dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wavefield.hpp"

namespace bohrwave {

namespace {

constexpr int kDim = 9;  // x y z, ux uy uz (gamma v), tau, z_phase, action
using State = std::array<double, kDim>;

// Dormand-Prince 5(4) tableau.
constexpr double C[] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};
constexpr double A[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
};
constexpr double B[] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
constexpr double E[] = {-71.0 / 57600, 0.0, 71.0 / 16695, -71.0 / 1920, 17253.0 / 339200, -22.0 / 525, 1.0 / 40};
// Dense output: y(t + theta h) = y + h sum_i k_i sum_j P[i][j] theta^(j+1).
constexpr double P[7][4] = {
    {1.0, -2.8535800653862835, 3.0717434641059005, -1.1270175653862835},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 4.023133379230305, -6.249321565289, 2.675424484351598},
    {0.0, -3.7324019615885042, 10.068970589843675, -5.685526961588504},
    {0.0, 2.5548038301849423, -6.399112377351017, 3.5219323679207912},
    {0.0, -1.3744241142186024, 3.272657752246729, -1.7672812570757455},
    {0.0, 1.3824689317781436, -3.764937863556287, 2.382468931778144},
};

struct Rhs {
    const PhysicalParams& params;
    double m;
    double omega_p;
    double cutoff;
    const IntegratorOptions& options;

    TrajectoryState as_state(double t, const State& y) const {
        TrajectoryState s;
        s.t = t;
        s.pos = {y[0], y[1], y[2]};
        const double g = std::sqrt(1.0 + y[3] * y[3] + y[4] * y[4] + y[5] * y[5]);
        s.vel = {y[3] / g, y[4] / g, y[5] / g};
        s.tau = y[6];
        s.z_phase = y[7];
        s.action = y[8];
        return s;
    }

    State operator()(double t, const State& y) const {
        const double u2 = y[3] * y[3] + y[4] * y[4] + y[5] * y[5];
        const double g = std::sqrt(1.0 + u2);
        PhysicalParams p = params;
        p.m_eff = m;
        const Acceleration acc =
            coulomb_acceleration(p, as_state(t, y), options.force, options.field_gradient, cutoff);
        State dy{};
        for (int i = 0; i < 3; ++i) {
            dy[i] = y[3 + i] / g;
            dy[3 + i] = acc.force[i] / m;
        }
        dy[6] = 1.0 / g;
        dy[7] = omega_p / g;
        dy[8] = m * u2 / g;
        return dy;
    }
};

State interpolate(const State& y, double h, const std::array<State, 7>& k, double theta) {
    double q[4];
    double pw = theta;
    for (int j = 0; j < 4; ++j) {
        q[j] = pw;
        pw *= theta;
    }
    State out = y;
    for (int d = 0; d < kDim; ++d) {
        double acc = 0.0;
        for (int i = 0; i < 7; ++i) {
            if (i == 1) continue;
            acc += k[i][d] * (P[i][0] * q[0] + P[i][1] * q[1] + P[i][2] * q[2] + P[i][3] * q[3]);
        }
        out[d] += h * acc;
    }
    return out;
}

double angle_unwrap(double previous, double angle) {
    double d = angle - std::remainder(previous, 2.0 * kPi);
    d = std::remainder(d, 2.0 * kPi);
    return previous + d;
}

}  // namespace

double TrajectoryState::gamma() const {
    const double v2 = dot(vel, vel);
    return 1.0 / std::sqrt((1.0 - std::sqrt(v2)) * (1.0 + std::sqrt(v2)));
}

double effective_mass(double m_p, double sigma, double omega_p, double z0_mod) {
    if (!(m_p > 0.0) || sigma < 0.0 || omega_p < 0.0 || z0_mod < 0.0)
        throw Error(ErrorCode::invalid_argument, "effective_mass: need m_p > 0 and non-negative sigma, Omega_p, |z0|");
    return m_p * (1.0 + sigma * omega_p * omega_p * z0_mod * z0_mod);
}

Acceleration coulomb_acceleration(const PhysicalParams& params, const TrajectoryState& state,
                                  const GeneralForceSpec& force, const FieldGradient& field_gradient, double cutoff) {
    const double m = params.m_eff;
    const double limit = cutoff > 0.0 ? cutoff : 1e-6 / (m * params.alpha);
    const double r = norm(state.pos);
    if (!(r > limit))
        throw Error(ErrorCode::singularity, "coulomb_acceleration: r = " + std::to_string(r) + " below the cutoff");
    const double v2 = dot(state.vel, state.vel);
    if (!(v2 < 1.0)) throw Error(ErrorCode::superluminal, "coulomb_acceleration: |v| >= 1");
    const double g = 1.0 / std::sqrt(1.0 - v2);

    Vec3 f;
    const double k = -params.alpha / (r * r * r);
    for (int i = 0; i < 3; ++i) f[i] = k * state.pos[i];
    if (force.enabled && force.script_N && field_gradient) {
        const Complex n = force.script_N(state.tau);
        const std::array<Complex, 3> grad = field_gradient(state.t, state.pos);
        // Proper-time force -(N* du + N du*) converted to lab time.
        for (int i = 0; i < 3; ++i) f[i] += -2.0 * (std::conj(n) * grad[i]).real() / g;
    }

    Acceleration a;
    a.force = f;
    const double fv = dot(f, state.vel);
    for (int i = 0; i < 3; ++i) {
        a.dv_dt[i] = (f[i] - fv * state.vel[i]) / (m * g);
        a.du_dtau[i] = g * f[i] / m;
    }
    return a;
}

Trajectory integrate_orbit(const PhysicalParams& params, const TrajectoryState& initial, double duration, double tol,
                           const IntegratorOptions& options) {
    params.validate();
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "integrate_orbit: tol must be positive");
    if (!std::isfinite(duration)) throw Error(ErrorCode::invalid_argument, "integrate_orbit: duration must be finite");
    if (options.sample_interval < 0.0)
        throw Error(ErrorCode::invalid_argument, "integrate_orbit: sample_interval must be >= 0");
    if (!(dot(initial.vel, initial.vel) < 1.0)) throw Error(ErrorCode::superluminal, "integrate_orbit: |v| >= 1");

    const double m = params.m_eff;
    const double a0 = 1.0 / (m * params.alpha);
    const Rhs rhs{params, m, options.omega_p.value_or(m / params.b), options.cutoff_factor * a0, options};

    Trajectory out;
    out.samples.push_back(initial);
    if (duration == 0.0) return out;

    const double dir = duration > 0.0 ? 1.0 : -1.0;
    const double g0 = initial.gamma();
    State y{initial.pos[0], initial.pos[1], initial.pos[2], g0 * initial.vel[0], g0 * initial.vel[1], g0 * initial.vel[2],
            initial.tau, initial.z_phase, initial.action};
    State comp{};
    double t = initial.t;
    double t_comp = 0.0;
    const double t_end = initial.t + duration;

    // Absolute tolerances from the natural scales of the starting state.
    const double r0 = std::max(norm(initial.pos), 1e-3 * a0);
    const double u_scale = std::max(g0 * norm(initial.vel), std::sqrt(params.alpha / (m * r0)));
    State atol;
    for (int i = 0; i < 3; ++i) {
        atol[i] = tol * r0;
        atol[3 + i] = tol * u_scale;
    }
    atol[6] = atol[7] = atol[8] = tol;

    std::array<State, 7> k;
    k[0] = rhs(t, y);

    // Initial step from the orbital time scale.
    double h = dir * std::min(std::abs(duration), 0.01 * r0 / std::max(u_scale / std::sqrt(1 + u_scale * u_scale), 1e-3));
    h = dir * std::min(std::abs(h), std::pow(tol, 0.2) * r0 / std::max(u_scale, 1e-12));
    double next_sample = options.sample_interval > 0.0 ? initial.t + dir * options.sample_interval : 0.0;
    long steps = 0;

    auto fail = [&](ErrorCode code, const std::string& why) -> IntegrationError {
        return IntegrationError(code, "integrate_orbit: " + why, out);
    };

    while (dir * (t_end - t) > 0.0) {
        if (++steps > options.max_steps) throw fail(ErrorCode::integration_failure, "step budget exhausted");
        bool last = false;
        if (dir * (t + h - t_end) >= 0.0) {
            h = t_end - t;
            last = true;
        }
        if (std::abs(h) < 1e-14 * std::max(std::abs(t), 1.0))
            throw fail(ErrorCode::integration_failure, "step size collapsed at t = " + std::to_string(t));

        State y_new;
        State incr;
        try {
            for (int s = 1; s < 6; ++s) {
                State ys = y;
                for (int d = 0; d < kDim; ++d) {
                    double acc = 0.0;
                    for (int j = 0; j < s; ++j) acc += A[s][j] * k[j][d];
                    ys[d] += h * acc;
                }
                k[s] = rhs(t + C[s] * h, ys);
            }
            for (int d = 0; d < kDim; ++d) {
                double acc = 0.0;
                for (int j = 0; j < 6; ++j) acc += B[j] * k[j][d];
                incr[d] = h * acc;
                y_new[d] = y[d] + incr[d];
            }
            k[6] = rhs(t + h, y_new);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::singularity) {
                if (std::abs(h) > 1e-12 * std::max(std::abs(t), 1.0) && e.code() == ErrorCode::singularity) {
                    // A stage probed inside the cutoff; retry smaller unless the state itself is there.
                    if (norm({y[0], y[1], y[2]}) > rhs.cutoff * 1.0000001) {
                        h *= 0.25;
                        ++out.rejected_steps;
                        continue;
                    }
                }
                throw fail(ErrorCode::singularity, e.what());
            }
            throw fail(e.code(), e.what());
        }

        double err = 0.0;
        for (int d = 0; d < kDim; ++d) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += E[j] * k[j][d];
            e *= h;
            const double sc = atol[d] + tol * std::max(std::abs(y[d]), std::abs(y_new[d]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / kDim);

        if (!(err <= 1.0)) {
            const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= factor;
            ++out.rejected_steps;
            continue;
        }

        // Accept with compensated accumulation of state and time.
        const State y_old = y;
        for (int d = 0; d < kDim; ++d) {
            const double delta = incr[d] - comp[d];
            const double sum = y[d] + delta;
            comp[d] = (sum - y[d]) - delta;
            y[d] = sum;
        }
        const double t_old = t;
        {
            const double delta = h - t_comp;
            const double sum = t + delta;
            t_comp = (sum - t) - delta;
            t = last ? t_end : sum;
        }
        ++out.accepted_steps;

        if (options.sample_interval > 0.0) {
            while (dir * (next_sample - t) < 0.0 || (last && dir * (next_sample - t) <= 0.0)) {
                const double theta = (next_sample - t_old) / h;
                out.samples.push_back(rhs.as_state(next_sample, interpolate(y_old, h, k, theta)));
                next_sample = initial.t + dir * options.sample_interval * static_cast<double>(out.samples.size());
            }
        } else {
            out.samples.push_back(rhs.as_state(t, y));
        }
        if (last && out.samples.back().t != t) out.samples.push_back(rhs.as_state(t, y));

        const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        if (!(r > rhs.cutoff)) throw fail(ErrorCode::singularity, "particle reached the singularity cutoff");

        k[0] = k[6];
        const double factor = err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 5.0;
        h *= factor;
    }
    return out;
}

TrajectoryState circular_initials(const OrbitSolution& orbit) {
    TrajectoryState s;
    s.pos = {orbit.r, 0.0, 0.0};
    s.vel = {0.0, orbit.v, 0.0};
    return s;
}

double orbit_energy(const PhysicalParams& params, const TrajectoryState& s) {
    return params.m_eff * s.gamma() - params.alpha / norm(s.pos);
}

double orbit_angular_momentum(const PhysicalParams& params, const TrajectoryState& s) {
    return params.m_eff * s.gamma() * norm(cross(s.pos, s.vel));
}

ConstraintResidual constraint_residual(const Trajectory& trajectory, const OrbitSolution& orbit, double u0) {
    if (trajectory.samples.empty()) throw Error(ErrorCode::usage, "constraint_residual: empty trajectory");
    const TrajectoryState& first = trajectory.samples.front();
    const double r_start = norm(first.pos);
    if (std::abs(r_start - orbit.r) > 1e-6 * orbit.r || std::abs(first.pos[2]) > 1e-9 * orbit.r)
        throw Error(ErrorCode::usage, "constraint_residual: trajectory does not start on the orbit of n = " +
                                          std::to_string(orbit.n));
    if (std::abs(norm(first.vel) - orbit.v) > 1e-6 * orbit.v)
        throw Error(ErrorCode::usage, "constraint_residual: trajectory speed does not match the orbit");

    const double b = orbit.params.b;
    const double w_t = (orbit.N - orbit.params.alpha) / (b * orbit.r);
    ConstraintResidual out;
    double phi = std::atan2(first.pos[1], first.pos[0]);
    double st = 0.0, sd = 0.0, stt = 0.0, std_ = 0.0;
    const double t0 = first.t;
    for (const TrajectoryState& s : trajectory.samples) {
        phi = angle_unwrap(phi, std::atan2(s.pos[1], s.pos[0]));
        // Field on the orbit, evaluated with the unwrapped angle so phases stay continuous.
        const double carrier = orbit.n * phi / b - w_t * s.t;
        const double envelope = std::cos(orbit.N * phi / b - orbit.n * s.t / (b * orbit.r));
        const Complex u = u0 * envelope * std::polar(1.0, carrier);
        const Complex z = u0 * std::polar(1.0, -s.z_phase);
        out.max_abs = std::max(out.max_abs, std::abs(z - u));
        const double mismatch = -s.z_phase - carrier;
        const double wrapped = std::remainder(mismatch + (envelope < 0.0 ? kPi : 0.0), 2.0 * kPi);
        out.max_phase = std::max(out.max_phase, std::abs(wrapped));
        const double dt = s.t - t0;
        st += dt;
        sd += mismatch;
        stt += dt * dt;
        std_ += dt * mismatch;
    }
    const double n = static_cast<double>(trajectory.samples.size());
    const double denom = n * stt - st * st;
    out.phase_slope = denom > 0.0 ? (n * std_ - st * sd) / denom : 0.0;
    return out;
}

Vec3 bohmian_velocity(const OrbitSolution& orbit, const SpacetimePoint& pt) {
    if (!(pt.r > 0.0)) throw Error(ErrorCode::domain, "bohmian_velocity: r must be positive");
    const double st = std::sin(pt.theta);
    if (!(st > 1e-8)) throw Error(ErrorCode::domain, "bohmian_velocity: point on the polar axis");
    const double n = orbit.n;
    const double w_t = orbit.N - orbit.params.alpha;
    auto S = [&](double t, double, double, double phi) { return n * phi - w_t * t / orbit.r; };

    const double hr = 1e-4 * pt.r;
    const double ha = 1e-4;
    const double ht = 1e-4 * orbit.r;
    const double ds_dr = (S(pt.t, pt.r + hr, pt.theta, pt.phi) - S(pt.t, pt.r - hr, pt.theta, pt.phi)) / (2.0 * hr);
    const double ds_dth =
        (S(pt.t, pt.r, pt.theta + ha, pt.phi) - S(pt.t, pt.r, pt.theta - ha, pt.phi)) / (2.0 * ha) / pt.r;
    const double ds_dph =
        (S(pt.t, pt.r, pt.theta, pt.phi + ha) - S(pt.t, pt.r, pt.theta, pt.phi - ha)) / (2.0 * ha) / (pt.r * st);
    const double ds_dt = (S(pt.t + ht, pt.r, pt.theta, pt.phi) - S(pt.t - ht, pt.r, pt.theta, pt.phi)) / (2.0 * ht);

    const double eV = -orbit.params.alpha / pt.r;
    const double denom = ds_dt + eV;
    if (!(std::abs(denom) > 1e-12 * (std::abs(ds_dt) + std::abs(eV))))
        throw Error(ErrorCode::guidance_singularity, "bohmian_velocity: d_t S + eV vanishes");

    const double vr = -ds_dr / denom;
    const double vt = -ds_dth / denom;
    const double vp = -ds_dph / denom;
    const double ct = std::cos(pt.theta);
    const double cp = std::cos(pt.phi);
    const double sp = std::sin(pt.phi);
    return {vr * st * cp + vt * ct * cp - vp * sp, vr * st * sp + vt * ct * sp + vp * cp, vr * ct - vt * st};
}

TrajectorySummary summarize_trajectory(const Trajectory& trajectory, const OrbitSolution& orbit, double u0) {
    if (trajectory.samples.empty()) throw Error(ErrorCode::usage, "summarize_trajectory: empty trajectory");
    PhysicalParams p = orbit.params;
    p.m_eff = orbit.m_eff;
    const TrajectoryState& first = trajectory.samples.front();
    const TrajectoryState& last = trajectory.samples.back();
    const double e0 = orbit_energy(p, first);
    const double l0 = orbit_angular_momentum(p, first);
    const double period = orbit.period();

    TrajectorySummary out;
    double head_sum = 0.0, tail_sum = 0.0;
    int head_count = 0, tail_count = 0;
    for (const TrajectoryState& s : trajectory.samples) {
        const double r = norm(s.pos);
        out.radius_deviation = std::max(out.radius_deviation, std::abs(r - orbit.r) / orbit.r);
        out.energy_drift = std::max(out.energy_drift, std::abs(orbit_energy(p, s) - e0) / std::abs(e0));
        if (l0 > 0.0)
            out.angular_momentum_drift =
                std::max(out.angular_momentum_drift, std::abs(orbit_angular_momentum(p, s) - l0) / l0);
        if (std::abs(s.t - first.t) <= period) {
            head_sum += r;
            ++head_count;
        }
        if (std::abs(last.t - s.t) <= period) {
            tail_sum += r;
            ++tail_count;
        }
    }
    out.mean_radius_drift = std::abs(tail_sum / tail_count - head_sum / head_count) / orbit.r;
    const double elapsed = std::abs(last.t - first.t);
    if (elapsed > 0.0) {
        out.action_per_period = std::abs(last.action - first.action) / (2.0 * kPi * elapsed / period);
        out.clock_ratio = (last.tau - first.tau) / ((last.t - first.t) * orbit.s);
    }
    try {
        out.constraint = constraint_residual(trajectory, orbit, u0);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::usage) throw;
    }
    return out;
}

}  // namespace bohrwave
