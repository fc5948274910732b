#include "bohrwave/bohrwave.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "checks.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "quantization.hpp"
#include "rational.hpp"
#include "specfun.hpp"
#include "wavefield.hpp"

using namespace bohrwave;

struct bw_orbit {
    OrbitSolution solution;
};

struct bw_curves {
    OrbitWaveCurves curves;
};

struct bw_grid {
    IntensityGrid grid;
    double radial_argmax;
};

struct bw_trajectory {
    Trajectory trajectory;
    TrajectorySummary summary;
};

struct bw_report {
    std::vector<CheckResult> results;
};

namespace {

thread_local std::string last_error;

bw_status fail(bw_status status, const char* what) {
    last_error = what;
    return status;
}

template <class F>
bw_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return BW_OK;
    } catch (const Error& e) {
        return fail(static_cast<bw_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BW_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BW_ERR_INTERNAL, e.what());
    }
}

void require(bool condition, const char* what) {
    if (!condition) throw Error(ErrorCode::invalid_argument, what);
}

PhysicalParams to_params(const bw_params* in) {
    require(in != nullptr, "params must not be null");
    PhysicalParams p;
    p.alpha = in->alpha;
    p.b = in->b;
    p.xi_charge = in->xi_charge;
    p.omega0 = in->omega0;
    p.m_eff = in->m_eff;
    p.require_positive_frequencies = in->require_positive_frequencies != 0;
    if (in->alpha_exact && *in->alpha_exact) {
        p.alpha_exact = parse_rational(in->alpha_exact);
        p.alpha = to_double(*p.alpha_exact);
    }
    if (in->b_exact && *in->b_exact) {
        p.b_exact = parse_rational(in->b_exact);
        p.b = to_double(*p.b_exact);
    }
    // The exact path needs both; a binary64 value converts to a rational exactly.
    if (p.alpha_exact && !p.b_exact) p.b_exact = Rational(p.b);
    if (p.b_exact && !p.alpha_exact) p.alpha_exact = Rational(p.alpha);
    if (in->has_particle) p.particle = ParticleConstants{in->m_p, in->sigma, in->omega_p};
    return p;
}

double default_u0(const OrbitSolution& o, double u0) {
    if (u0 > 0.0) return u0;
    return o.z0_mod2 ? std::sqrt(*o.z0_mod2) : 1.0;
}

void copy_string(const std::string& s, char* out, size_t size) {
    require(out != nullptr && size > s.size(), "output buffer too small");
    std::memcpy(out, s.c_str(), s.size() + 1);
}

}  // namespace

extern "C" {

const char* bw_version(void) { return BOHRWAVE_VERSION_STRING; }

const char* bw_status_name(bw_status status) {
    if (status == BW_OK) return "ok";
    if (status == BW_ERR_INTERNAL) return "internal";
    if (status >= BW_ERR_INVALID_ARGUMENT && status <= BW_ERR_USAGE)
        return error_code_name(static_cast<ErrorCode>(status));
    return "unknown";
}

const char* bw_last_error(void) { return last_error.c_str(); }

void bw_params_default(bw_params* params) {
    if (!params) return;
    const PhysicalParams d;
    *params = bw_params{};
    params->alpha = d.alpha;
    params->b = d.b;
    params->xi_charge = d.xi_charge;
    params->omega0 = d.omega0;
    params->m_eff = d.m_eff;
    params->m_p = 1.0;
    params->omega_p = 1.0;
    params->require_positive_frequencies = 1;
}

double bw_positive_frequency_alpha_bound(void) { return positive_frequency_alpha_bound(); }

bw_status bw_orbit_solve(const bw_params* params, double n, bw_orbit** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = nullptr;
        *out = new bw_orbit{solve_orbit(to_params(params), n)};
    });
}

void bw_orbit_free(bw_orbit* orbit) { delete orbit; }

bw_status bw_orbit_get(const bw_orbit* orbit, bw_orbit_values* out) {
    return guarded([&] {
        require(orbit && out, "orbit and out must not be null");
        const OrbitSolution& o = orbit->solution;
        *out = bw_orbit_values{};
        out->n = o.n;
        out->N = o.N;
        out->m_plus = o.m_plus;
        out->m_minus = o.m_minus;
        out->v = o.v;
        out->r = o.r;
        out->P = o.P;
        out->E = o.E;
        out->omega_plus = o.omega_plus;
        out->omega_minus = o.omega_minus;
        out->k_plus = o.k_plus;
        out->k_minus = o.k_minus;
        out->epsilon = o.epsilon;
        out->Omega_p = o.Omega_p;
        out->has_z0_mod2 = o.z0_mod2.has_value();
        out->z0_mod2 = o.z0_mod2.value_or(0.0);
        out->selection_ok = o.selection_ok;
        out->selection_residual = o.selection_residual;
        out->m_eff = o.m_eff;
        out->s = o.s;
        out->a0 = o.a0;
        out->lagrangian = o.lagrangian();
        out->period = o.period();
    });
}

bw_status bw_mode_numbers_exact(const char* alpha, const char* b, const char* n, char* m_plus, size_t m_plus_size,
                                char* m_minus, size_t m_minus_size, int* integer) {
    return guarded([&] {
        require(alpha && b && n, "alpha, b and n must not be null");
        const ExactModeNumbers m = mode_numbers_exact(parse_rational(alpha), parse_rational(b), parse_rational(n));
        copy_string(to_string(m.m_plus), m_plus, m_plus_size);
        copy_string(to_string(m.m_minus), m_minus, m_minus_size);
        if (integer) *integer = is_integer(m.m_plus) && is_integer(m.m_minus);
    });
}

bw_status bw_rational_to_decimal(const char* value, char* out, size_t out_size) {
    return guarded([&] {
        require(value != nullptr, "value must not be null");
        copy_string(to_decimal_string(parse_rational(value)), out, out_size);
    });
}

bw_status bw_fine_structure_from_modes(double m_plus, double m_minus, double b, double* alpha) {
    return guarded([&] {
        require(alpha != nullptr, "alpha must not be null");
        *alpha = fine_structure_from_modes(m_plus, m_minus, b);
    });
}

bw_status bw_selection_rule(const bw_params* params, double n, double tol, int* ok, double* residual) {
    return guarded([&] {
        const SelectionResult s = check_selection_rule(to_params(params), n, tol);
        if (ok) *ok = s.ok;
        if (residual) *residual = s.residual;
    });
}

bw_status bw_effective_mass(double m_p, double sigma, double omega_p, double z0_mod, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = effective_mass(m_p, sigma, omega_p, z0_mod);
    });
}

bw_status bw_field_on_orbit(const bw_orbit* orbit, double u0, double t, double phi, double* re, double* im) {
    return guarded([&] {
        require(orbit && re && im, "orbit and outputs must not be null");
        const Complex v = field_on_orbit(orbit->solution, u0, t, phi).value;
        *re = v.real();
        *im = v.imag();
    });
}

bw_status bw_pair_eval(const bw_orbit* orbit, double u0, double t, double r, double theta, double phi, double* re,
                       double* im) {
    return guarded([&] {
        require(orbit && re && im, "orbit and outputs must not be null");
        const ModePair pair = matched_pair(orbit->solution, u0);
        const Complex v = eval_pair(pair, t, r, theta, phi);
        *re = v.real();
        *im = v.imag();
    });
}

bw_status bw_quantum_potential(const bw_orbit* orbit, int sign, double h, double* measured, double* predicted) {
    return guarded([&] {
        require(orbit != nullptr, "orbit must not be null");
        require(sign == 1 || sign == -1, "sign must be +1 or -1");
        const OrbitSolution& o = orbit->solution;
        const ModePair pair = make_mode_pair(o);
        const Sign s = sign > 0 ? Sign::plus : Sign::minus;
        const Mode& mode = sign > 0 ? pair.plus : pair.minus;
        if (measured) *measured = quantum_potential(mode, {o.r, kPi / 2.0, 0.0}, h);
        if (predicted) *predicted = quantum_potential_on_orbit(o, s);
    });
}

bw_status bw_bohmian_velocity(const bw_orbit* orbit, double t, double r, double theta, double phi,
                              double velocity[3]) {
    return guarded([&] {
        require(orbit && velocity, "orbit and velocity must not be null");
        const Vec3 v = bohmian_velocity(orbit->solution, {t, r, theta, phi});
        std::copy(v.begin(), v.end(), velocity);
    });
}

bw_status bw_radial(int l, double omega, double beta, double omega0, double r, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = radial(make_mode(Sign::plus, l, 0, omega, beta, omega0), r).real();
    });
}

bw_status bw_kummer_m(double a_re, double a_im, double b_re, double b_im, double z_re, double z_im, double* out_re,
                      double* out_im) {
    return guarded([&] {
        require(out_re && out_im, "outputs must not be null");
        const Complex v = specfun::kummer_m({a_re, a_im}, {b_re, b_im}, {z_re, z_im});
        *out_re = v.real();
        *out_im = v.imag();
    });
}

bw_status bw_orbit_wave(const bw_orbit* orbit, double u0, double delta, int samples, bw_curves** out) {
    return guarded([&] {
        require(orbit && out, "orbit and out must not be null");
        *out = nullptr;
        *out = new bw_curves{orbit_wave_curve(orbit->solution, default_u0(orbit->solution, u0), delta, samples)};
    });
}

void bw_curves_free(bw_curves* curves) { delete curves; }

size_t bw_curves_size(const bw_curves* curves) { return curves ? curves->curves.total.size() : 0; }

bw_status bw_curves_point(const bw_curves* curves, int which, size_t index, double* phi, double* x, double* y) {
    return guarded([&] {
        require(curves != nullptr, "curves must not be null");
        require(which >= 0 && which <= 2, "which must be 0, 1 or 2");
        const auto& set = which == 0 ? curves->curves.total : which == 1 ? curves->curves.phase : curves->curves.circle;
        require(index < set.size(), "index out of range");
        const CurvePoint& p = set[index];
        if (phi) *phi = p.phi;
        if (x) *x = p.x;
        if (y) *y = p.y;
    });
}

bw_status bw_curves_summary_get(const bw_curves* curves, bw_curves_summary* out) {
    return guarded([&] {
        require(curves && out, "curves and out must not be null");
        const OrbitWaveCurves& c = curves->curves;
        *out = bw_curves_summary{c.delta,
                                 c.u0,
                                 c.undersampled,
                                 c.closure,
                                 c.total_zero_count,
                                 c.phase_zero_count,
                                 c.envelope_zero_count,
                                 c.expected_phase_zero_count,
                                 c.expected_envelope_zero_count};
    });
}

bw_status bw_intensity_map(const bw_orbit* orbit, int plane, double extent, int grid_n, int threads, bw_grid** out) {
    return guarded([&] {
        require(orbit && out, "orbit and out must not be null");
        require(plane == 0 || plane == 1, "plane must be 0 (equatorial) or 1 (meridian)");
        *out = nullptr;
        const ModePair pair = matched_pair(orbit->solution, default_u0(orbit->solution, 0.0));
        IntensityGrid g = intensity_map(orbit->solution, pair, plane == 0 ? Plane::equatorial : Plane::meridian, extent,
                                        grid_n, threads);
        const double radial_max = plane == 0 ? radial_intensity_argmax(g) : std::nan("");
        *out = new bw_grid{std::move(g), radial_max};
    });
}

void bw_grid_free(bw_grid* grid) { delete grid; }

bw_status bw_grid_summary_get(const bw_grid* grid, bw_grid_summary* out) {
    return guarded([&] {
        require(grid && out, "grid and out must not be null");
        const IntensityGrid& g = grid->grid;
        *out = bw_grid_summary{};
        out->grid_n = g.grid_n;
        out->plane = g.plane == Plane::equatorial ? 0 : 1;
        out->extent = g.extent;
        out->cell = g.cell;
        out->a0 = g.a0;
        out->r_orbit = g.r_orbit;
        out->argmax = g.argmax;
        out->argmax_x = g.axis[g.argmax % g.grid_n];
        out->argmax_y = g.axis[g.argmax / g.grid_n];
        out->radial_argmax = grid->radial_argmax;
    });
}

const double* bw_grid_axis(const bw_grid* grid) { return grid ? grid->grid.axis.data() : nullptr; }

const double* bw_grid_intensity(const bw_grid* grid) { return grid ? grid->grid.intensity.data() : nullptr; }

size_t bw_grid_local_maxima(const bw_grid* grid, double fraction, size_t* indices, size_t capacity) {
    if (!grid) return 0;
    try {
        const std::vector<std::size_t> found = local_maxima(grid->grid, fraction);
        for (size_t i = 0; i < std::min(capacity, found.size()); ++i) indices[i] = found[i];
        return found.size();
    } catch (const std::exception& e) {
        last_error = e.what();
        return 0;
    }
}

void bw_integrate_options_default(bw_integrate_options* options) {
    if (!options) return;
    *options = bw_integrate_options{};
    options->periods = 1.0;
    options->tol = 1e-12;
    options->omega_p_scale = 1.0;
    options->samples_per_period = 64;
    options->radius_scale = 1.0;
    options->u0 = 0.0;
}

bw_status bw_integrate(const bw_orbit* orbit, const bw_integrate_options* options, bw_trajectory** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        require(orbit && options && out, "orbit, options and out must not be null");
        require(std::isfinite(options->periods), "periods must be finite");
        require(options->samples_per_period >= 0, "samples_per_period must be >= 0");
        require(options->radius_scale > 0.0, "radius_scale must be positive");
        require(options->omega_p_scale > 0.0, "omega_p_scale must be positive");
        const OrbitSolution& o = orbit->solution;
        PhysicalParams p = o.params;
        p.m_eff = o.m_eff;
        p.particle.reset();
        TrajectoryState start = circular_initials(o);
        start.pos[0] *= options->radius_scale;
        IntegratorOptions opt;
        opt.omega_p = o.Omega_p * options->omega_p_scale;
        if (options->samples_per_period > 0) opt.sample_interval = o.period() / options->samples_per_period;
        const double u0 = default_u0(o, options->u0);
        auto finish = [&](Trajectory t) {
            auto* result = new bw_trajectory{std::move(t), {}};
            try {
                result->summary = summarize_trajectory(result->trajectory, o, u0);
            } catch (...) {
                delete result;
                throw;
            }
            *out = result;
        };
        try {
            finish(integrate_orbit(p, start, options->periods * o.period(), options->tol, opt));
        } catch (const IntegrationError& e) {
            finish(e.partial());
            throw;
        }
    });
}

void bw_trajectory_free(bw_trajectory* trajectory) { delete trajectory; }

size_t bw_trajectory_size(const bw_trajectory* trajectory) {
    return trajectory ? trajectory->trajectory.samples.size() : 0;
}

bw_status bw_trajectory_sample(const bw_trajectory* trajectory, size_t index, bw_state* out) {
    return guarded([&] {
        require(trajectory && out, "trajectory and out must not be null");
        require(index < trajectory->trajectory.samples.size(), "index out of range");
        const TrajectoryState& s = trajectory->trajectory.samples[index];
        out->t = s.t;
        std::copy(s.pos.begin(), s.pos.end(), out->pos);
        std::copy(s.vel.begin(), s.vel.end(), out->vel);
        out->tau = s.tau;
        out->z_phase = s.z_phase;
        out->action = s.action;
    });
}

bw_status bw_trajectory_summary_get(const bw_trajectory* trajectory, bw_trajectory_summary* out) {
    return guarded([&] {
        require(trajectory && out, "trajectory and out must not be null");
        const TrajectorySummary& s = trajectory->summary;
        *out = bw_trajectory_summary{};
        out->radius_deviation = s.radius_deviation;
        out->mean_radius_drift = s.mean_radius_drift;
        out->energy_drift = s.energy_drift;
        out->angular_momentum_drift = s.angular_momentum_drift;
        out->action_per_period = s.action_per_period;
        out->clock_ratio = s.clock_ratio;
        out->has_constraint = s.constraint.has_value();
        if (s.constraint) {
            out->constraint_abs = s.constraint->max_abs;
            out->constraint_phase = s.constraint->max_phase;
            out->constraint_slope = s.constraint->phase_slope;
        }
        out->accepted_steps = trajectory->trajectory.accepted_steps;
        out->rejected_steps = trajectory->trajectory.rejected_steps;
    });
}

void bw_check_config_default(bw_check_config* config) {
    if (!config) return;
    static const double default_n[] = {1.0, 2.0, 3.0};
    *config = bw_check_config{};
    bw_params_default(&config->params);
    config->n_values = default_n;
    config->n_count = 3;
    config->strict_selection = 1;
    config->asymptotic_l_max = CheckConfig{}.asymptotic_l_max;
}

bw_status bw_run_checks(const bw_check_config* config, bw_report** out) {
    return guarded([&] {
        require(config && out, "config and out must not be null");
        *out = nullptr;
        CheckConfig c;
        c.params = to_params(&config->params);
        require(config->n_values != nullptr || config->n_count == 0, "n_values must not be null");
        c.n_values.assign(config->n_values, config->n_values + config->n_count);
        require(!c.n_values.empty(), "at least one n is required");
        c.strict_selection = config->strict_selection != 0;
        c.asymptotic_l_max = config->asymptotic_l_max;
        *out = new bw_report{run_checks(c)};
    });
}

void bw_report_free(bw_report* report) { delete report; }

size_t bw_report_size(const bw_report* report) { return report ? report->results.size() : 0; }

bw_status bw_report_item(const bw_report* report, size_t index, bw_check_item* out) {
    return guarded([&] {
        require(report && out, "report and out must not be null");
        require(index < report->results.size(), "index out of range");
        const CheckResult& r = report->results[index];
        *out = bw_check_item{r.name.c_str(), r.identity.c_str(), r.measured, r.threshold, r.passed, r.detail.c_str()};
    });
}

int bw_report_passed(const bw_report* report) { return report && all_passed(report->results); }

}  // extern "C"
