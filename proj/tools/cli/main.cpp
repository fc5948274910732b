#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <bohrwave/bohrwave.h>

#include "envelope.hpp"

extern char** environ;

namespace {

using nlohmann::ordered_json;
using bwcli::Cell;
using bwcli::Envelope;
using bwcli::Table;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheckFailed = 4;

const char* kSubcommands[] = {"orbit", "table", "orbit-wave", "field-map", "integrate", "check"};

/// Raised for any failure that should end the run with a given exit code.
struct Failure {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail_status(bw_status status, const std::string& context) {
    const int code = status == BW_ERR_INVALID_ARGUMENT || status == BW_ERR_USAGE ? kExitConfig : kExitNumerical;
    std::string message = context.empty() ? "" : context + ": ";
    throw Failure{code, message + bw_last_error() + " [" + bw_status_name(status) + "]"};
}

void check(bw_status status, const std::string& context = {}) {
    if (status != BW_OK) fail_status(status, context);
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using OrbitPtr = std::unique_ptr<bw_orbit, Deleter<bw_orbit, bw_orbit_free>>;
using CurvesPtr = std::unique_ptr<bw_curves, Deleter<bw_curves, bw_curves_free>>;
using GridPtr = std::unique_ptr<bw_grid, Deleter<bw_grid, bw_grid_free>>;
using TrajectoryPtr = std::unique_ptr<bw_trajectory, Deleter<bw_trajectory, bw_trajectory_free>>;
using ReportPtr = std::unique_ptr<bw_report, Deleter<bw_report, bw_report_free>>;

struct Options {
    std::string config;
    std::string preset;
    std::string alpha;
    std::string alpha_inv;
    std::string b = "1";
    double xi = 1.0;
    double omega0 = 0.0;
    double m_eff = 1.0;
    std::optional<double> m_p;
    std::optional<double> sigma;
    std::optional<double> omega_p;
    std::vector<std::string> n;
    std::string format = "csv";
    std::string output;
    bool timestamp = false;
    int precision = 17;
    int threads = 1;

    int samples = 1024;
    double delta = 0.0;
    double u0 = 0.0;

    std::string plane = "equatorial";
    int grid_n = 256;
    double extent = 0.0;

    double periods = 1.0;
    double tol = 1e-12;
    double omega_p_scale = 1.0;
    double radius_scale = 1.0;
    int samples_per_period = 64;

    bool strict = true;
    int asym_l_max = 4;
};

// Owned storage for the exact-parameter strings handed to the C API.
struct ParamStrings {
    std::string alpha;
    std::string b;
};

double parse_number(const std::string& text, const std::string& field) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::size_t used_den = 0;
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const double p = std::stod(num, &used);
        const double q = std::stod(den, &used_den);
        if (used != num.size() || used_den != den.size() || q == 0.0) throw std::invalid_argument(text);
        return p / q;
    } catch (const std::exception&) {
        throw Failure{kExitConfig, field + ": cannot parse '" + text + "' as a number"};
    }
}

bw_params make_params(const Options& o, ParamStrings& store) {
    bw_params p;
    bw_params_default(&p);
    if (!o.alpha.empty() && !o.alpha_inv.empty())
        throw Failure{kExitConfig, "params.alpha: give either --alpha or --alpha-inv, not both"};
    if (!o.alpha_inv.empty()) {
        parse_number(o.alpha_inv, "params.alpha_inv");
        store.alpha = o.alpha_inv.find('/') == std::string::npos
                          ? "1/" + o.alpha_inv
                          : o.alpha_inv.substr(o.alpha_inv.find('/') + 1) + "/" + o.alpha_inv.substr(0, o.alpha_inv.find('/'));
    } else {
        store.alpha = o.alpha.empty() ? "1/137" : o.alpha;
    }
    p.alpha = parse_number(store.alpha, "params.alpha");
    if (!(p.alpha > 0.0)) throw Failure{kExitConfig, "params.alpha: must be positive"};
    store.b = o.b;
    p.b = parse_number(store.b, "params.b");
    p.alpha_exact = store.alpha.c_str();
    p.b_exact = store.b.c_str();
    p.xi_charge = o.xi;
    p.omega0 = o.omega0;
    p.m_eff = o.m_eff;
    if (o.m_p || o.sigma || o.omega_p) {
        if (!(o.m_p && o.sigma && o.omega_p))
            throw Failure{kExitConfig, "params.particle: --m-p, --sigma and --omega-p must be given together"};
        p.has_particle = 1;
        p.m_p = *o.m_p;
        p.sigma = *o.sigma;
        p.omega_p = *o.omega_p;
    }
    return p;
}

ordered_json params_echo(const bw_params& p) {
    ordered_json j;
    j["alpha"] = p.alpha_exact;
    j["b"] = p.b_exact;
    j["xi_charge"] = p.xi_charge;
    j["beta"] = p.xi_charge * p.alpha;
    j["omega0"] = p.omega0;
    if (p.has_particle) {
        j["m_p"] = p.m_p;
        j["sigma"] = p.sigma;
        j["omega_p"] = p.omega_p;
    } else {
        j["m_eff"] = p.m_eff;
    }
    return j;
}

std::vector<std::string> n_list(const Options& o, std::vector<std::string> fallback) {
    std::vector<std::string> out = o.n.empty() ? std::move(fallback) : o.n;
    if (out.empty()) throw Failure{kExitConfig, "n: at least one value is required"};
    return out;
}

OrbitPtr solve(const bw_params& p, const std::string& n) {
    bw_orbit* raw = nullptr;
    check(bw_orbit_solve(&p, parse_number(n, "n"), &raw), "n = " + n);
    return OrbitPtr(raw);
}

bw_orbit_values values(const bw_orbit* orbit) {
    bw_orbit_values v;
    check(bw_orbit_get(orbit, &v));
    return v;
}

Envelope start(const std::string& command, const Options& o, const bw_params& p) {
    Envelope e;
    e.command = command;
    e.timestamp = o.timestamp;
    e.input["params"] = params_echo(p);
    if (!o.preset.empty()) e.input["preset"] = o.preset;
    return e;
}

bool near_integer(double x) { return std::abs(x - std::nearbyint(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

Envelope cmd_orbit(const Options& o) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1", "2", "3"});
    Envelope e = start("orbit", o, p);
    e.input["n"] = ns;
    Table t;
    t.columns = {"n",        "N",       "m_plus",     "m_minus",     "m_plus_integer", "m_minus_integer",
                 "selection_ok", "selection_residual", "v", "r", "P", "E", "omega_plus", "omega_minus",
                 "k_plus",   "k_minus", "epsilon",    "Omega_p",     "z0_mod2",        "m_eff"};
    for (const std::string& n : ns) {
        const OrbitPtr orbit = solve(p, n);
        const bw_orbit_values v = values(orbit.get());
        t.rows.push_back({v.n, v.N, v.m_plus, v.m_minus, static_cast<long long>(near_integer(v.m_plus)),
                          static_cast<long long>(near_integer(v.m_minus)), static_cast<long long>(v.selection_ok),
                          v.selection_residual, v.v, v.r, v.P, v.E, v.omega_plus, v.omega_minus, v.k_plus, v.k_minus,
                          v.epsilon, v.Omega_p, v.has_z0_mod2 ? Cell(v.z0_mod2) : Cell(nullptr), v.m_eff});
    }
    e.table = std::move(t);
    return e;
}

Envelope cmd_table(const Options& o) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1/2", "1", "3/2", "2", "5/2", "10"});
    Envelope e = start("table", o, p);
    e.input["n"] = ns;
    Table t;
    t.columns.push_back("quantity");
    std::vector<Cell> plus{std::string("m_plus")};
    std::vector<Cell> minus{std::string("m_minus")};
    std::vector<Cell> integer{std::string("integer")};
    for (const std::string& n : ns) {
        char mp[512], mm[512], dp[512], dm[512];
        int is_int = 0;
        check(bw_mode_numbers_exact(store.alpha.c_str(), store.b.c_str(), n.c_str(), mp, sizeof mp, mm, sizeof mm, &is_int),
              "n = " + n);
        check(bw_rational_to_decimal(mp, dp, sizeof dp));
        check(bw_rational_to_decimal(mm, dm, sizeof dm));
        t.columns.push_back("n=" + n);
        plus.emplace_back(std::string(dp));
        minus.emplace_back(std::string(dm));
        integer.emplace_back(static_cast<long long>(is_int));
    }
    t.rows = {plus, minus, integer};
    e.table = std::move(t);
    return e;
}

Envelope cmd_orbit_wave(const Options& o) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1", "2", "3"});
    if (o.samples < 2) throw Failure{kExitConfig, "samples: must be >= 2"};
    Envelope e = start("orbit-wave", o, p);
    e.input["n"] = ns;
    e.input["samples"] = o.samples;
    e.input["delta"] = o.delta;
    e.input["u0"] = o.u0;
    Table t;
    t.columns = {"n", "curve", "index", "phi", "x", "y"};
    ordered_json curves = ordered_json::array();
    static const char* names[] = {"total", "phase", "circle"};
    for (const std::string& n : ns) {
        const OrbitPtr orbit = solve(p, n);
        bw_curves* raw = nullptr;
        check(bw_orbit_wave(orbit.get(), o.u0, o.delta, o.samples, &raw), "n = " + n);
        const CurvesPtr c(raw);
        bw_curves_summary s;
        check(bw_curves_summary_get(c.get(), &s));
        ordered_json m;
        m["n"] = parse_number(n, "n");
        m["delta"] = s.delta;
        m["u0"] = s.u0;
        m["closure"] = s.closure;
        m["total_zero_count"] = s.total_zero_count;
        m["phase_zero_count"] = s.phase_zero_count;
        m["envelope_zero_count"] = s.envelope_zero_count;
        m["expected_phase_zero_count"] = s.expected_phase_zero_count;
        m["expected_envelope_zero_count"] = s.expected_envelope_zero_count;
        if (s.undersampled) m["warning"] = "undersampled: fewer than 8 samples per period of the m_plus mode";
        curves.push_back(m);
        const double nv = parse_number(n, "n");
        for (int which = 0; which < 3; ++which) {
            for (std::size_t i = 0; i < bw_curves_size(c.get()); ++i) {
                double phi, x, y;
                check(bw_curves_point(c.get(), which, i, &phi, &x, &y));
                t.rows.push_back({nv, std::string(names[which]), static_cast<long long>(i), phi, x, y});
            }
        }
    }
    e.metadata["curves"] = curves;
    e.table = std::move(t);
    return e;
}

int resolve_threads(int threads) {
    if (threads < 0) throw Failure{kExitConfig, "threads: must be >= 0"};
    if (threads == 0) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return threads;
}

Envelope cmd_field_map(const Options& o) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1"});
    if (ns.size() != 1) throw Failure{kExitConfig, "n: field-map takes a single n"};
    int plane;
    if (o.plane == "equatorial" || o.plane == "xy")
        plane = 0;
    else if (o.plane == "meridian" || o.plane == "xz")
        plane = 1;
    else
        throw Failure{kExitConfig, "plane: must be equatorial or meridian"};
    if (o.grid_n < 16) throw Failure{kExitConfig, "grid_n: must be >= 16"};

    const OrbitPtr orbit = solve(p, ns.front());
    const bw_orbit_values v = values(orbit.get());
    const double extent = o.extent > 0.0 ? o.extent : 2.0 * v.r / v.a0;
    bw_grid* raw = nullptr;
    check(bw_intensity_map(orbit.get(), plane, extent, o.grid_n, resolve_threads(o.threads), &raw), "n = " + ns.front());
    const GridPtr grid(raw);
    bw_grid_summary s;
    check(bw_grid_summary_get(grid.get(), &s));

    Envelope e = start("field-map", o, p);
    e.input["n"] = ns.front();
    e.input["plane"] = plane == 0 ? "equatorial" : "meridian";
    e.input["grid_n"] = o.grid_n;
    e.input["extent"] = extent;
    e.metadata["a0"] = s.a0;
    e.metadata["r_orbit_a0"] = s.r_orbit;
    e.metadata["cell_a0"] = s.cell;
    e.metadata["argmax"] = {{"index", s.argmax}, {"x", s.argmax_x}, {plane == 0 ? "y" : "z", s.argmax_y},
                            {"radius", std::hypot(s.argmax_x, s.argmax_y)}};
    if (plane == 0) e.metadata["radial_argmax_a0"] = s.radial_argmax;
    std::vector<size_t> maxima(64);
    const size_t found = bw_grid_local_maxima(grid.get(), 0.5, maxima.data(), maxima.size());
    ordered_json peaks = ordered_json::array();
    const double* axis = bw_grid_axis(grid.get());
    for (size_t i = 0; i < std::min(found, maxima.size()); ++i)
        peaks.push_back({axis[maxima[i] % s.grid_n], axis[maxima[i] / s.grid_n]});
    e.metadata["local_maxima"] = {{"fraction", 0.5}, {"count", found}, {"positions", peaks}};

    Table t;
    t.columns = {"x", plane == 0 ? "y" : "z", "intensity"};
    const double* intensity = bw_grid_intensity(grid.get());
    t.rows.reserve(static_cast<size_t>(s.grid_n) * s.grid_n);
    for (int row = 0; row < s.grid_n; ++row)
        for (int col = 0; col < s.grid_n; ++col)
            t.rows.push_back({axis[col], axis[row], intensity[static_cast<size_t>(row) * s.grid_n + col]});
    e.table = std::move(t);
    return e;
}

Envelope cmd_integrate(const Options& o, int& exit_code) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1"});
    if (ns.size() != 1) throw Failure{kExitConfig, "n: integrate takes a single n"};
    const OrbitPtr orbit = solve(p, ns.front());
    bw_integrate_options opt;
    bw_integrate_options_default(&opt);
    opt.periods = o.periods;
    opt.tol = o.tol;
    opt.omega_p_scale = o.omega_p_scale;
    opt.samples_per_period = o.samples_per_period;
    opt.radius_scale = o.radius_scale;
    opt.u0 = o.u0;

    bw_trajectory* raw = nullptr;
    const bw_status status = bw_integrate(orbit.get(), &opt, &raw);
    const TrajectoryPtr traj(raw);
    if (!traj) fail_status(status, "n = " + ns.front());

    Envelope e = start("integrate", o, p);
    e.input["n"] = ns.front();
    e.input["periods"] = o.periods;
    e.input["tol"] = o.tol;
    e.input["omega_p_scale"] = o.omega_p_scale;
    e.input["radius_scale"] = o.radius_scale;
    e.input["samples_per_period"] = o.samples_per_period;

    const bw_orbit_values v = values(orbit.get());
    bw_trajectory_summary s;
    check(bw_trajectory_summary_get(traj.get(), &s));
    ordered_json m;
    m["period"] = v.period;
    m["Omega_p"] = v.Omega_p * o.omega_p_scale;
    m["radius_deviation"] = s.radius_deviation;
    m["mean_radius_drift"] = s.mean_radius_drift;
    m["energy_drift"] = s.energy_drift;
    m["angular_momentum_drift"] = s.angular_momentum_drift;
    m["action_per_period_over_2pi"] = s.action_per_period;
    m["clock_ratio"] = s.clock_ratio;
    if (s.has_constraint) {
        m["constraint"] = {{"max_abs", s.constraint_abs},
                           {"max_phase", s.constraint_phase},
                           {"phase_slope", s.constraint_slope},
                           {"expected_detuning_slope", -(o.omega_p_scale - 1.0) * v.Omega_p * v.s}};
    }
    m["accepted_steps"] = s.accepted_steps;
    m["rejected_steps"] = s.rejected_steps;
    if (status != BW_OK) {
        m["error"] = {{"code", bw_status_name(status)}, {"message", bw_last_error()}, {"partial", true}};
        exit_code = status == BW_ERR_INVALID_ARGUMENT || status == BW_ERR_USAGE ? kExitConfig : kExitNumerical;
    }
    e.metadata = m;

    Table t;
    t.columns = {"t", "x", "y", "z", "tau", "z_phase", "action"};
    for (size_t i = 0; i < bw_trajectory_size(traj.get()); ++i) {
        bw_state st;
        check(bw_trajectory_sample(traj.get(), i, &st));
        t.rows.push_back({st.t, st.pos[0], st.pos[1], st.pos[2], st.tau, st.z_phase, st.action});
    }
    e.table = std::move(t);
    return e;
}

Envelope cmd_check(const Options& o, int& exit_code) {
    ParamStrings store;
    const bw_params p = make_params(o, store);
    const auto ns = n_list(o, {"1", "2", "3"});
    std::vector<double> nv;
    for (const auto& n : ns) nv.push_back(parse_number(n, "n"));
    bw_check_config c;
    bw_check_config_default(&c);
    c.params = p;
    c.n_values = nv.data();
    c.n_count = nv.size();
    c.strict_selection = o.strict;
    c.asymptotic_l_max = o.asym_l_max;
    bw_report* raw = nullptr;
    check(bw_run_checks(&c, &raw));
    const ReportPtr report(raw);

    Envelope e = start("check", o, p);
    e.input["n"] = ns;
    e.input["strict_selection"] = o.strict;
    e.input["asymptotic_l_max"] = o.asym_l_max;
    ordered_json checks = ordered_json::array();
    long long passed = 0;
    for (size_t i = 0; i < bw_report_size(report.get()); ++i) {
        bw_check_item item;
        check(bw_report_item(report.get(), i, &item));
        ordered_json j;
        j["name"] = item.name;
        j["identity"] = item.identity;
        j["measured"] = std::isfinite(item.measured) ? ordered_json(item.measured) : ordered_json(nullptr);
        j["threshold"] = item.threshold;
        j["passed"] = item.passed != 0;
        j["detail"] = item.detail;
        passed += item.passed != 0;
        checks.push_back(std::move(j));
    }
    ordered_json r;
    r["passed"] = bw_report_passed(report.get()) != 0;
    r["passed_count"] = passed;
    r["checks"] = std::move(checks);
    e.metadata["passed"] = r["passed"];
    e.report = std::move(r);
    if (!bw_report_passed(report.get())) exit_code = kExitCheckFailed;
    return e;
}

struct Preset {
    std::map<std::string, std::string> values;
};

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table = {
        {"fig1", {{{"alpha", "1/3"}, {"xi", "1"}, {"b", "1"}, {"omega0", "0"}, {"n", "1,2,3"}}}},
        {"fig2", {{{"alpha", "1/3"}, {"xi", "1"}, {"b", "1"}, {"omega0", "0"}, {"n", "1"}, {"plane", "equatorial"}}}},
        {"fig3", {{{"alpha", "1/3"}, {"xi", "1"}, {"b", "1"}, {"omega0", "0"}, {"n", "2"}, {"plane", "equatorial"}}}},
        {"fig4", {{{"alpha", "1/3"}, {"xi", "1"}, {"b", "1"}, {"omega0", "0"}, {"n", "3"}, {"plane", "equatorial"}}}},
        {"fig5", {{{"alpha", "1/3"}, {"xi", "1"}, {"b", "1"}, {"omega0", "0"}, {"n", "1"}, {"plane", "meridian"}}}},
        {"table2", {{{"alpha-inv", "137"}, {"b", "1"}, {"n", "1/2,1,3/2,2,5/2,10"}}}},
    };
    return table;
}

void add_options(CLI::App* sub, Options& o, const std::string& name) {
    sub->add_option("--preset", o.preset, "Figure/table preset: fig1..fig5, table2")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "table2"}));
    sub->add_option("--alpha", o.alpha, "Fine-structure constant (decimal or p/q)");
    sub->add_option("--alpha-inv", o.alpha_inv, "Inverse fine-structure constant");
    sub->add_option("--b", o.b, "Scale parameter b (decimal or p/q)")->capture_default_str();
    sub->add_option("--xi", o.xi, "Charge ratio xi, beta = xi alpha")->capture_default_str();
    sub->add_option("--omega0", o.omega0, "Bare field frequency omega0")->capture_default_str();
    sub->add_option("--m-eff", o.m_eff, "Effective mass")->capture_default_str();
    sub->add_option("--m-p", o.m_p, "Particle mass m_p (with --sigma, --omega-p)");
    sub->add_option("--sigma", o.sigma, "Coupling sigma");
    sub->add_option("--omega-p", o.omega_p, "Internal pulsation Omega_p");
    sub->add_option("--n", o.n, "Quantum numbers n (comma separated, p/q allowed)")->delimiter(',');
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", o.output, "Output path (default standard output)");
    sub->add_flag("--timestamp", o.timestamp, "Record a timestamp in the provenance block");
    sub->add_option("--precision", o.precision, "Significant digits in CSV output")->check(CLI::Range(1, 17));
    if (name == "orbit-wave") {
        sub->add_option("--samples", o.samples, "Samples over [0, 2 pi]");
        sub->add_option("--delta", o.delta, "Curve amplitude scale (default 0.15 r_n)");
        sub->add_option("--u0", o.u0, "Field amplitude at the particle");
    }
    if (name == "field-map") {
        sub->add_option("--plane", o.plane, "equatorial or meridian");
        sub->add_option("--grid-n", o.grid_n, "Cells per side (>= 16)");
        sub->add_option("--extent", o.extent, "Half-width in units of a0 (default 2 r_n)");
        sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    }
    if (name == "integrate") {
        sub->add_option("--periods", o.periods, "Duration in orbital periods");
        sub->add_option("--tol", o.tol, "Local error tolerance");
        sub->add_option("--omega-p-scale", o.omega_p_scale, "Detuning factor for the internal pulsation");
        sub->add_option("--radius-scale", o.radius_scale, "Initial radius as a multiple of r_n");
        sub->add_option("--samples-per-period", o.samples_per_period, "Dense-output samples per period (0 = steps)");
        sub->add_option("--u0", o.u0, "Field amplitude at the particle");
    }
    if (name == "check") {
        sub->add_flag("--strict,!--no-strict", o.strict, "Fail the selection check on non-integer m_pm");
        sub->add_option("--asym-l-max", o.asym_l_max, "Largest l in the asymptotic check");
        sub->add_option("--threads", o.threads, "Worker threads (accepted for uniformity)");
    }
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0 || (flag == "--output" && a == "-o");
    });
}

std::string find_config(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    const char* env = std::getenv("BOHRWAVE_CONFIG");
    return env ? env : "";
}

std::vector<std::string> strip_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            ++i;
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

/// Appends --key=value for options not already set; flags beat environment,
/// environment beats the config file, and presets fill what remains.
std::vector<std::string> layered_args(std::vector<std::string> args, CLI::App* sub) {
    auto known = [&](const std::string& flag) {
        try {
            return sub->get_option_no_throw(flag) != nullptr;
        } catch (...) {
            return false;
        }
    };
    std::vector<std::string> extra;
    auto add = [&](const std::string& key, const std::string& value) {
        const std::string flag = "--" + key;
        if (!known(flag) || given(args, flag) || given(extra, flag)) return;
        extra.push_back(flag + "=" + value);
    };

    for (char** env = environ; *env; ++env) {
        const std::string entry = *env;
        const std::string prefix = "BOHRWAVE_";
        if (entry.rfind(prefix, 0) != 0) continue;
        const auto eq = entry.find('=');
        std::string key = entry.substr(prefix.size(), eq - prefix.size());
        if (key == "CONFIG") continue;
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return c == '_' ? '-' : std::tolower(c); });
        add(key, entry.substr(eq + 1));
    }

    const std::string config = find_config(args);
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw Failure{kExitConfig, "config: cannot open " + config};
        std::vector<CLI::ConfigItem> items;
        try {
            items = CLI::ConfigTOML().from_config(in);
        } catch (const CLI::Error& e) {
            throw Failure{kExitConfig, "config: " + std::string(e.what())};
        }
        // Top-level keys and a [model] section apply everywhere; a section named
        // after the subcommand applies to it alone and takes priority.
        std::vector<std::pair<int, const CLI::ConfigItem*>> ranked;
        for (const auto& item : items) {
            if (item.name == "++" || item.name == "--") continue;
            int rank = -1;
            if (item.parents.empty())
                rank = 0;
            else if (item.parents.size() == 1 && item.parents[0] == "model")
                rank = 1;
            else if (item.parents.size() == 1 && item.parents[0] == sub->get_name())
                rank = 2;
            else if (item.parents.size() == 1 &&
                     std::find(std::begin(kSubcommands), std::end(kSubcommands), item.parents[0]) != std::end(kSubcommands))
                continue;
            if (rank < 0) {
                throw Failure{kExitConfig,
                              "config: unknown section " + join(item.parents) + " (key " + item.name + ")"};
            }
            ranked.emplace_back(rank, &item);
        }
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [rank, item] : ranked) {
            std::string key = item->name;
            std::replace(key.begin(), key.end(), '_', '-');
            if (!known("--" + key)) {
                throw Failure{kExitConfig, "config: " + (rank == 0 ? std::string() : item->parents[0] + ".") +
                                               item->name + ": unknown option for " + sub->get_name()};
            }
            add(key, join(item->inputs));
        }
    }

    // The preset may itself come from the environment or the config file.
    std::string preset;
    for (const auto& list : {args, extra}) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i] == "--preset" && i + 1 < list.size()) preset = list[i + 1];
            if (list[i].rfind("--preset=", 0) == 0) preset = list[i].substr(9);
        }
        if (!preset.empty()) break;
    }
    if (!preset.empty()) {
        const auto it = presets().find(preset);
        if (it == presets().end()) throw Failure{kExitConfig, "preset: unknown preset " + preset};
        const bool alpha_set = given(args, "--alpha") || given(args, "--alpha-inv") || given(extra, "--alpha") ||
                               given(extra, "--alpha-inv");
        for (const auto& [key, value] : it->second.values) {
            if ((key == "alpha" || key == "alpha-inv") && alpha_set) continue;
            add(key, value);
        }
    }

    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Orbit, wave-field and trajectory calculations for the de Broglie double-solution atom model"};
    app.name("bohrwave");
    app.set_version_flag("--version", std::string(bw_version()));
    app.require_subcommand(1);
    app.add_option("--config", o.config, "TOML/INI configuration file (also BOHRWAVE_CONFIG)");
    std::map<std::string, CLI::App*> subs;
    const std::map<std::string, std::string> help = {
        {"orbit", "Orbit quantities per n"},
        {"table", "Mode numbers m_pm over n, exact arithmetic"},
        {"orbit-wave", "Field, phase-wave and orbit curves along the orbit"},
        {"field-map", "Intensity map of the matched mode pair"},
        {"integrate", "Integrate the particle motion from the circular orbit"},
        {"check", "Run the invariant suite"},
    };
    for (const char* name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        add_options(sub, o, name);
        subs[name] = sub;
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        const auto sub_it = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return subs.count(a) > 0; });
        if (sub_it != args.end()) {
            const std::string name = *sub_it;
            CLI::App* sub = subs.at(name);
            std::vector<std::string> head(args.begin(), sub_it);
            std::vector<std::string> tail(sub_it + 1, args.end());
            const std::string config = find_config(args);
            std::vector<std::string> sub_args = strip_config(tail);
            if (!config.empty()) sub_args.push_back("--config=" + config);
            sub_args = layered_args(sub_args, sub);
            sub_args = strip_config(sub_args);
            args = strip_config(head);
            args.push_back(name);
            args.insert(args.end(), sub_args.begin(), sub_args.end());
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const Failure& f) {
        std::cerr << "bohrwave: " << f.message << '\n';
        return f.exit_code;
    }

    int exit_code = kExitOk;
    try {
        Envelope e;
        if (subs["orbit"]->parsed())
            e = cmd_orbit(o);
        else if (subs["table"]->parsed())
            e = cmd_table(o);
        else if (subs["orbit-wave"]->parsed())
            e = cmd_orbit_wave(o);
        else if (subs["field-map"]->parsed())
            e = cmd_field_map(o);
        else if (subs["integrate"]->parsed())
            e = cmd_integrate(o, exit_code);
        else
            e = cmd_check(o, exit_code);

        const bwcli::Format format = o.format == "json" ? bwcli::Format::json : bwcli::Format::csv;
        if (o.output.empty() || o.output == "-") {
            bwcli::write(std::cout, e, format, o.precision);
        } else {
            std::ofstream out(o.output, std::ios::binary);
            if (!out) throw Failure{kExitConfig, "output: cannot open " + o.output};
            bwcli::write(out, e, format, o.precision);
        }
        if (exit_code == kExitNumerical) std::cerr << "bohrwave: " << e.metadata["error"]["message"].get<std::string>() << '\n';
        if (exit_code == kExitCheckFailed) std::cerr << "bohrwave: check suite reported failures\n";
    } catch (const Failure& f) {
        std::cerr << "bohrwave: " << f.message << '\n';
        return f.exit_code;
    }
    return exit_code;
}
