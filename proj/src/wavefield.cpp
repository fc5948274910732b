#include "wavefield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "errors.hpp"

namespace bohrwave {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_positive_r(double r, const char* where) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::domain, std::string(where) + ": r must be positive");
}

// (2l+1)!/(l! (2 omega)^l) as a running product.
double chargeless_prefactor(int l, double omega) {
    double value = 2.0 * l + 1.0;
    for (int k = 1; k <= l; ++k) value *= (l + k) / (2.0 * omega);
    return value;
}

// |u| of a single mode with the phase factor left out; f does not depend on t or phi.
double mode_modulus(const Mode& mode, double r, double theta) {
    const specfun::LegendreOrder order(mode.l, mode.signed_m());
    return std::abs(mode.amplitude) * std::abs(radial(mode, r).real()) *
           std::abs(specfun::assoc_legendre(order, std::cos(theta)));
}

// |u| up to a constant factor, with the radial power measured from r_ref and a
// normalized angular function, so high orders stay in range.
double scaled_modulus(const Mode& mode, double r, double theta, double r_ref) {
    double radial_part;
    if (mode.regime == Regime::chargeless) {
        radial_part = specfun::spherical_bessel_j(mode.l, mode.omega * r);
    } else {
        const double w = mode.radial_omega();
        const double b = mode.radial_beta();
        const double lp = mode.l_prime;
        const Complex m =
            specfun::kummer_m(Complex(lp + 1.0, -b), Complex(2.0 * lp + 2.0, 0.0), Complex(0.0, -2.0 * w * r));
        radial_part = (std::exp(Complex(lp * std::log(r / r_ref), w * r)) * m).real();
    }
    return std::abs(radial_part) * std::abs(std::sph_legendre(mode.l, mode.m, theta));
}

struct Stencil {
    double dr;
    double dtheta;
    double dphi;
};

Stencil make_stencil(const SphericalPoint& p, double h, const char* where) {
    require_positive_r(p.r, where);
    if (!(h > 0.0) || h >= p.r) throw Error(ErrorCode::invalid_argument, std::string(where) + ": need 0 < h < r");
    const double st = std::sin(p.theta);
    const double dtheta = h / p.r;
    if (st < 1e-8 || p.theta - dtheta < 0.0 || p.theta + dtheta > kPi)
        throw Error(ErrorCode::domain, std::string(where) + ": point too close to the polar axis");
    return {h, dtheta, h / (p.r * st)};
}

// Spherical Laplacian from the 7-point stencil values.
template <class T>
T spherical_laplacian(const SphericalPoint& p, const Stencil& s, T f0, T fr_p, T fr_m, T ft_p, T ft_m, T fp_p,
                      T fp_m) {
    const double r = p.r;
    const double st = std::sin(p.theta);
    const double cot = std::cos(p.theta) / st;
    const T radial = (fr_p - 2.0 * f0 + fr_m) / (s.dr * s.dr) + (2.0 / r) * (fr_p - fr_m) / (2.0 * s.dr);
    const T polar = ((ft_p - 2.0 * f0 + ft_m) / (s.dtheta * s.dtheta) + cot * (ft_p - ft_m) / (2.0 * s.dtheta)) / (r * r);
    const T azimuthal = (fp_p - 2.0 * f0 + fp_m) / (s.dphi * s.dphi) / (r * r * st * st);
    return radial + polar + azimuthal;
}

int count_sign_changes(const std::vector<double>& values) {
    int count = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if ((values[i - 1] < 0.0 && values[i] > 0.0) || (values[i - 1] > 0.0 && values[i] < 0.0)) ++count;
    return count;
}

}  // namespace

const char* regime_name(Regime regime) noexcept {
    switch (regime) {
        case Regime::coulomb: return "coulomb";
        case Regime::chargeless: return "chargeless";
        case Regime::klein_gordon: return "klein_gordon";
    }
    return "unknown";
}

const char* plane_name(Plane plane) noexcept { return plane == Plane::equatorial ? "equatorial" : "meridian"; }

double Mode::radial_omega() const {
    if (regime == Regime::klein_gordon) return std::sqrt((omega - omega0) * (omega + omega0));
    return omega;
}

double Mode::radial_beta() const {
    if (regime == Regime::klein_gordon) return beta * omega / radial_omega();
    return regime == Regime::chargeless ? 0.0 : beta;
}

double effective_order(int l, double beta) {
    if (l < 0) throw Error(ErrorCode::invalid_argument, "effective_order: l must be >= 0");
    const double half = l + 0.5;
    if (!(std::abs(beta) < half))
        throw Error(ErrorCode::supercritical_charge,
                    "effective_order: beta >= l + 1/2 makes l' complex (l = " + std::to_string(l) + ")");
    return -0.5 + std::sqrt((half - beta) * (half + beta));
}

Mode make_mode(Sign sign, int l, int m, double omega, double beta, double omega0, std::optional<Regime> regime) {
    if (l < 0 || m < 0 || m > l)
        throw Error(ErrorCode::invalid_argument, "make_mode: need 0 <= m <= l (l = " + std::to_string(l) +
                                                     ", m = " + std::to_string(m) + ")");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::invalid_argument, "make_mode: omega must be positive");
    if (!std::isfinite(beta)) throw Error(ErrorCode::invalid_argument, "make_mode: beta must be finite");
    if (!(omega0 >= 0.0)) throw Error(ErrorCode::invalid_argument, "make_mode: omega0 must be >= 0");

    Mode mode;
    mode.sign = sign;
    mode.l = l;
    mode.m = m;
    mode.omega = omega;
    mode.beta = beta;
    mode.omega0 = omega0;
    mode.regime = regime.value_or(omega0 > 0.0 ? Regime::klein_gordon
                                               : (beta == 0.0 ? Regime::chargeless : Regime::coulomb));
    if (mode.regime == Regime::chargeless && beta != 0.0)
        throw Error(ErrorCode::invalid_argument, "make_mode: chargeless regime requires beta = 0");
    if (mode.regime != Regime::klein_gordon && omega0 != 0.0)
        throw Error(ErrorCode::invalid_argument, "make_mode: omega0 > 0 requires the klein_gordon regime");
    if (mode.regime == Regime::klein_gordon && !(omega > omega0))
        throw Error(ErrorCode::evanescent_regime,
                    "make_mode: omega <= omega0 lies in the discrete spectrum, which is not modelled");
    mode.l_prime = mode.regime == Regime::chargeless ? double(l) : effective_order(l, beta);
    return mode;
}

Complex radial(const Mode& mode, double r, const specfun::KummerOptions& opts) {
    require_positive_r(r, "radial");
    if (mode.regime == Regime::chargeless)
        return chargeless_prefactor(mode.l, mode.omega) * specfun::spherical_bessel_j(mode.l, mode.omega * r);
    const double w = mode.radial_omega();
    const double b = mode.radial_beta();
    const double lp = mode.l_prime;
    const Complex m = specfun::kummer_m(Complex(lp + 1.0, -b), Complex(2.0 * lp + 2.0, 0.0), Complex(0.0, -2.0 * w * r), opts);
    const Complex value = std::exp(Complex(lp * std::log(r), w * r)) * m;
    return value.real();
}

Complex asymptotic_normalization(const Mode& mode) {
    const double w = mode.radial_omega();
    const double b = mode.radial_beta();
    const double lp = mode.l_prime;
    if (mode.regime == Regime::chargeless) return chargeless_prefactor(mode.l, w);
    // e^{i eta}/Gamma(l'+1-i b) = 1/|Gamma(l'+1-i b)|, so C is real.
    const double log_c = -b * kPi / 2.0 - lp * std::log(2.0 * w) + specfun::log_gamma(2.0 * lp + 2.0) -
                         specfun::log_gamma(Complex(lp + 1.0, -b)).real();
    return std::exp(log_c);
}

Complex radial_asymptotic(const Mode& mode, double r) {
    require_positive_r(r, "radial_asymptotic");
    const double w = mode.radial_omega();
    const double b = mode.radial_beta();
    const double lp = mode.l_prime;
    const double eta = b == 0.0 ? 0.0 : specfun::log_gamma(Complex(lp + 1.0, -b)).imag();
    const double delta = b * std::log(2.0 * w * r) + eta;
    return asymptotic_normalization(mode) * std::sin(w * r - kPi * lp / 2.0 + delta) / (w * r);
}

Complex radial_ode_residual(const Mode& mode, double r, double h) {
    require_positive_r(r, "radial_ode_residual");
    if (!(h > 0.0) || h >= r) throw Error(ErrorCode::invalid_argument, "radial_ode_residual: need 0 < h < r");
    const Complex f0 = radial(mode, r);
    const Complex fp = radial(mode, r + h);
    const Complex fm = radial(mode, r - h);
    const double w = mode.radial_omega();
    const double b = mode.radial_beta();
    const double lp = mode.l_prime;
    const Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
    const Complex d1 = (fp - fm) / (2.0 * h);
    return d2 + 2.0 / r * d1 + (-lp * (lp + 1.0) / (r * r) + 2.0 * b * w / r + w * w) * f0;
}

Complex eval_mode(const Mode& mode, double t, double r, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= kPi)) throw Error(ErrorCode::domain, "eval_mode: theta outside [0, pi]");
    const specfun::LegendreOrder order(mode.l, mode.signed_m());
    const double angular = specfun::assoc_legendre(order, std::cos(theta));
    if (angular == 0.0) return 0.0;
    const double phase = mode.signed_m() * phi - mode.omega * t;
    return mode.amplitude * radial(mode, r) * angular * std::polar(1.0, phase);
}

ModePair make_mode_pair(const OrbitSolution& orbit, std::optional<int> l_plus, std::optional<int> l_minus) {
    const double mp = std::nearbyint(orbit.m_plus);
    const double mm = std::nearbyint(orbit.m_minus);
    if (std::abs(mp - orbit.m_plus) > kDefaultIntegerTolerance || std::abs(mm - orbit.m_minus) > kDefaultIntegerTolerance)
        throw Error(ErrorCode::invalid_argument, "make_mode_pair: m_+ and m_- must be integers (selection rule fails at n = " +
                                                     std::to_string(orbit.n) + ")");
    if (mp > 1e6) throw Error(ErrorCode::overflow, "make_mode_pair: mode numbers too large to evaluate");
    const int m_plus = static_cast<int>(mp);
    const int m_minus = static_cast<int>(mm);
    const PhysicalParams& p = orbit.params;
    ModePair pair;
    pair.plus = make_mode(Sign::plus, l_plus.value_or(m_plus), m_plus, orbit.omega_plus, p.beta(), p.omega0);
    pair.minus = make_mode(Sign::minus, l_minus.value_or(m_minus), m_minus, orbit.omega_minus, p.beta(), p.omega0);
    return pair;
}

MatchedAmplitudes match_amplitudes(const OrbitSolution& orbit, const ModePair& modes, double u0) {
    auto one = [&](const Mode& mode) {
        if ((mode.l + mode.m) % 2 != 0)
            throw Error(ErrorCode::unmatched_parity,
                        "match_amplitudes: l + m odd gives P(0) = 0 (l = " + std::to_string(mode.l) +
                            ", m = " + std::to_string(mode.m) + ")");
        const specfun::LegendreOrder order(mode.l, mode.signed_m());
        const double p0 = specfun::assoc_legendre(order, 0.0);
        const double r_n = orbit.r;
        const double at_orbit = std::abs(radial(mode, r_n).real());
        // Compare against the radial scale over one local wavelength around the orbit.
        const double span = kPi / mode.radial_omega();
        double scale = at_orbit;
        for (int k = -8; k <= 8; ++k) {
            const double r = r_n + span * k / 8.0;
            if (r > 0.0) scale = std::max(scale, std::abs(radial(mode, r).real()));
        }
        if (!(at_orbit > 1e-10 * scale))
            throw Error(ErrorCode::node_on_orbit, "match_amplitudes: the orbit radius sits on a radial node");
        return Complex(u0 / (2.0 * radial(mode, r_n).real() * p0), 0.0);
    };
    return {one(modes.plus), one(modes.minus), u0};
}

ModePair matched_pair(const OrbitSolution& orbit, double u0, std::optional<int> l_plus, std::optional<int> l_minus) {
    ModePair pair = make_mode_pair(orbit, l_plus, l_minus);
    const MatchedAmplitudes a = match_amplitudes(orbit, pair, u0);
    pair.plus.amplitude = a.a_plus;
    pair.minus.amplitude = a.a_minus;
    return pair;
}

Complex eval_pair(const ModePair& pair, double t, double r, double theta, double phi) {
    return eval_mode(pair.plus, t, r, theta, phi) + eval_mode(pair.minus, t, r, theta, phi);
}

FieldSample field_on_orbit(const OrbitSolution& orbit, double u0, double t, double phi) {
    const double b = orbit.params.b;
    FieldSample s;
    s.carrier_phase = orbit.n * phi / b - (orbit.N - orbit.params.alpha) * t / (b * orbit.r);
    s.envelope = std::cos(orbit.N * phi / b - orbit.n * t / (b * orbit.r));
    s.value = u0 * s.envelope * std::polar(1.0, s.carrier_phase);
    s.position = {t, orbit.r, kPi / 2.0, phi};
    return s;
}

double quantum_potential(const Mode& mode, const SphericalPoint& p, double h) {
    const Stencil s = make_stencil(p, h, "quantum_potential");
    const double f0 = scaled_modulus(mode, p.r, p.theta, p.r);
    const double fr_p = scaled_modulus(mode, p.r + s.dr, p.theta, p.r);
    const double fr_m = scaled_modulus(mode, p.r - s.dr, p.theta, p.r);
    const double ft_p = scaled_modulus(mode, p.r, p.theta + s.dtheta, p.r);
    const double ft_m = scaled_modulus(mode, p.r, p.theta - s.dtheta, p.r);
    const double neighbourhood = std::max({fr_p, fr_m, ft_p, ft_m});
    if (!(f0 > 1e-10 * neighbourhood) || f0 == 0.0)
        throw Error(ErrorCode::undefined_potential, "quantum_potential: |u| vanishes at the point");
    // f does not depend on phi, so the azimuthal samples equal f0.
    return -spherical_laplacian(p, s, f0, fr_p, fr_m, ft_p, ft_m, f0, f0) / f0;
}

double quantum_potential_exact(const Mode& mode, const SphericalPoint& p) {
    require_positive_r(p.r, "quantum_potential_exact");
    const double k = mode.m / (p.r * std::sin(p.theta));
    const double w = mode.omega + mode.beta / p.r;
    return w * w - k * k - mode.omega0 * mode.omega0;
}

double quantum_potential_on_orbit(const OrbitSolution& orbit, Sign sign) {
    const PhysicalParams& p = orbit.params;
    const double m = sign == Sign::plus ? orbit.m_plus : orbit.m_minus;
    const double shifted = (m + p.beta() - p.alpha / p.b) / orbit.r;
    const double k = m / orbit.r;
    return shifted * shifted - k * k - p.omega0 * p.omega0;
}

CurrentDivergence current_divergence(const Mode& mode, const SphericalPoint& p, double h) {
    if (!(2.0 * h < p.r)) throw Error(ErrorCode::invalid_argument, "current_divergence: need 0 < 2h < r");
    const Stencil s = make_stencil(p, h, "current_divergence");
    const double f0 = mode_modulus(mode, p.r, p.theta);
    if (f0 == 0.0) throw Error(ErrorCode::undefined_potential, "current_divergence: |u| vanishes at the point");

    auto u = [&](double r, double theta, double phi) { return eval_mode(mode, 0.0, r, theta, phi); };
    // Current components Im(conj(u) grad u) at a point, same step sizes as the outer stencil.
    auto current = [&](double r, double theta, double phi) -> Vec3 {
        const Complex c = std::conj(u(r, theta, phi));
        const double st = std::sin(theta);
        const double dphi = h / (r * st);
        const double dtheta = h / r;
        const double jr = (c * (u(r + h, theta, phi) - u(r - h, theta, phi))).imag() / (2.0 * h);
        const double jt = (c * (u(r, theta + dtheta, phi) - u(r, theta - dtheta, phi))).imag() / (2.0 * r * dtheta);
        const double jp = (c * (u(r, theta, phi + dphi) - u(r, theta, phi - dphi))).imag() / (2.0 * r * st * dphi);
        return {jr, jt, jp};
    };

    const double r = p.r;
    const double st = std::sin(p.theta);
    const Vec3 jr_p = current(r + s.dr, p.theta, p.phi);
    const Vec3 jr_m = current(r - s.dr, p.theta, p.phi);
    const Vec3 jt_p = current(r, p.theta + s.dtheta, p.phi);
    const Vec3 jt_m = current(r, p.theta - s.dtheta, p.phi);
    const Vec3 jp_p = current(r, p.theta, p.phi + s.dphi);
    const Vec3 jp_m = current(r, p.theta, p.phi - s.dphi);

    const double d_r = ((r + s.dr) * (r + s.dr) * jr_p[0] - (r - s.dr) * (r - s.dr) * jr_m[0]) / (2.0 * s.dr) / (r * r);
    const double d_t = (std::sin(p.theta + s.dtheta) * jt_p[1] - std::sin(p.theta - s.dtheta) * jt_m[1]) /
                       (2.0 * s.dtheta) / (r * st);
    const double d_p = (jp_p[2] - jp_m[2]) / (2.0 * s.dphi) / (r * st);

    CurrentDivergence out;
    out.time_part = 0.0;
    out.spatial_part = -(d_r + d_t + d_p);
    out.total = out.time_part + out.spatial_part;
    return out;
}

Complex field_equation_residual(const std::vector<Mode>& modes, const SpacetimePoint& pt, double h) {
    if (modes.empty()) throw Error(ErrorCode::invalid_argument, "field_equation_residual: no modes");
    const double beta = modes.front().beta;
    const double omega0 = modes.front().omega0;
    for (const Mode& m : modes)
        if (m.beta != beta || m.omega0 != omega0)
            throw Error(ErrorCode::invalid_argument, "field_equation_residual: modes must share beta and omega0");
    const SphericalPoint p{pt.r, pt.theta, pt.phi};
    const Stencil s = make_stencil(p, h, "field_equation_residual");

    auto u = [&](double t, double r, double theta, double phi) {
        Complex sum = 0.0;
        for (const Mode& m : modes) sum += eval_mode(m, t, r, theta, phi);
        return sum;
    };
    const Complex u0 = u(pt.t, pt.r, pt.theta, pt.phi);
    const Complex ut_p = u(pt.t + h, pt.r, pt.theta, pt.phi);
    const Complex ut_m = u(pt.t - h, pt.r, pt.theta, pt.phi);
    const Complex lap = spherical_laplacian<Complex>(
        p, s, u0, u(pt.t, pt.r + s.dr, pt.theta, pt.phi), u(pt.t, pt.r - s.dr, pt.theta, pt.phi),
        u(pt.t, pt.r, pt.theta + s.dtheta, pt.phi), u(pt.t, pt.r, pt.theta - s.dtheta, pt.phi),
        u(pt.t, pt.r, pt.theta, pt.phi + s.dphi), u(pt.t, pt.r, pt.theta, pt.phi - s.dphi));
    const double q = beta / pt.r;
    const Complex utt = (ut_p - 2.0 * u0 + ut_m) / (h * h);
    const Complex ut = (ut_p - ut_m) / (2.0 * h);
    const Complex d0_squared = utt - 2.0 * kI * q * ut - q * q * u0;
    return d0_squared - lap + omega0 * omega0 * u0;
}

double group_velocity(const OrbitSolution& orbit) {
    return (orbit.omega_plus - orbit.omega_minus) / (orbit.k_plus + orbit.k_minus);
}

double phase_gradient_wavevector(const Mode& mode, const SphericalPoint& p, double h) {
    const Stencil s = make_stencil(p, h, "phase_gradient_wavevector");
    const Complex up = eval_mode(mode, 0.0, p.r, p.theta, p.phi + s.dphi);
    const Complex um = eval_mode(mode, 0.0, p.r, p.theta, p.phi - s.dphi);
    if (up == 0.0 || um == 0.0) throw Error(ErrorCode::undefined_potential, "phase_gradient_wavevector: |u| vanishes");
    return std::arg(up * std::conj(um)) / (2.0 * s.dphi) / (p.r * std::sin(p.theta));
}

IntensityGrid intensity_map(const OrbitSolution& orbit, const ModePair& modes, Plane plane, double extent, int grid_n,
                            int threads) {
    if (grid_n < kMinGridN)
        throw Error(ErrorCode::invalid_argument, "intensity_map: grid_n must be >= " + std::to_string(kMinGridN));
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw Error(ErrorCode::invalid_argument, "intensity_map: extent must be positive");

    IntensityGrid g;
    g.plane = plane;
    g.grid_n = grid_n;
    g.extent = extent;
    g.cell = 2.0 * extent / grid_n;
    g.a0 = orbit.a0;
    g.r_orbit = orbit.r / orbit.a0;
    g.axis.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) g.axis[i] = -extent + (i + 0.5) * g.cell;
    const std::size_t total = static_cast<std::size_t>(grid_n) * grid_n;
    g.value.assign(total, 0.0);
    g.intensity.assign(total, 0.0);

    const double tiny_r = 1e-12 * extent * orbit.a0;
    auto fill_row = [&](int row) {
        const double second = g.axis[row];
        for (int col = 0; col < grid_n; ++col) {
            const double first = g.axis[col];
            double r = 0.0, theta = kPi / 2.0, phi = 0.0;
            if (plane == Plane::equatorial) {
                r = std::hypot(first, second) * orbit.a0;
                phi = std::atan2(second, first);
            } else {
                r = std::hypot(first, second) * orbit.a0;
                theta = std::atan2(std::abs(first), second);
                phi = first >= 0.0 ? 0.0 : kPi;
            }
            const Complex u = eval_pair(modes, 0.0, std::max(r, tiny_r), theta, phi);
            const std::size_t idx = static_cast<std::size_t>(row) * grid_n + col;
            g.value[idx] = u;
            g.intensity[idx] = std::norm(u);
        }
    };

    const int workers = std::clamp(threads, 1, grid_n);
    if (workers == 1) {
        for (int row = 0; row < grid_n; ++row) fill_row(row);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int row = next++; row < grid_n; row = next++) fill_row(row);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = grid_n;
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    g.argmax = static_cast<std::size_t>(std::max_element(g.intensity.begin(), g.intensity.end()) - g.intensity.begin());
    return g;
}

double radial_intensity_argmax(const IntensityGrid& grid) {
    const int bins = static_cast<int>(std::floor(grid.extent / grid.cell));
    std::vector<double> sum(bins, 0.0);
    std::vector<int> count(bins, 0);
    for (int row = 0; row < grid.grid_n; ++row) {
        for (int col = 0; col < grid.grid_n; ++col) {
            const double rho = std::hypot(grid.axis[col], grid.axis[row]);
            const int k = static_cast<int>(std::floor(rho / grid.cell));
            if (k >= bins) continue;
            sum[k] += grid.at(row, col);
            ++count[k];
        }
    }
    int best = 0;
    double best_mean = -1.0;
    for (int k = 0; k < bins; ++k) {
        if (count[k] == 0) continue;
        const double mean = sum[k] / count[k];
        if (mean > best_mean) {
            best_mean = mean;
            best = k;
        }
    }
    return (best + 0.5) * grid.cell;
}

std::vector<std::size_t> local_maxima(const IntensityGrid& grid, double fraction) {
    std::vector<std::size_t> out;
    const double floor_value = fraction * grid.intensity[grid.argmax];
    const int n = grid.grid_n;
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const double v = grid.at(row, col);
            if (v < floor_value) continue;
            bool peak = true;
            for (int dr = -1; dr <= 1 && peak; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int rr = row + dr;
                    const int cc = col + dc;
                    if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
                    const double w = grid.at(rr, cc);
                    if (w > v || (w == v && (dr < 0 || (dr == 0 && dc < 0)))) {
                        peak = false;
                        break;
                    }
                }
            }
            if (peak) out.push_back(static_cast<std::size_t>(row) * n + col);
        }
    }
    return out;
}

OrbitWaveCurves orbit_wave_curve(const OrbitSolution& orbit, double u0, double delta, int samples) {
    if (samples < 2) throw Error(ErrorCode::invalid_argument, "orbit_wave_curve: samples must be >= 2");
    OrbitWaveCurves c;
    c.u0 = u0;
    c.delta = delta > 0.0 ? delta : 0.15 * orbit.r;
    c.undersampled = samples < 8.0 * orbit.m_plus;
    c.expected_phase_zero_count = 2.0 * orbit.n / orbit.params.b;
    c.expected_envelope_zero_count = 2.0 * orbit.N / orbit.params.b;

    std::vector<double> total_sign, phase_sign, envelope_sign;
    c.total.reserve(samples);
    c.phase.reserve(samples);
    c.circle.reserve(samples);
    const double rn = orbit.r;
    for (int i = 0; i < samples; ++i) {
        const double phi = 2.0 * kPi * i / (samples - 1);
        const FieldSample f = field_on_orbit(orbit, u0, 0.0, phi);
        const double wave = std::cos(orbit.n * phi / orbit.params.b);
        const double rt = rn + c.delta * f.value.real();
        const double rp = rn + c.delta * u0 * wave;
        const double cs = std::cos(phi);
        const double sn = std::sin(phi);
        c.total.push_back({phi, rt * cs, rt * sn, rt});
        c.phase.push_back({phi, rp * cs, rp * sn, rp});
        c.circle.push_back({phi, rn * cs, rn * sn, rn});
        total_sign.push_back(f.value.real());
        phase_sign.push_back(wave);
        envelope_sign.push_back(f.envelope);
    }
    c.closure = std::hypot(c.total.back().x - c.total.front().x, c.total.back().y - c.total.front().y);
    c.total_zero_count = count_sign_changes(total_sign);
    c.phase_zero_count = count_sign_changes(phase_sign);
    c.envelope_zero_count = count_sign_changes(envelope_sign);
    return c;
}

}  // namespace bohrwave
