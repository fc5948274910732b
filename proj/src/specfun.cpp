#include "specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "errors.hpp"

namespace bohrwave::specfun {

namespace {

constexpr double kEps = DBL_EPSILON / 2;
constexpr double kMaxCondition = 1.0e3;

// Neumaier summation, applied to both components.
class CompensatedSum {
public:
    void add(Complex x) {
        add_part(re_, re_c_, x.real());
        add_part(im_, im_c_, x.imag());
    }
    Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

struct SeriesResult {
    Complex sum;
    double magnitude = 0.0;  // sum of term moduli
    bool converged = false;

    double condition() const {
        const double s = std::abs(sum);
        return s > 0.0 ? magnitude / s : std::numeric_limits<double>::infinity();
    }
};

SeriesResult maclaurin(Complex a, Complex b, Complex z, int max_terms) {
    CompensatedSum sum;
    sum.add(1.0);
    Complex term = 1.0;
    SeriesResult out;
    out.magnitude = 1.0;
    int quiet = 0;
    for (int k = 0; k < max_terms; ++k) {
        const double kd = k;
        term *= (a + kd) / (b + kd) * z / (kd + 1.0);
        if (term == 0.0) {
            out.converged = true;
            break;
        }
        sum.add(term);
        const double t = std::abs(term);
        out.magnitude += t;
        const double next_ratio = std::abs((a + kd + 1.0) / (b + kd + 1.0) * z / (kd + 2.0));
        if (t <= kEps * std::abs(sum.value()) && next_ratio < 1.0) {
            if (++quiet >= 2) {
                out.converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    out.sum = sum.value();
    return out;
}

// Sum of an asymptotic series with term ratio f(s); stops at the smallest term.
template <class Ratio>
std::optional<Complex> asymptotic_series(Ratio ratio, int max_terms) {
    CompensatedSum sum;
    sum.add(1.0);
    Complex term = 1.0;
    double previous = 1.0;
    double largest = 1.0;
    bool shrinking = false;
    // A (near-)terminating series can shrink after huge terms; reject it when cancellation is severe.
    auto accept = [&]() -> std::optional<Complex> {
        if (largest > kMaxCondition * std::abs(sum.value())) return std::nullopt;
        return sum.value();
    };
    for (int s = 0; s < max_terms; ++s) {
        term *= ratio(s);
        if (term == 0.0) return accept();
        const double t = std::abs(term);
        if (t > previous && shrinking) return std::nullopt;  // passed the smallest term
        if (t < previous) shrinking = true;
        if (!std::isfinite(t)) return std::nullopt;
        sum.add(term);
        largest = std::max(largest, t);
        if (t <= kEps * std::abs(sum.value())) return accept();
        previous = t;
    }
    return std::nullopt;
}

std::optional<Complex> kummer_asymptotic(Complex a, Complex b, Complex z, int max_terms) {
    const Complex log_z = std::log(z);
    const double side = z.imag() >= 0.0 ? 1.0 : -1.0;
    const Complex lg_b = log_gamma(b);
    const Complex i(0.0, 1.0);

    Complex first = 0.0;
    if (!is_nonpositive_integer(b - a)) {
        const auto s1 = asymptotic_series(
            [&](int s) { return (a + double(s)) * (a - b + 1.0 + double(s)) / (double(s) + 1.0) * (-1.0 / z); },
            max_terms);
        if (!s1) return std::nullopt;
        first = std::exp(lg_b - log_gamma(b - a) + side * i * kPi * a - a * log_z) * *s1;
    }
    Complex second = 0.0;
    if (!is_nonpositive_integer(a)) {
        const auto s2 = asymptotic_series(
            [&](int s) { return (1.0 - a + double(s)) * (b - a + double(s)) / (double(s) + 1.0) / z; },
            max_terms);
        if (!s2) return std::nullopt;
        second = std::exp(lg_b - log_gamma(a) + z + (a - b) * log_z) * *s2;
    }
    const Complex total = first + second;
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag())) return std::nullopt;
    if (std::max(std::abs(first), std::abs(second)) > kMaxCondition * std::abs(total)) return std::nullopt;
    return total;
}

struct TaylorStep {
    Complex value;
    Complex derivative;
    double condition;
    bool converged;
};

// One step of the Taylor expansion of the Kummer ODE about zk with increment w.
TaylorStep taylor_step(Complex a, Complex b, Complex zk, Complex m0, Complex m1, Complex w, int max_terms) {
    Complex c_prev = m0;  // c_j
    Complex c_curr = m1;  // c_{j+1}
    CompensatedSum value;
    CompensatedSum deriv;
    value.add(m0);
    value.add(m1 * w);
    deriv.add(m1);
    double magnitude = std::abs(m0) + std::abs(m1 * w);
    Complex w_pow = w;  // w^{j+1}
    int quiet = 0;
    for (int j = 0; j < max_terms; ++j) {
        const double jd = j;
        const Complex c_next =
            ((jd + a) * c_prev - (jd + 1.0) * (jd + b - zk) * c_curr) / (zk * (jd + 2.0) * (jd + 1.0));
        const Complex dterm = (jd + 2.0) * c_next * w_pow;
        w_pow *= w;
        const Complex term = c_next * w_pow;
        value.add(term);
        deriv.add(dterm);
        magnitude += std::abs(term);
        const double scale = std::abs(value.value()) + std::abs(w) * std::abs(deriv.value());
        if (std::abs(term) <= kEps * scale && std::abs(dterm * w) <= kEps * scale) {
            if (++quiet >= 3) {
                const double v = std::abs(value.value());
                return {value.value(), deriv.value(), v > 0.0 ? magnitude / v : std::numeric_limits<double>::infinity(),
                        true};
            }
        } else {
            quiet = 0;
        }
        c_prev = c_curr;
        c_curr = c_next;
    }
    return {value.value(), deriv.value(), std::numeric_limits<double>::infinity(), false};
}

Complex kummer_continuation(Complex a, Complex b, Complex z, const KummerOptions& opts, Complex fallback) {
    const double target = std::abs(z);
    const Complex dir = z / target;
    double radius = std::min(1.0, target);
    Complex zk = dir * radius;
    const SeriesResult m0 = maclaurin(a, b, zk, opts.max_terms);
    const SeriesResult m1 = maclaurin(a + 1.0, b + 1.0, zk, opts.max_terms);
    if (!m0.converged || !m1.converged)
        throw AccuracyError("kummer_m: start-up series did not converge", fallback);
    Complex value = m0.sum;
    Complex deriv = a / b * m1.sum;

    const double min_step = 1.0e-3;
    const long max_steps = 4 * static_cast<long>(target) + 1000;
    long steps = 0;
    while (radius < target) {
        if (++steps > max_steps) throw AccuracyError("kummer_m: continuation step budget exhausted", value);
        double h = std::min({2.0, 0.5 * radius, target - radius});
        for (;;) {
            const bool last = radius + h >= target;
            const Complex w = last ? z - zk : dir * h;
            const TaylorStep step = taylor_step(a, b, zk, value, deriv, w, opts.max_terms);
            if ((step.converged && step.condition <= kMaxCondition) || h <= min_step) {
                if (!step.converged) throw AccuracyError("kummer_m: continuation step did not converge", value);
                value = step.value;
                deriv = step.derivative;
                radius = last ? target : radius + h;
                zk = last ? z : dir * radius;
                break;
            }
            h *= 0.5;
        }
    }
    return value;
}

void check_kummer_args(Complex b, Complex z, const KummerOptions& opts) {
    if (is_nonpositive_integer(b))
        throw Error(ErrorCode::domain, "kummer_m: b = " + std::to_string(b.real()) + " is a non-positive integer");
    if (!(std::abs(z) <= opts.max_abs_z))
        throw Error(ErrorCode::domain, "kummer_m: |z| outside the evaluation range");
}

// Lanczos, g = 7, nine coefficients; valid for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    static constexpr double g = 7.0;
    static constexpr double p[] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                   771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                   -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
    const Complex t = z + g + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|; branch is irrelevant to callers.
Complex log_sin_pi(Complex z) {
    const double x = z.real() - 2.0 * std::round(z.real() / 2.0);
    const double y = z.imag();
    if (std::abs(y) < 1.0) return std::log(std::sin(kPi * Complex(x, y)));
    if (y < 0.0) return std::conj(log_sin_pi(Complex(x, -y)));
    const Complex i(0.0, 1.0);
    const Complex zz(x, y);
    return -i * kPi * zz + std::log(Complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * kPi * zz));
}

Complex principal(Complex w) {
    double im = std::remainder(w.imag(), 2.0 * kPi);
    if (im <= -kPi) im += 2.0 * kPi;
    return {w.real(), im};
}

double legendre_nonnegative(int l, int m, double x) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double pmm = 1.0;
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

}  // namespace

Complex kummer_m_series(Complex a, Complex b, Complex z, int max_terms) {
    if (is_nonpositive_integer(b))
        throw Error(ErrorCode::domain, "kummer_m: b is a non-positive integer");
    const SeriesResult s = maclaurin(a, b, z, max_terms);
    if (!s.converged) throw AccuracyError("kummer_m: series did not converge within max terms", s.sum);
    return s.sum;
}

Complex kummer_m(Complex a, Complex b, Complex z, const KummerOptions& opts) {
    check_kummer_args(b, z, opts);
    if (z == 0.0) return 1.0;
    const double az = std::abs(z);
    Complex estimate = std::numeric_limits<double>::quiet_NaN();
    if (az <= opts.z_switch || az <= 1.0) {
        const SeriesResult s = maclaurin(a, b, z, opts.max_terms);
        estimate = s.sum;
        if (s.converged && (s.condition() <= kMaxCondition || az <= 1.0)) return s.sum;
        if (z.real() < 0.0) {
            // M(a, b, z) = e^z M(b - a, b, -z)
            const SeriesResult t = maclaurin(b - a, b, -z, opts.max_terms);
            if (t.converged && t.condition() <= kMaxCondition) return std::exp(z) * t.sum;
        }
    } else if (auto asym = kummer_asymptotic(a, b, z, opts.max_terms)) {
        return *asym;
    }
    return kummer_continuation(a, b, z, opts, estimate);
}

Complex kummer_m_prime(Complex a, Complex b, Complex z, const KummerOptions& opts) {
    check_kummer_args(b, z, opts);
    return a / b * kummer_m(a + 1.0, b + 1.0, z, opts);
}

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw Error(ErrorCode::domain, "log_gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() >= 0.5) return principal(lanczos_log_gamma(z));
    return principal(std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z));
}

double log_gamma(double x) { return log_gamma(Complex(x, 0.0)).real(); }

double spherical_bessel_j(int l, double x) {
    if (l < 0) throw Error(ErrorCode::invalid_argument, "spherical_bessel_j: l must be >= 0");
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "spherical_bessel_j: x must be >= 0");
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;

    // Alternating series with monotonically shrinking terms when x^2 < 2(2l+3).
    if (x * x < 2.0 * (2.0 * l + 3.0)) {
        double lead = 1.0;
        for (int k = 1; k <= l; ++k) lead *= x / (2.0 * k + 1.0);
        const double y = -0.5 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
            sum += term;
            if (std::abs(term) <= kEps * std::abs(sum)) break;
        }
        return lead * sum;
    }

    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    if (l == 0) return j0;
    if (l == 1) return j1;

    if (x >= l) {
        double jm = j0;
        double jc = j1;
        for (int k = 1; k < l; ++k) {
            const double jn = (2.0 * k + 1.0) / x * jc - jm;
            jm = jc;
            jc = jn;
        }
        return jc;
    }

    // Miller's downward recurrence, normalized against whichever of j0, j1 is larger.
    const int start = l + static_cast<int>(std::sqrt(40.0 * l)) + 20 + static_cast<int>(x);
    double jp = 0.0;
    double jc = 1.0e-300;
    double at_l = 0.0;
    double at_0 = 0.0;
    double at_1 = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm = (2.0 * k + 1.0) / x * jc - jp;
        jp = jc;
        jc = jm;
        if (std::abs(jc) > 1.0e250) {
            jc *= 1.0e-250;
            jp *= 1.0e-250;
            at_l *= 1.0e-250;
            at_1 *= 1.0e-250;
        }
        if (k - 1 == l) at_l = jc;
        if (k - 1 == 1) at_1 = jc;
        if (k - 1 == 0) at_0 = jc;
    }
    return std::abs(j0) >= std::abs(j1) ? at_l * (j0 / at_0) : at_l * (j1 / at_1);
}

LegendreOrder::LegendreOrder(int l, int m) : l_(l), m_(m) {
    if (l < 0 || std::abs(m) > l)
        throw Error(ErrorCode::invalid_argument,
                    "LegendreOrder: need l >= 0 and |m| <= l (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
}

double assoc_legendre(const LegendreOrder& order, double x) {
    if (!(std::abs(x) <= 1.0)) throw Error(ErrorCode::domain, "assoc_legendre: |x| > 1");
    const int l = order.l();
    const int m = std::abs(order.m());
    double value = legendre_nonnegative(l, m, x);
    if (order.m() < 0) {
        double ratio = 1.0;
        for (int k = l - m + 1; k <= l + m; ++k) ratio /= k;
        value *= (m % 2 == 0 ? 1.0 : -1.0) * ratio;
    }
    if (!std::isfinite(value)) throw Error(ErrorCode::overflow, "assoc_legendre: result overflows binary64");
    return value;
}

double assoc_legendre_at_zero(const LegendreOrder& order) {
    const int l = order.l();
    const int m = order.m();
    if ((l + m) % 2 != 0) return 0.0;
    const int half = (l + m) / 2;
    const int j = (l - m) / 2;
    // (l+m-1)!! = (2 half - 1)!!, (l-m)!! = 2^j j!
    const double log_value = log_odd_double_factorial(half) - (j * std::log(2.0) + log_gamma(j + 1.0));
    const double value = std::exp(log_value);
    if (!std::isfinite(value)) throw Error(ErrorCode::overflow, "assoc_legendre_at_zero: result overflows binary64");
    return half % 2 == 0 ? value : -value;
}

std::uint64_t double_factorial(int k) {
    if (k < -1) throw Error(ErrorCode::domain, "double_factorial: k must be >= -1");
    if (k > 33) throw Error(ErrorCode::overflow, "double_factorial: " + std::to_string(k) + "!! exceeds 64 bits");
    std::uint64_t value = 1;
    for (int i = k; i > 1; i -= 2) value *= static_cast<std::uint64_t>(i);
    return value;
}

double log_odd_double_factorial(int k) {
    if (k < 0) throw Error(ErrorCode::domain, "log_odd_double_factorial: k must be >= 0");
    // (2k-1)!! = (2k)! / (2^k k!)
    return log_gamma(2.0 * k + 1.0) - k * std::log(2.0) - log_gamma(k + 1.0);
}

}  // namespace bohrwave::specfun
