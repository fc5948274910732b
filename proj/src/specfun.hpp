#pragma once

#include <cstdint>

#include "types.hpp"

namespace bohrwave::specfun {

struct KummerOptions {
    /// Beyond this |z| the large-argument expansion is tried first.
    double z_switch = 60.0;
    /// Hard cap on terms for any single series.
    int max_terms = 2000;
    /// Arguments with |z| above this are rejected as out of range.
    double max_abs_z = 1.0e6;
};

/// Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).
///
/// Small, well-conditioned arguments use the Maclaurin series with compensated
/// summation. Large |z| uses the two-sided asymptotic expansion when it converges
/// to working precision; everything else is reached by Taylor-series analytic
/// continuation of the Kummer ODE along the ray from a well-conditioned start.
///
/// Throws Error(domain) when b is a non-positive integer or |z| is out of range,
/// and AccuracyError when no path reaches working precision.
Complex kummer_m(Complex a, Complex b, Complex z, const KummerOptions& opts = {});

/// dM/dz = (a/b) M(a+1, b+1, z).
Complex kummer_m_prime(Complex a, Complex b, Complex z, const KummerOptions& opts = {});

/// Maclaurin series only, no fallback. Used for cross-checks.
Complex kummer_m_series(Complex a, Complex b, Complex z, int max_terms = 20000);

/// Principal-branch log Gamma; the imaginary part lies in (-pi, pi].
/// Throws Error(domain) at the poles z = 0, -1, -2, ...
Complex log_gamma(Complex z);

double log_gamma(double x);

/// Spherical Bessel function of the first kind j_l(x), l >= 0, x >= 0.
double spherical_bessel_j(int l, double x);

class LegendreOrder {
public:
    /// Throws Error(invalid_argument) unless l >= 0 and |m| <= l.
    LegendreOrder(int l, int m);
    int l() const noexcept { return l_; }
    int m() const noexcept { return m_; }

private:
    int l_;
    int m_;
};

/// Associated Legendre function P_l^m(x) with the Condon-Shortley phase
/// (-1)^m, so P_1^1(x) = -sqrt(1 - x^2). Negative m uses
/// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m. Throws Error(domain) for |x| > 1.
double assoc_legendre(const LegendreOrder& order, double x);

/// P_l^m(0) from the closed form (-1)^((l+m)/2) (l+m-1)!!/(l-m)!!, zero for odd l+m.
double assoc_legendre_at_zero(const LegendreOrder& order);

/// k!! for k >= -1 with (-1)!! = 0!! = 1. Throws Error(domain) for k < -1 and
/// Error(overflow) once the result no longer fits in 64 bits (k > 33).
std::uint64_t double_factorial(int k);

/// log((2k-1)!!) for k >= 0, valid far beyond the integer range.
double log_odd_double_factorial(int k);

}  // namespace bohrwave::specfun
