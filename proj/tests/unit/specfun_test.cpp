#include <doctest.h>

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "specfun.hpp"

using namespace bohrwave;
using namespace bohrwave::specfun;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("kummer_m elementary closed forms") {
    // M(a, a, z) = e^z
    for (double x : {-20.0, -1.0, 0.5, 3.0, 25.0}) {
        const Complex z(x, 0.3 * x);
        CHECK(rel(kummer_m({1.7, 0.2}, {1.7, 0.2}, z), std::exp(z)) < 1e-13);
    }
    // M(1, 2, z) = (e^z - 1)/z
    for (Complex z : {Complex(0.25, 0.0), Complex(-3.0, 1.0), Complex(0.0, 80.0), Complex(12.0, -5.0)})
        CHECK(rel(kummer_m(1.0, 2.0, z), (std::exp(z) - 1.0) / z) < 1e-12);
    CHECK(kummer_m(2.0, 3.0, 0.0) == Complex(1.0, 0.0));
}

TEST_CASE("kummer_m terminates for non-positive integer a") {
    // M(-2, b, z) = 1 - 2z/b + z^2/(b(b+1))
    const Complex b(1.5, 0.0), z(4.0, -2.0);
    const Complex want = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
    CHECK(rel(kummer_m(-2.0, b, z), want) < 1e-14);
}

TEST_CASE("kummer_m satisfies Kummer's transformation") {
    const Complex a(2.3, -0.4), b(5.1, 0.0);
    for (Complex z : {Complex(0.0, -30.0), Complex(-45.0, 10.0), Complex(0.0, -300.0)}) {
        const Complex lhs = kummer_m(a, b, z);
        const Complex rhs = std::exp(z) * kummer_m(b - a, b, -z);
        CHECK(rel(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("kummer_m rejects poles and out-of-range arguments") {
    CHECK_THROWS_AS(kummer_m(1.0, -2.0, 1.0), Error);
    CHECK_THROWS_AS(kummer_m(1.0, 2.0, Complex(2e6, 0.0)), Error);
    try {
        kummer_m(1.0, 0.0, 1.0);
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain);
    }
}

TEST_CASE("kummer_m_prime matches a central difference") {
    const Complex a(1.2, -0.3), b(3.4, 0.0), z(0.0, -7.0);
    const double h = 1e-5;
    const Complex fd = (kummer_m(a, b, z + h) - kummer_m(a, b, z - h)) / (2.0 * h);
    CHECK(rel(kummer_m_prime(a, b, z), fd) < 1e-8);
}

TEST_CASE("log_gamma") {
    CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-15);
    CHECK(std::abs(log_gamma(Complex(5.0, 0.0)) - std::log(24.0)) < 1e-14);
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-15));
    // recurrence log Gamma(z + 1) = log Gamma(z) + log z, modulo 2 pi i
    const Complex z(0.3, 2.7);
    const Complex d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    CHECK(std::abs(d.real()) < 1e-13);
    CHECK(std::abs(std::remainder(d.imag(), 2.0 * kPi)) < 1e-13);
    // reflection |Gamma(1/2 + iy)|^2 = pi/cosh(pi y)
    for (double y : {0.1, 3.0, 20.0}) {
        const double lhs = 2.0 * log_gamma(Complex(0.5, y)).real();
        CHECK(lhs == doctest::Approx(std::log(kPi / std::cosh(kPi * y))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(log_gamma(Complex(-3.0, 0.0)), Error);
    CHECK(log_gamma(Complex(-2.5, 1e-3)).imag() <= kPi);
}

TEST_CASE("spherical_bessel_j low orders") {
    for (double x : {0.01, 0.7, 5.0, 42.0}) {
        CHECK(spherical_bessel_j(0, x) == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
        CHECK(spherical_bessel_j(1, x) == doctest::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-11));
    }
    CHECK(spherical_bessel_j(0, 0.0) == 1.0);
    CHECK(spherical_bessel_j(3, 0.0) == 0.0);
}

TEST_CASE("assoc_legendre conventions") {
    CHECK(assoc_legendre(LegendreOrder(1, 1), 0.0) == doctest::Approx(-1.0));
    CHECK(assoc_legendre(LegendreOrder(2, 0), 0.5) == doctest::Approx(-0.125));
    CHECK(assoc_legendre(LegendreOrder(2, -1), 0.5) ==
          doctest::Approx(-assoc_legendre(LegendreOrder(2, 1), 0.5) / 6.0));
    CHECK(assoc_legendre_at_zero(LegendreOrder(3, 2)) == 0.0);
    CHECK(assoc_legendre_at_zero(LegendreOrder(4, 2)) == doctest::Approx(assoc_legendre(LegendreOrder(4, 2), 0.0)));
    CHECK_THROWS_AS(LegendreOrder(2, 3), Error);
    CHECK_THROWS_AS(assoc_legendre(LegendreOrder(2, 1), 1.5), Error);
}

TEST_CASE("double factorials") {
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(10) == 3840);
    CHECK_THROWS_AS(double_factorial(-2), Error);
    CHECK_THROWS_AS(double_factorial(40), Error);
    CHECK(log_odd_double_factorial(4) == doctest::Approx(std::log(105.0)));
    CHECK(std::isfinite(log_odd_double_factorial(500)));
}
