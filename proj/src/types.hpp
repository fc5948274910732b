#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace bohrwave {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

/// Point in spherical coordinates (r, theta, phi); theta is the polar angle.
struct SphericalPoint {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Lab time plus spherical position, natural units.
struct SpacetimePoint {
    double t = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

}  // namespace bohrwave
