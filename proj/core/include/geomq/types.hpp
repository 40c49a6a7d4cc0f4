#ifndef GEOMQ_TYPES_HPP
#define GEOMQ_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace geomq {

/// A point p(X1, X2, X3) of the coordinate neighborhood.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  /// Coordinate by 1-based axis index.
  double coord(int axis) const { return axis == 1 ? x1 : axis == 2 ? x2 : x3; }

  Point shifted(int axis, double delta) const {
    Point p = *this;
    (axis == 1 ? p.x1 : axis == 2 ? p.x2 : p.x3) += delta;
    return p;
  }

  bool finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
  }
};

/// Tangent vector components in the coordinate basis of T_pM.
struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double a, double b, double d) : c{a, b, d} {}

  double operator[](std::size_t i) const { return c[i]; }
  double& operator[](std::size_t i) { return c[i]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  }
  friend Vec3 operator*(double s, const Vec3& v) {
    return {s * v[0], s * v[1], s * v[2]};
  }
  friend Vec3 operator-(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

  double max_abs() const {
    return std::max({std::fabs(c[0]), std::fabs(c[1]), std::fabs(c[2])});
  }
};

using TangentVec = Vec3;

/// Small fixed-size 3x3 matrix; enough for the metric and its inverse.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }

  Vec3 apply(const Vec3& v) const {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i)
      r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
  }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }
};

/// Axis-aligned sample box [lo1,hi1] x [lo2,hi2] x [lo3,hi3].
struct Box {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{0.0, 0.0, 0.0};
};

}  // namespace geomq

#endif  // GEOMQ_TYPES_HPP
