#pragma once

#include <cmath>

#include "tsfem/tensor.hpp"

namespace tsfem {

/// First-order forward-mode number in three variables.
struct Dual1 {
  double v = 0.0;
  Vec3 g = Vec3::Zero();

  Dual1() = default;
  Dual1(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual1(double value, const Vec3& grad) : v(value), g(grad) {}
};

inline Dual1 operator+(const Dual1& a, const Dual1& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual1 operator-(const Dual1& a, const Dual1& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual1 operator-(const Dual1& a) { return {-a.v, -a.g}; }
inline Dual1 operator*(const Dual1& a, const Dual1& b) { return {a.v * b.v, a.g * b.v + a.v * b.g}; }
inline Dual1& operator+=(Dual1& a, const Dual1& b) { return a = a + b; }

/// Second-order forward-mode number: value, gradient and Hessian with
/// respect to three ambient coordinates.
struct Dual2 {
  double v = 0.0;
  Vec3 g = Vec3::Zero();
  Mat3 h = Mat3::Zero();

  Dual2() = default;
  Dual2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual2(double value, const Vec3& grad, const Mat3& hess) : v(value), g(grad), h(hess) {}

  /// Independent variable x_i.
  static Dual2 variable(double value, int i) {
    Dual2 d(value);
    d.g[i] = 1.0;
    return d;
  }

  /// Partial derivative d/dx_k as a first-order number.
  Dual1 partial(int k) const { return {g[k], h.row(k).transpose()}; }
  Dual1 first_order() const { return {v, g}; }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.g, -a.h}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  return {a.v * b.v, a.g * b.v + a.v * b.g,
          a.h * b.v + a.v * b.h + a.g * b.g.transpose() + b.g * a.g.transpose()};
}
inline Dual2& operator+=(Dual2& a, const Dual2& b) { return a = a + b; }
inline Dual2& operator-=(Dual2& a, const Dual2& b) { return a = a - b; }
inline Dual2& operator*=(Dual2& a, const Dual2& b) { return a = a * b; }

/// f(a) given f, f', f'' at a.v.
inline Dual2 chain(const Dual2& a, double f0, double f1, double f2) {
  return {f0, f1 * a.g, f1 * a.h + f2 * a.g * a.g.transpose()};
}

inline Dual2 inverse(const Dual2& a) {
  const double r = 1.0 / a.v;
  return chain(a, r, -r * r, 2.0 * r * r * r);
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * inverse(b); }

inline Dual2 sqrt(const Dual2& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Dual2 pow(const Dual2& a, int p) {
  if (p == 0) return Dual2(1.0);
  const double f1 = p * std::pow(a.v, p - 1);
  const double f2 = p == 1 ? 0.0 : p * (p - 1) * std::pow(a.v, p - 2);
  return chain(a, std::pow(a.v, p), f1, f2);
}

}  // namespace tsfem
