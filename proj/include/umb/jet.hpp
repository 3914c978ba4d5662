#pragma once

// Second-order forward-mode differentiation.
//
// A Jet carries a value together with its gradient and Hessian with respect to
// up to kMaxVars seed variables. Catalog maps and metrics are written once as
// generic lambdas and evaluated either on double or on Jet, which yields exact
// Jacobians and Hessians without finite differences.

#include <algorithm>
#include <array>
#include <cmath>

namespace umb {

inline constexpr int kMaxVars = 6;

struct Jet {
  double v = 0.0;
  int n = 0;  // number of active variables; 0 means a constant
  std::array<double, kMaxVars> g{};
  std::array<double, kMaxVars * kMaxVars> h{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: implicit on purpose, constants mix freely

  static Jet variable(double value, int index, int nvars) {
    Jet j(value);
    j.n = nvars;
    j.g[index] = 1.0;
    return j;
  }

  double grad(int i) const { return g[i]; }
  double hess(int i, int j) const { return h[i * kMaxVars + j]; }
};

namespace detail {

// f(a) given f(a.v), f'(a.v), f''(a.v).
inline Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r(f0);
  r.n = a.n;
  for (int i = 0; i < a.n; ++i) r.g[i] = f1 * a.g[i];
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      r.h[i * kMaxVars + j] = f1 * a.h[i * kMaxVars + j] + f2 * a.g[i] * a.g[j];
  return r;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r(a.v + b.v);
  r.n = std::max(a.n, b.n);
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r.h[i * kMaxVars + j] = a.h[i * kMaxVars + j] + b.h[i * kMaxVars + j];
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(-a.v);
  r.n = a.n;
  for (int i = 0; i < r.n; ++i) r.g[i] = -a.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r.h[i * kMaxVars + j] = -a.h[i * kMaxVars + j];
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.v * b.v);
  r.n = std::max(a.n, b.n);
  for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) {
      const int k = i * kMaxVars + j;
      r.h[k] = a.h[k] * b.v + a.v * b.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
    }
  return r;
}

inline Jet operator*(double s, const Jet& a) {
  Jet r(s * a.v);
  r.n = a.n;
  for (int i = 0; i < r.n; ++i) r.g[i] = s * a.g[i];
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) r.h[i * kMaxVars + j] = s * a.h[i * kMaxVars + j];
  return r;
}
inline Jet operator*(const Jet& a, double s) { return s * a; }

inline Jet reciprocal(const Jet& a) {
  const double inv = 1.0 / a.v;
  return detail::chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) {
  if (b.n == 0) return (1.0 / b.v) * a;
  return a * reciprocal(b);
}

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }
inline Jet& operator/=(Jet& a, const Jet& b) { return a = a / b; }

inline Jet sin(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, s, c, -s);
}
inline Jet cos(const Jet& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::chain(a, c, -s, -c);
}
inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e, e);
}
inline Jet log(const Jet& a) {
  const double inv = 1.0 / a.v;
  return detail::chain(a, std::log(a.v), inv, -inv * inv);
}
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet cosh(const Jet& a) {
  const double c = std::cosh(a.v), s = std::sinh(a.v);
  return detail::chain(a, c, s, c);
}
inline Jet sinh(const Jet& a) {
  const double c = std::cosh(a.v), s = std::sinh(a.v);
  return detail::chain(a, s, c, s);
}
inline Jet pow(const Jet& a, double p) {
  if (p == 0.0) return Jet(1.0);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  const double f0 = std::pow(a.v, p);
  const double f1 = p * std::pow(a.v, p - 1.0);
  const double f2 = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return detail::chain(a, f0, f1, f2);
}
inline Jet pow(const Jet& a, const Jet& b) {
  if (b.n == 0) return pow(a, b.v);
  return exp(b * log(a));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

}  // namespace umb
