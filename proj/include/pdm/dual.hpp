#pragma once

// Forward-mode dual numbers with a fixed four-slot tangent, one slot per
// phase-space coordinate (r, phi, p_r, p_phi). Dual<Dual<double>> carries
// second derivatives and is used to differentiate Poisson brackets.

#include <array>
#include <cmath>
#include <cstddef>

namespace pdm {

inline constexpr std::size_t kPhaseDim = 4;

template <class T>
struct Dual {
  T v{};
  std::array<T, kPhaseDim> d{};

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT: implicit promotion of constants
  Dual(const T& value, const std::array<T, kPhaseDim>& tangent) : v(value), d(tangent) {}

  static Dual variable(const T& value, std::size_t slot) {
    Dual x(value, {});
    x.d[slot] = T(1.0);
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < kPhaseDim; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < kPhaseDim; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < kPhaseDim; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T inv = T(1.0) / o.v;
    v *= inv;
    for (std::size_t i = 0; i < kPhaseDim; ++i) d[i] = (d[i] - v * o.d[i]) * inv;
    return *this;
  }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <class T> Dual<T> operator+(Dual<T> a, double b) { a.v += b; return a; }
template <class T> Dual<T> operator+(double a, Dual<T> b) { b.v += a; return b; }
template <class T> Dual<T> operator-(Dual<T> a, double b) { a.v -= b; return a; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T> Dual<T> operator*(Dual<T> a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
template <class T> Dual<T> operator*(double a, Dual<T> b) { return b * a; }
template <class T> Dual<T> operator/(Dual<T> a, double b) { return a * (1.0 / b); }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T> Dual<T> operator-(Dual<T> a) {
  a.v = -a.v;
  for (auto& x : a.d) x = -x;
  return a;
}

// Chain rule: f(a) with f'(a.v) = slope.
template <class T>
Dual<T> chain(const Dual<T>& a, const T& value, const T& slope) {
  Dual<T> out(value, {});
  for (std::size_t i = 0; i < kPhaseDim; ++i) out.d[i] = slope * a.d[i];
  return out;
}

template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::cos, std::sin;
  return chain(a, T(sin(a.v)), T(cos(a.v)));
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::cos, std::sin;
  return chain(a, T(cos(a.v)), T(-sin(a.v)));
}
template <class T> Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.v);
  return chain(a, s, T(0.5 / s));
}
template <class T> Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  const T e = exp(a.v);
  return chain(a, e, e);
}
template <class T> Dual<T> log(const Dual<T>& a) {
  using std::log;
  return chain(a, T(log(a.v)), T(1.0 / a.v));
}
// Real exponent; base must be positive unless the exponent is an integer.
template <class T> Dual<T> pow(const Dual<T>& a, double e) {
  using std::pow;
  if (e == 0.0) return Dual<T>(1.0);
  return chain(a, T(pow(a.v, e)), T(e * pow(a.v, e - 1.0)));
}

// Innermost real value of a (possibly nested) dual.
inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;

}  // namespace pdm
