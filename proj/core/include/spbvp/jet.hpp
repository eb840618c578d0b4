#pragma once

#include <array>
#include <cmath>

namespace spbvp {

// Truncated Taylor expansion of order 3 about a point: c[k] = f^(k)(t) / k!.
// Arithmetic follows the truncated series product and chain rules.
struct Jet3 {
  std::array<double, 4> c{};

  static constexpr Jet3 constant(double v) { return Jet3{{v, 0.0, 0.0, 0.0}}; }
  static constexpr Jet3 variable(double t) { return Jet3{{t, 1.0, 0.0, 0.0}}; }

  constexpr double value() const { return c[0]; }

  // k-th derivative, i.e. c[k] * k!.
  constexpr double derivative(int order) const {
    constexpr std::array<double, 4> kFactorial{1.0, 1.0, 2.0, 6.0};
    return c[static_cast<std::size_t>(order)] * kFactorial[static_cast<std::size_t>(order)];
  }

  friend constexpr bool operator==(const Jet3&, const Jet3&) = default;
};

constexpr Jet3 operator-(const Jet3& x) { return Jet3{{-x.c[0], -x.c[1], -x.c[2], -x.c[3]}}; }

constexpr Jet3 operator+(const Jet3& x, const Jet3& y) {
  return Jet3{{x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]}};
}

constexpr Jet3 operator-(const Jet3& x, const Jet3& y) {
  return Jet3{{x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]}};
}

constexpr Jet3 operator*(const Jet3& x, const Jet3& y) {
  return Jet3{{x.c[0] * y.c[0], x.c[0] * y.c[1] + x.c[1] * y.c[0],
               x.c[0] * y.c[2] + x.c[1] * y.c[1] + x.c[2] * y.c[0],
               x.c[0] * y.c[3] + x.c[1] * y.c[2] + x.c[2] * y.c[1] + x.c[3] * y.c[0]}};
}

constexpr Jet3 operator*(double s, const Jet3& x) {
  return Jet3{{s * x.c[0], s * x.c[1], s * x.c[2], s * x.c[3]}};
}

// Caller guarantees y.c[0] != 0.
constexpr Jet3 operator/(const Jet3& x, const Jet3& y) {
  Jet3 q;
  q.c[0] = x.c[0] / y.c[0];
  q.c[1] = (x.c[1] - y.c[1] * q.c[0]) / y.c[0];
  q.c[2] = (x.c[2] - y.c[1] * q.c[1] - y.c[2] * q.c[0]) / y.c[0];
  q.c[3] = (x.c[3] - y.c[1] * q.c[2] - y.c[2] * q.c[1] - y.c[3] * q.c[0]) / y.c[0];
  return q;
}

inline Jet3 exp(const Jet3& x) {
  Jet3 e;
  e.c[0] = std::exp(x.c[0]);
  e.c[1] = x.c[1] * e.c[0];
  e.c[2] = (x.c[1] * e.c[1] + 2.0 * x.c[2] * e.c[0]) / 2.0;
  e.c[3] = (x.c[1] * e.c[2] + 2.0 * x.c[2] * e.c[1] + 3.0 * x.c[3] * e.c[0]) / 3.0;
  return e;
}

namespace detail {

// Coupled recurrences: s' = x' c, c' = -x' s.
inline void SinCos(const Jet3& x, Jet3& s, Jet3& co) {
  s.c[0] = std::sin(x.c[0]);
  co.c[0] = std::cos(x.c[0]);
  for (int k = 1; k <= 3; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * x.c[j] * co.c[k - j];
      cc += j * x.c[j] * s.c[k - j];
    }
    s.c[k] = ss / k;
    co.c[k] = -cc / k;
  }
}

}  // namespace detail

inline Jet3 sin(const Jet3& x) {
  Jet3 s, c;
  detail::SinCos(x, s, c);
  return s;
}

inline Jet3 cos(const Jet3& x) {
  Jet3 s, c;
  detail::SinCos(x, s, c);
  return c;
}

// Non-negative integer powers by repeated squaring.
constexpr Jet3 pow(Jet3 base, unsigned exponent) {
  Jet3 result = Jet3::constant(1.0);
  while (exponent != 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent != 0) base = base * base;
  }
  return result;
}

}  // namespace spbvp
