#pragma once

#include <array>
#include <cmath>

namespace jordan {

/// Real octonion in the Cayley-Dickson basis e0..e7, built as a pair of
/// quaternions (e0..e3, e4..e7).
struct Octonion {
  std::array<double, 8> c{};

  static Octonion unit() {
    Octonion o;
    o.c[0] = 1.0;
    return o;
  }
  static Octonion basis(int k) {
    Octonion o;
    o.c[static_cast<std::size_t>(k)] = 1.0;
    return o;
  }

  double real() const { return c[0]; }

  /// n(x) = sum of squared coordinates.
  double norm() const {
    double s = 0.0;
    for (double v : c) s += v * v;
    return s;
  }

  Octonion conj() const {
    Octonion o = *this;
    for (std::size_t i = 1; i < 8; ++i) o.c[i] = -o.c[i];
    return o;
  }

  Octonion& operator+=(const Octonion& o) {
    for (std::size_t i = 0; i < 8; ++i) c[i] += o.c[i];
    return *this;
  }
  Octonion& operator-=(const Octonion& o) {
    for (std::size_t i = 0; i < 8; ++i) c[i] -= o.c[i];
    return *this;
  }
  Octonion& operator*=(double s) {
    for (double& v : c) v *= s;
    return *this;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(double s, Octonion a) { return a *= s; }
  friend bool operator==(const Octonion&, const Octonion&) = default;
};

namespace detail {

using Quat = std::array<double, 4>;

inline Quat qmul(const Quat& p, const Quat& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

inline Quat qconj(const Quat& p) { return {p[0], -p[1], -p[2], -p[3]}; }

}  // namespace detail

/// Cayley-Dickson product (a, b)(c, d) = (ac - d*b, da + bc*).
inline Octonion oct_mul(const Octonion& x, const Octonion& y) {
  using detail::qconj;
  using detail::qmul;
  const detail::Quat a{x.c[0], x.c[1], x.c[2], x.c[3]};
  const detail::Quat b{x.c[4], x.c[5], x.c[6], x.c[7]};
  const detail::Quat c{y.c[0], y.c[1], y.c[2], y.c[3]};
  const detail::Quat d{y.c[4], y.c[5], y.c[6], y.c[7]};
  const auto ac = qmul(a, c);
  const auto db = qmul(qconj(d), b);
  const auto da = qmul(d, a);
  const auto bc = qmul(b, qconj(c));
  Octonion o;
  for (std::size_t i = 0; i < 4; ++i) {
    o.c[i] = ac[i] - db[i];
    o.c[i + 4] = da[i] + bc[i];
  }
  return o;
}

inline Octonion operator*(const Octonion& x, const Octonion& y) { return oct_mul(x, y); }

}  // namespace jordan
