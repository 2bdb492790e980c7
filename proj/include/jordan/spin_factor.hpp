#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "jordan/types.hpp"

// Backend for the spin factor R + R^n:
//   (s, v) o (t, w) = (st + <v, w>, s w + t v),
// with two-point spectrum s -/+ |v|. Coordinates are [s, v1..vn].
namespace jordan::spin {

/// Euclidean length of v: max-abs scaling pass, then a Kahan-compensated
/// sum of squares.
inline double vector_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double r = x / m;
    const double y = r * r - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return m * std::sqrt(sum);
}

/// |v| at or below this is treated as the zero vector.
inline constexpr double kZeroVector = 1e-300;

inline std::vector<double> product(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size() - 1;
  std::vector<double> out(n + 1);
  double dot = 0.0;
  for (std::size_t i = 1; i <= n; ++i) dot += x[i] * y[i];
  out[0] = x[0] * y[0] + dot;
  for (std::size_t i = 1; i <= n; ++i) out[i] = x[0] * y[i] + y[0] * x[i];
  return out;
}

/// Eigenvalues with multiplicity (always two), ascending.
inline std::vector<double> eigenvalues(std::span<const double> x) {
  const double r = vector_norm(x.subspan(1));
  return {x[0] - r, x[0] + r};
}

inline Spectrum spin_spectrum(const Element& x) {
  const double r = vector_norm(x.coords().subspan(1));
  if (r <= kZeroVector) return Spectrum{{x[0]}, {2}};
  return Spectrum{{x[0] - r, x[0] + r}, {1, 1}};
}

inline Element spin_apply(const ScalarFunction& f, const Element& x) {
  const auto c = x.coords();
  const std::size_t n = c.size() - 1;
  const double r = vector_norm(c.subspan(1));
  std::vector<double> out(n + 1, 0.0);
  if (r <= kZeroVector) {
    out[0] = f(f.admit(c[0], std::abs(c[0])));
    return Element(x.algebra(), std::move(out));
  }
  const double scale = std::abs(c[0]) + r;
  const double fm = f(f.admit(c[0] - r, scale));
  const double fp = f(f.admit(c[0] + r, scale));
  out[0] = 0.5 * (fp + fm);
  const double k = (fp - fm) / (2.0 * r);
  for (std::size_t i = 1; i <= n; ++i) out[i] = k * c[i];
  return Element(x.algebra(), std::move(out));
}

}  // namespace jordan::spin
