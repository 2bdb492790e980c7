#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "jordan/octonion.hpp"
#include "jordan/types.hpp"

// Backend for the exceptional Albert algebra H3(O): 3x3 octonionic Hermitian
// matrices
//
//     [ a    x3   ~x2 ]
//     [ ~x3  b    x1  ]
//     [ x2   ~x1  c   ]
//
// (~ is octonion conjugation) with X o Y = (XY + YX) / 2 computed by formal
// matrix multiplication. Coordinates are [a, b, c, x1(8), x2(8), x3(8)].
namespace jordan::albert {

struct AlbertElement {
  double a = 0.0, b = 0.0, c = 0.0;
  Octonion x1, x2, x3;

  static AlbertElement from_coords(std::span<const double> k) {
    AlbertElement e;
    e.a = k[0];
    e.b = k[1];
    e.c = k[2];
    for (std::size_t i = 0; i < 8; ++i) {
      e.x1.c[i] = k[3 + i];
      e.x2.c[i] = k[11 + i];
      e.x3.c[i] = k[19 + i];
    }
    return e;
  }

  std::vector<double> coords() const {
    std::vector<double> k(27);
    k[0] = a;
    k[1] = b;
    k[2] = c;
    for (std::size_t i = 0; i < 8; ++i) {
      k[3 + i] = x1.c[i];
      k[11 + i] = x2.c[i];
      k[19 + i] = x3.c[i];
    }
    return k;
  }

  /// Matrix entry (i, j) in the Hermitian pattern above.
  Octonion entry(int i, int j) const {
    auto real = [](double v) {
      Octonion o;
      o.c[0] = v;
      return o;
    };
    switch (i * 3 + j) {
      case 0: return real(a);
      case 4: return real(b);
      case 8: return real(c);
      case 1: return x3;
      case 3: return x3.conj();
      case 5: return x1;
      case 7: return x1.conj();
      case 6: return x2;
      case 2: return x2.conj();
    }
    return {};
  }

  /// sqrt(tr(X o X)); bounds the spectral radius from above.
  double frobenius() const {
    return std::sqrt(a * a + b * b + c * c + 2.0 * (x1.norm() + x2.norm() + x3.norm()));
  }
};

namespace detail {

inline Octonion matmul_entry(const AlbertElement& x, const AlbertElement& y, int i, int j) {
  Octonion s;
  for (int k = 0; k < 3; ++k) s += oct_mul(x.entry(i, k), y.entry(k, j));
  return s;
}

inline double imag_size(const Octonion& o) {
  double m = 0.0;
  for (std::size_t i = 1; i < 8; ++i) m = std::max(m, std::abs(o.c[i]));
  return m;
}

}  // namespace detail

/// Jordan product; Hermitian by construction and exactly commutative.
inline AlbertElement product(const AlbertElement& x, const AlbertElement& y) {
  auto sym = [&](int i, int j) {
    Octonion m = detail::matmul_entry(x, y, i, j) + detail::matmul_entry(y, x, i, j);
    m *= 0.5;
    return m;
  };
  const Octonion d0 = sym(0, 0);
  const Octonion d1 = sym(1, 1);
  const Octonion d2 = sym(2, 2);
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (double v : x.entry(i, j).c) mx = std::max(mx, std::abs(v));
      for (double v : y.entry(i, j).c) my = std::max(my, std::abs(v));
    }
  }
  const double imag_tol = 1e-12 * (1.0 + 24.0 * mx * my);
  if (detail::imag_size(d0) > imag_tol || detail::imag_size(d1) > imag_tol ||
      detail::imag_size(d2) > imag_tol) {
    throw ConsistencyError("Albert product produced a non-real diagonal entry");
  }
  AlbertElement out;
  out.a = d0.real();
  out.b = d1.real();
  out.c = d2.real();
  out.x1 = sym(1, 2);
  out.x2 = sym(2, 0);
  out.x3 = sym(0, 1);
  return out;
}

inline std::vector<double> product(std::span<const double> x, std::span<const double> y) {
  return product(AlbertElement::from_coords(x), AlbertElement::from_coords(y)).coords();
}

/// Coefficients of the generic minimum polynomial
/// t^3 - T t^2 + S t - N.
struct CubicInvariants {
  double trace = 0.0;    // T
  double quadratic = 0.0;  // S
  double det = 0.0;      // N (Freudenthal determinant)
};

inline double re_triple(const Octonion& x, const Octonion& y, const Octonion& z) {
  return oct_mul(oct_mul(x, y), z).real();
}

inline CubicInvariants invariants(const AlbertElement& x) {
  CubicInvariants inv;
  inv.trace = x.a + x.b + x.c;
  inv.quadratic = x.a * x.b + x.b * x.c + x.c * x.a - x.x1.norm() - x.x2.norm() - x.x3.norm();
  inv.det = x.a * x.b * x.c + 2.0 * re_triple(x.x1, x.x2, x.x3) - x.a * x.x1.norm() -
            x.b * x.x2.norm() - x.c * x.x3.norm();
  return inv;
}

inline AlbertElement shifted(AlbertElement x, double mu) {
  x.a -= mu;
  x.b -= mu;
  x.c -= mu;
  return x;
}

/// Largest coordinate of x^3 - T x^2 + S x - N I, where powers are Jordan
/// powers.
inline double cayley_hamilton_residual(const AlbertElement& x, const CubicInvariants& inv) {
  const AlbertElement x2 = product(x, x);
  const AlbertElement x3 = product(x2, x);
  const auto k1 = x.coords();
  const auto k2 = x2.coords();
  const auto k3 = x3.coords();
  double worst = 0.0;
  for (std::size_t i = 0; i < 27; ++i) {
    double r = k3[i] - inv.trace * k2[i] + inv.quadratic * k1[i];
    if (i < 3) r -= inv.det;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

/// T, S, N with the Cayley-Hamilton self-check (residual <= 1e-9 scale).
inline CubicInvariants char_cubic(const AlbertElement& x) {
  const CubicInvariants inv = invariants(x);
  const double f = 1.0 + x.frobenius();
  const double residual = cayley_hamilton_residual(x, inv);
  if (residual > 1e-9 * f * f * f) {
    throw ConsistencyError("Albert Cayley-Hamilton residual " + std::to_string(residual) +
                           " exceeds tolerance");
  }
  return inv;
}

/// Three real roots of the characteristic cubic, ascending (Viete's
/// trigonometric method on the traceless part).
inline std::array<double, 3> eigenvalues(const AlbertElement& x) {
  const CubicInvariants inv = char_cubic(x);
  const double mean = inv.trace / 3.0;
  const AlbertElement y = shifted(x, mean);
  // For traceless y: S(y) = -tr(y o y) / 2 <= 0, computed without cancellation.
  const double half_sq = 0.5 * (y.a * y.a + y.b * y.b + y.c * y.c) + y.x1.norm() +
                         y.x2.norm() + y.x3.norm();
  const double m = std::sqrt(half_sq / 3.0);
  if (m == 0.0) return {mean, mean, mean};
  const double det_y = invariants(y).det;
  double arg = det_y / (2.0 * m * m * m);
  // Shifting by the mean costs about eps |mean| per diagonal entry, which
  // moves arg by a multiple of eps |mean| / m near a triple root.
  const double slack = 1e-9 + 1e3 * std::numeric_limits<double>::epsilon() * (std::abs(mean) + m) / m;
  if (std::abs(arg) > 1.0 + slack) {
    throw ConsistencyError("Albert characteristic cubic has a complex root pair");
  }
  arg = std::clamp(arg, -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  std::array<double, 3> r{mean + 2.0 * m * std::cos(phi),
                          mean + 2.0 * m * std::cos(phi - third),
                          mean + 2.0 * m * std::cos(phi + third)};
  std::sort(r.begin(), r.end());
  return r;
}

inline double spectral_radius(const std::array<double, 3>& ev) {
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

inline double cluster_tol(const std::array<double, 3>& ev) {
  return 1e-8 * (1.0 + spectral_radius(ev));
}

inline Spectrum albert_spectrum(const AlbertElement& x) {
  const auto ev = eigenvalues(x);
  return Spectrum::from_sorted(ev, cluster_tol(ev));
}

inline AlbertElement identity() {
  AlbertElement e;
  e.a = e.b = e.c = 1.0;
  return e;
}

inline AlbertElement combine(const AlbertElement& x, double s, const AlbertElement& y,
                             double t) {
  AlbertElement o;
  o.a = s * x.a + t * y.a;
  o.b = s * x.b + t * y.b;
  o.c = s * x.c + t * y.c;
  o.x1 = s * x.x1 + t * y.x1;
  o.x2 = s * x.x2 + t * y.x2;
  o.x3 = s * x.x3 + t * y.x3;
  return o;
}

/// f(x) as the Newton-form interpolant of f on the distinct eigenvalues.
///
/// Eigenvalues within 1e-8 (1 + |x|) collapse to one node. With three nodes
/// the isolated one goes first so that the divided difference over the
/// close pair multiplies (x - n0)(x - n1), which is small on that pair.
inline AlbertElement albert_apply(const ScalarFunction& f, const AlbertElement& x) {
  const auto ev = eigenvalues(x);
  const double radius = spectral_radius(ev);
  std::array<double, 3> admitted{};
  for (std::size_t i = 0; i < 3; ++i) admitted[i] = f.admit(ev[i], radius);
  const Spectrum sp = Spectrum::from_sorted(ev, cluster_tol(ev));
  std::vector<double> nodes = sp.values;
  for (double& n : nodes) n = f.admit(n, radius);

  if (nodes.size() == 3 && nodes[2] - nodes[1] > nodes[1] - nodes[0]) {
    std::swap(nodes[0], nodes[2]);  // isolated largest node first
  }
  std::vector<double> fn(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) fn[i] = f(nodes[i]);

  const AlbertElement one = identity();
  AlbertElement out = combine(one, fn[0], one, 0.0);
  if (nodes.size() >= 2) {
    const double d01 = (fn[1] - fn[0]) / (nodes[1] - nodes[0]);
    const AlbertElement x0 = shifted(x, nodes[0]);
    out = combine(out, 1.0, x0, d01);
    if (nodes.size() == 3) {
      const double d12 = (fn[2] - fn[1]) / (nodes[2] - nodes[1]);
      const double d012 = (d12 - d01) / (nodes[2] - nodes[0]);
      const AlbertElement x1 = shifted(x, nodes[1]);
      out = combine(out, 1.0, product(x0, x1), d012);
    }
  }

  // Spectral mapping self-check.
  std::array<double, 3> expected{};
  double scale = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    expected[i] = f(admitted[i]);
    scale = std::max(scale, 1.0 + std::abs(expected[i]));
  }
  std::sort(expected.begin(), expected.end());
  const auto got = eigenvalues(out);
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(got[i] - expected[i]) > 1e-7 * scale) {
      throw ConsistencyError("Albert functional calculus failed the spectral mapping check");
    }
  }
  return out;
}

inline Element albert_apply(const ScalarFunction& f, const Element& x) {
  return Element(x.algebra(), albert_apply(f, AlbertElement::from_coords(x.coords())).coords());
}

inline Spectrum albert_spectrum(const Element& x) {
  return albert_spectrum(AlbertElement::from_coords(x.coords()));
}

}  // namespace jordan::albert
