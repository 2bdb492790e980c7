#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "jordan/albert.hpp"
#include "jordan/spin_factor.hpp"
#include "jordan/sym_matrix.hpp"
#include "jordan/types.hpp"

namespace jordan {

/// Unit element I.
inline Element identity(const AlgebraDescriptor& alg) {
  std::vector<double> c(alg.coord_count(), 0.0);
  switch (alg.kind) {
    case AlgebraKind::SymMatrix:
      for (std::size_t i = 0; i < alg.dim; ++i) c[sym::packed_index(alg.dim, i, i)] = 1.0;
      break;
    case AlgebraKind::SpinFactor: c[0] = 1.0; break;
    case AlgebraKind::Albert: c[0] = c[1] = c[2] = 1.0; break;
  }
  return Element(alg, std::move(c));
}

inline Element zero(const AlgebraDescriptor& alg) {
  return Element(alg, std::vector<double>(alg.coord_count(), 0.0));
}

/// Commutative Jordan product x o y.
inline Element jordan_product(const Element& x, const Element& y) {
  require_same_algebra(x, y);
  const auto& alg = x.algebra();
  switch (alg.kind) {
    case AlgebraKind::SymMatrix: return Element(alg, sym::product(x.coords(), y.coords(), alg.dim));
    case AlgebraKind::SpinFactor: return Element(alg, spin::product(x.coords(), y.coords()));
    case AlgebraKind::Albert: return Element(alg, albert::product(x.coords(), y.coords()));
  }
  throw InvalidElement("unknown algebra kind");
}

inline Element square(const Element& x) { return jordan_product(x, x); }

/// s x + t y, coordinatewise.
inline Element affine(const Element& x, const Element& y, double s, double t) {
  require_same_algebra(x, y);
  if (!std::isfinite(s) || !std::isfinite(t)) throw ParameterError("affine: non-finite scalar");
  std::vector<double> c(x.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * x[i] + t * y[i];
  return Element(x.algebra(), std::move(c));
}

inline Element operator+(const Element& x, const Element& y) { return affine(x, y, 1.0, 1.0); }
inline Element operator-(const Element& x, const Element& y) { return affine(x, y, 1.0, -1.0); }
inline Element operator*(double s, const Element& x) {
  if (!std::isfinite(s)) throw ParameterError("scaling by a non-finite scalar");
  std::vector<double> c(x.coord_vector());
  for (double& v : c) v *= s;
  return Element(x.algebra(), std::move(c));
}

/// The product formula of U_a, available for every backend.
inline Element quad_map_generic(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  return affine(jordan_product(jordan_product(a, b), a), jordan_product(square(a), b), 2.0, -1.0);
}

/// Quadratic map U_a(b) = {a b a} = 2 (a o b) o a - a^2 o b.
///
/// The matrix backend computes a b a directly, which is the same element.
inline Element quad_map(const Element& a, const Element& b) {
  require_same_algebra(a, b);
  if (a.algebra().kind == AlgebraKind::SymMatrix) {
    return Element(a.algebra(), sym::quad(a.coords(), b.coords(), a.algebra().dim));
  }
  return quad_map_generic(a, b);
}

/// All eigenvalues counted with multiplicity, ascending.
inline std::vector<double> eigenvalues(const Element& x) {
  switch (x.algebra().kind) {
    case AlgebraKind::SymMatrix: return sym::eigenvalues(x);
    case AlgebraKind::SpinFactor: return spin::eigenvalues(x.coords());
    case AlgebraKind::Albert: {
      const auto ev = albert::eigenvalues(albert::AlbertElement::from_coords(x.coords()));
      return {ev.begin(), ev.end()};
    }
  }
  return {};
}

/// JB norm: spectral radius.
inline double jb_norm(const Element& x) {
  const auto ev = eigenvalues(x);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

/// Relative coordinatewise equality; tests only.
inline bool approx_equal(const Element& x, const Element& y, double rel = 1e-12) {
  if (!(x.algebra() == y.algebra())) return false;
  const double scale = std::max({1.0, x.max_abs(), y.max_abs()});
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > rel * scale) return false;
  }
  return true;
}

}  // namespace jordan
