#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "jordan/dense.hpp"
#include "jordan/types.hpp"

// Backend for the special Jordan algebra of n x n real symmetric matrices
// with X o Y = (XY + YX) / 2. Elements are stored as the packed upper
// triangle, row-major.
namespace jordan::sym {

inline std::size_t packed_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline std::size_t side_from_count(std::size_t count) {
  std::size_t n = 0;
  while (n * (n + 1) / 2 < count) ++n;
  return n;
}

inline DenseMatrix to_dense(std::span<const double> packed, std::size_t n) {
  DenseMatrix m(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++k) {
      m(i, j) = packed[k];
      m(j, i) = packed[k];
    }
  }
  return m;
}

/// Packs the symmetric part (M + M^T) / 2.
inline std::vector<double> from_dense(const DenseMatrix& m) {
  const std::size_t n = m.n;
  std::vector<double> packed;
  packed.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    packed.push_back(m(i, i));
    for (std::size_t j = i + 1; j < n; ++j) packed.push_back(0.5 * (m(i, j) + m(j, i)));
  }
  return packed;
}

inline Element from_dense_element(const DenseMatrix& m) {
  return Element(AlgebraDescriptor::sym(m.n), from_dense(m));
}

/// Converts a dense matrix, rejecting asymmetry beyond 1e-12 relative.
inline Element from_dense_checked(const DenseMatrix& m) {
  double scale = 0.0;
  for (double v : m.data) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = i + 1; j < m.n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        throw InvalidElement("matrix is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
    }
  }
  return from_dense_element(m);
}

inline DenseMatrix to_dense(const Element& x) { return to_dense(x.coords(), x.algebra().dim); }

/// (XY + YX) / 2; exactly commutative coordinatewise.
inline std::vector<double> product(std::span<const double> x, std::span<const double> y,
                                   std::size_t n) {
  const DenseMatrix p = multiply(to_dense(x, n), to_dense(y, n));
  std::vector<double> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(0.5 * (p(i, j) + p(j, i)));
  return out;
}

/// A B A, symmetrized.
inline std::vector<double> quad(std::span<const double> a, std::span<const double> b,
                                std::size_t n) {
  const DenseMatrix ad = to_dense(a, n);
  return from_dense(multiply(multiply(ad, to_dense(b, n)), ad));
}

inline EigenFrame sym_eigen(const Element& x) {
  if (x.algebra().kind != AlgebraKind::SymMatrix)
    throw IncompatibleAlgebras("sym_eigen needs a SymMatrix element");
  return jacobi_eigen(to_dense(x));
}

/// frame * diag(values) * frame^T, packed.
inline std::vector<double> reassemble(const EigenFrame& ef, std::span<const double> values) {
  const std::size_t n = ef.frame.n;
  std::vector<double> out;
  out.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += ef.frame(i, k) * values[k] * ef.frame(j, k);
      out.push_back(s);
    }
  }
  return out;
}

inline double spectral_radius(std::span<const double> eigenvalues) {
  double r = 0.0;
  for (double l : eigenvalues) r = std::max(r, std::abs(l));
  return r;
}

/// Functional calculus through the Jacobi frame.
inline Element matrix_apply(const ScalarFunction& f, const Element& x) {
  const EigenFrame ef = sym_eigen(x);
  const double scale = spectral_radius(ef.eigenvalues);
  std::vector<double> fv(ef.eigenvalues.size());
  for (std::size_t k = 0; k < fv.size(); ++k) fv[k] = f(f.admit(ef.eigenvalues[k], scale));
  return Element(x.algebra(), reassemble(ef, fv));
}

inline std::vector<double> eigenvalues(const Element& x) { return sym_eigen(x).eigenvalues; }

}  // namespace jordan::sym
