#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "jordan/error.hpp"

namespace jordan {

/// Square row-major matrix used for the matrix backend and quadrature setup.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}

  static DenseMatrix identity(std::size_t size) {
    DenseMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }

  double frobenius() const {
    double s = 0.0;
    for (double v : data) s += v * v;
    return std::sqrt(s);
  }
};

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.n;
  DenseMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) t(j, i) = a(i, j);
  return t;
}

/// Full spectral decomposition: `frame * diag(eigenvalues) * frame^T`.
struct EigenFrame {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix frame;                // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Threshold sweeps in the first three passes, then plain cyclic sweeps until
/// the off-diagonal Frobenius mass drops below 1e-14 of the input norm.
/// Eigenvalues are returned ascending; ties keep the Jacobi ordering.
inline EigenFrame jacobi_eigen(DenseMatrix a) {
  const std::size_t n = a.n;
  for (double v : a.data) {
    if (!std::isfinite(v)) throw InvalidElement("eigensolver input has a non-finite entry");
  }
  DenseMatrix v = DenseMatrix::identity(n);
  const double norm = a.frobenius();
  const double target = 1e-14 * norm;

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_mass();
    if (off <= target || off == 0.0) break;
    const double threshold =
        sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold || apq == 0.0) continue;

        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double np = arp - s * (arq + tau * arp);
          const double nq = arq + s * (arp - tau * arq);
          a(r, p) = np;
          a(p, r) = np;
          a(r, q) = nq;
          a(q, r) = nq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenFrame out;
  out.eigenvalues.resize(n);
  out.frame = DenseMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.frame(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace jordan
