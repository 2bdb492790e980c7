#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "jordan/spectral.hpp"

// Deterministic generators for test elements. Every generator draws from an
// explicit engine so trials can derive independent streams from
// (seed, trial index).
namespace jordan {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Engine for stream `index` of `seed`.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0) {
  return Rng(splitmix64(splitmix64(seed ^ splitmix64(salt)) + index));
}

inline double gaussian(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Element with independent standard normal coordinates times `sigma`.
inline Element random_element(const AlgebraDescriptor& alg, Rng& rng, double sigma = 1.0) {
  std::vector<double> c(alg.coord_count());
  for (double& v : c) v = sigma * gaussian(rng);
  return Element(alg, std::move(c));
}

/// Orthogonal matrix from modified Gram-Schmidt on a Gaussian matrix.
inline DenseMatrix random_frame(std::size_t n, Rng& rng) {
  DenseMatrix q(n);
  for (double& v : q.data) v = gaussian(rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

/// Positive invertible element with max/min eigenvalue <= cond, eigenvalues
/// centred (geometrically) on 1.
inline Element random_positive(const AlgebraDescriptor& alg, double cond, Rng& rng) {
  if (!(cond >= 1.0)) throw ParameterError("random_positive: cond must be >= 1");
  if (cond == 1.0) return identity(alg);
  const double log_cond = std::log(cond);
  switch (alg.kind) {
    case AlgebraKind::SymMatrix: {
      const std::size_t n = alg.dim;
      EigenFrame ef;
      ef.frame = random_frame(n, rng);
      ef.eigenvalues.resize(n);
      for (double& l : ef.eigenvalues) l = std::exp(log_cond * uniform(rng, -0.5, 0.5));
      return Element(alg, sym::reassemble(ef, ef.eigenvalues));
    }
    case AlgebraKind::SpinFactor: {
      const double kappa = std::exp(log_cond * uniform(rng));
      const double r = (kappa - 1.0) / (kappa + 1.0);
      std::vector<double> c(alg.dim + 1);
      for (std::size_t i = 1; i <= alg.dim; ++i) c[i] = gaussian(rng);
      const double len = spin::vector_norm(std::span<const double>(c).subspan(1));
      const double centre = 1.0 / std::sqrt((1.0 - r) * (1.0 + r));
      c[0] = centre;
      for (std::size_t i = 1; i <= alg.dim; ++i) c[i] = len > 0.0 ? centre * r * c[i] / len : 0.0;
      return Element(alg, std::move(c));
    }
    case AlgebraKind::Albert: {
      const double kappa = std::exp(log_cond * uniform(rng));
      const Element x = random_element(alg, rng);
      const auto ev = eigenvalues(x);
      const double spread = ev.back() - ev.front();
      if (!(spread > 0.0)) return identity(alg);
      // Affine image of x with extreme roots 1 and kappa, then centred.
      const double s = (kappa - 1.0) / spread;
      const Element y = affine(x, identity(alg), s, 1.0 - s * ev.front());
      return (1.0 / std::sqrt(kappa)) * y;
    }
  }
  return identity(alg);
}

inline Element random_positive(const AlgebraDescriptor& alg, double cond, std::uint64_t seed) {
  Rng rng(seed);
  return random_positive(alg, cond, rng);
}

/// G o G for a random G: positive semidefinite in any Jordan algebra.
inline Element random_square(const AlgebraDescriptor& alg, Rng& rng, double sigma = 1.0) {
  return square(random_element(alg, rng, sigma));
}

inline Element random_square(const AlgebraDescriptor& alg, std::uint64_t seed) {
  Rng rng(seed);
  return random_square(alg, rng);
}

/// Invertible element (not necessarily positive): eigenvalues pushed at
/// least 1/2 away from zero.
inline Element random_invertible(const AlgebraDescriptor& alg, Rng& rng) {
  const ScalarFunction push{"push", Interval::real_line(),
                            [](double t) { return t >= 0.0 ? t + 0.5 : t - 0.5; }};
  return func_calculus(random_element(alg, rng), push);
}

}  // namespace jordan
