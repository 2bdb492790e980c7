#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "jordan/spectral.hpp"

// Operator means, relative operator entropies and their bound expressions,
// all assembled from quad_map, functional calculus and Jordan products.
namespace jordan {

/// Deformed logarithm ln_lambda(x) = (x^lambda - 1) / lambda.
inline double ln_lambda(double x, double lam) {
  if (lam == 0.0 || !std::isfinite(lam)) throw ParameterError("ln_lambda: lambda must be nonzero");
  if (!(x > 0.0)) throw DomainError("ln_lambda: x must be positive", x, "ln_lambda");
  return std::expm1(lam * std::log(x)) / lam;
}

namespace fn {
inline ScalarFunction ln_lambda(double lam) {
  if (lam == 0.0) throw ParameterError("ln_lambda: lambda must be nonzero");
  return {"ln_lambda", Interval::positive(), [lam](double t) { return jordan::ln_lambda(t, lam); }};
}
}  // namespace fn

/// Nonassociative perspective {h(b)^1/2 f({h(b)^-1/2 a h(b)^-1/2}) h(b)^1/2}.
inline Element perspective(const ScalarFunction& f, const ScalarFunction& h, const Element& a,
                           const Element& b) {
  require_same_algebra(a, b);
  const Element hb = func_calculus(b, h);
  const double hmin = min_eigenvalue(hb);
  if (!(hmin > 0.0)) {
    throw DomainError("perspective: h(b) is not positive (min eigenvalue " +
                          std::to_string(hmin) + ")",
                      hmin, h.label);
  }
  const Element inner = quad_map(power(hb, -0.5), a);
  try {
    return quad_map(power(hb, 0.5), func_calculus(inner, f));
  } catch (const DomainError& e) {
    throw DomainError(std::string("perspective: inner element: ") + e.what(), e.eigenvalue(),
                      e.function());
  }
}

/// Weighted harmonic mean ((1-t) a^-1 + t b^-1)^-1.
inline Element harmonic_mean(const Element& a, const Element& b, double t) {
  require_same_algebra(a, b);
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("harmonic_mean: t must lie in [0, 1]");
  require_positive_invertible(a, "A");
  require_positive_invertible(b, "B");
  return inverse(affine(inverse(a), inverse(b), 1.0 - t, t));
}

/// A^{beta/2} together with {A^{-beta/2} B A^{-beta/2}}.
struct BetaCongruence {
  Element outer;
  Element inner;
};

inline BetaCongruence beta_congruence(const Element& a, const Element& b, double beta) {
  require_same_algebra(a, b);
  require_positive_invertible(a, "A");
  require_positive_invertible(b, "B");
  return {power(a, 0.5 * beta), quad_map(power(a, -0.5 * beta), b)};
}

/// Operator (alpha, beta)-geometric mean {A^{b/2} ({A^{-b/2} B A^{-b/2}})^alpha A^{b/2}}.
/// Any real alpha is accepted; positivity is enforced on the operands.
inline Element ab_geometric_mean(const Element& a, const Element& b, double alpha, double beta) {
  if (!(beta > 0.0)) throw ParameterError("ab_geometric_mean: beta must be positive");
  if (!std::isfinite(alpha)) throw ParameterError("ab_geometric_mean: non-finite alpha");
  const auto [outer, inner] = beta_congruence(a, b, beta);
  return quad_map(outer, power(inner, alpha));
}

/// Weighted geometric mean A #_lam B, lam in [-1, 2].
inline Element geometric_mean(const Element& a, const Element& b, double lam) {
  if (!(lam >= -1.0 && lam <= 2.0)) throw ParameterError("geometric_mean: lambda must lie in [-1, 2]");
  const auto [outer, inner] = beta_congruence(a, b, 1.0);
  return quad_map(outer, power(inner, lam));
}

/// Relative operator entropy S(A|B) = {A^1/2 log({A^-1/2 B A^-1/2}) A^1/2}.
inline Element rel_entropy(const Element& a, const Element& b) {
  const auto [outer, inner] = beta_congruence(a, b, 1.0);
  return quad_map(outer, log(inner));
}

/// S(A|B) through {B^1/2 [-Y o log Y] B^1/2} with Y = {B^-1/2 A B^-1/2}.
inline Element rel_entropy_xlogx(const Element& a, const Element& b) {
  const auto [outer, y] = beta_congruence(b, a, 1.0);
  return quad_map(outer, -1.0 * jordan_product(y, log(y)));
}

/// Tsallis relative operator entropy (A #_lam B - A) / lam.
inline Element tsallis(const Element& a, const Element& b, double lam) {
  if (lam == 0.0) throw ParameterError("tsallis: lambda = 0 is the relative entropy");
  return (1.0 / lam) * (geometric_mean(a, b, lam) - a);
}

/// S_{alpha,beta}(A|B) = {A^{b/2} [X^alpha o log X] A^{b/2}}.
inline Element rel_entropy_ab(const Element& a, const Element& b, double alpha, double beta) {
  if (!(beta > 0.0)) throw ParameterError("rel_entropy_ab: beta must be positive");
  const auto [outer, x] = beta_congruence(a, b, beta);
  return quad_map(outer, jordan_product(power(x, alpha), log(x)));
}

/// T_{lam,beta}(A|B) = {A^{b/2} ln_lam(X) A^{b/2}}.
inline Element tsallis_lb(const Element& a, const Element& b, double lam, double beta) {
  if (lam == 0.0) throw ParameterError("tsallis_lb: lambda must be nonzero");
  if (!(beta > 0.0)) throw ParameterError("tsallis_lb: beta must be positive");
  const auto [outer, x] = beta_congruence(a, b, beta);
  return quad_map(outer, func_calculus(x, fn::ln_lambda(lam)));
}

enum class BoundKind { I, II, III, IV, V, Id, IId, IIId, Vd };

inline std::string_view bound_name(BoundKind k) {
  switch (k) {
    case BoundKind::I: return "I";
    case BoundKind::II: return "II";
    case BoundKind::III: return "III";
    case BoundKind::IV: return "IV";
    case BoundKind::V: return "V";
    case BoundKind::Id: return "Id";
    case BoundKind::IId: return "IId";
    case BoundKind::IIId: return "IIId";
    case BoundKind::Vd: return "Vd";
  }
  return "?";
}

inline BoundKind parse_bound(std::string_view name) {
  for (auto k : {BoundKind::I, BoundKind::II, BoundKind::III, BoundKind::IV, BoundKind::V,
                 BoundKind::Id, BoundKind::IId, BoundKind::IIId, BoundKind::Vd}) {
    if (bound_name(k) == name) return k;
  }
  throw UnknownId("unknown bound kind '" + std::string(name) + "'");
}

/// Parameters read by the entropy and bound operations; each operation
/// validates only what it reads.
struct EntropyParams {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> lambda;
  std::optional<double> delta;
};

namespace detail {
inline double need(const std::optional<double>& v, const char* name, std::string_view kind) {
  if (!v) throw ParameterError("bound " + std::string(kind) + " needs parameter " + name);
  return *v;
}
}  // namespace detail

/// Evaluates one bound expression literally, without algebraic reduction.
inline Element bound_expr(BoundKind kind, const Element& a, const Element& b,
                          const EntropyParams& params) {
  const auto name = bound_name(kind);
  const double beta = detail::need(params.beta, "beta", name);
  if (!(beta > 0.0)) throw ParameterError("bound: beta must be positive");
  auto mean = [&](double alpha) { return ab_geometric_mean(a, b, alpha, beta); };

  if (kind == BoundKind::IV) {
    const double lam = detail::need(params.lambda, "lambda", name);
    if (!(lam > 0.0 && lam <= 1.0)) throw ParameterError("bound IV: lambda must lie in (0, 1]");
    return 0.5 * (mean(lam) - mean(lam - 1.0) + mean(1.0) - mean(0.0));
  }

  const double alpha = detail::need(params.alpha, "alpha", name);
  if (!(alpha >= 0.0)) throw ParameterError("bound: alpha must be >= 0");
  const AlgebraDescriptor& alg = a.algebra();
  const Element one = identity(alg);

  double delta = 1.0;
  const bool primed = kind == BoundKind::Id || kind == BoundKind::IId ||
                      kind == BoundKind::IIId || kind == BoundKind::Vd;
  if (primed) {
    delta = detail::need(params.delta, "delta", name);
    if (!(delta > 0.0)) throw ParameterError("bound: delta must be positive");
  }
  const double log_delta = std::log(delta);
  const double root_delta = std::sqrt(delta);

  switch (kind) {
    case BoundKind::I: {
      const auto [outer, x] = beta_congruence(a, b, beta);
      const Element factor = affine(one, inverse(one + x), 1.0, -2.0);
      return 2.0 * quad_map(outer, jordan_product(factor, power(x, alpha)));
    }
    case BoundKind::II: {
      const auto [outer, x] = beta_congruence(a, b, beta);
      const Element tail = jordan_product(power(x, alpha), inverse(power(x, 0.5) + one));
      return affine(mean(alpha), quad_map(outer, tail), 4.0, -8.0);
    }
    case BoundKind::III: return mean(alpha + 0.5) - mean(alpha - 0.5);
    case BoundKind::V: return 0.5 * (mean(alpha + 1.0) - mean(alpha - 1.0));
    case BoundKind::Id: {
      const auto [outer, x] = beta_congruence(a, b, beta);
      const Element tail = jordan_product(inverse(x + delta * one), power(x, alpha));
      return affine(mean(alpha), quad_map(outer, tail), log_delta + 2.0, -4.0 * delta);
    }
    case BoundKind::IId: {
      const auto [outer, x] = beta_congruence(a, b, beta);
      const Element tail =
          jordan_product(inverse(power(x, 0.5) + root_delta * one), power(x, alpha));
      return affine(mean(alpha), quad_map(outer, tail), log_delta + 4.0, -8.0 * root_delta);
    }
    case BoundKind::IIId:
      return affine(mean(alpha + 0.5), mean(alpha - 0.5), 1.0 / root_delta, -root_delta) +
             log_delta * mean(alpha);
    case BoundKind::Vd:
      return 0.5 * affine(mean(alpha + 1.0), mean(alpha - 1.0), 1.0 / delta, -delta) +
             log_delta * mean(alpha);
    case BoundKind::IV: break;
  }
  throw UnknownId("unhandled bound kind");
}

}  // namespace jordan
