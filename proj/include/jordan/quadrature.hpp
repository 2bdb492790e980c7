#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "jordan/dense.hpp"
#include "jordan/means.hpp"

namespace jordan {

/// Nodes and weights on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight t^p (1-t)^q on [0, 1], p, q > -1.
///
/// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
/// monic recurrence on [-1, 1], weights are mu0 times the squared first
/// eigenvector components.
inline QuadratureRule gauss_jacobi_rule(int n, double p, double q) {
  if (n < 1) throw ParameterError("quadrature needs at least one node");
  if (!(p > -1.0) || !(q > -1.0)) throw ParameterError("Gauss-Jacobi exponents must exceed -1");
  // On [-1, 1] the weight is (1-u)^a (1+u)^b.
  const double a = q;
  const double b = p;
  const double ab = a + b;

  DenseMatrix jm(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double diag;
    if (k == 0) {
      diag = (b - a) / (ab + 2.0);
    } else {
      diag = (b * b - a * a) / (s * (s + 2.0));
    }
    jm(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = diag;
    if (k + 1 < n) {
      const double m = kk + 1.0;
      const double sm = 2.0 * m + ab;
      double beta;
      if (m == 1.0) {
        // Closed form avoids 0/0 at a + b = -1.
        beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      } else {
        beta = 4.0 * m * (m + a) * (m + b) * (m + ab) / (sm * sm * (sm + 1.0) * (sm - 1.0));
      }
      const double off = std::sqrt(beta);
      jm(static_cast<std::size_t>(k), static_cast<std::size_t>(k + 1)) = off;
      jm(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k)) = off;
    }
  }

  // Total mass of t^p (1-t)^q on [0, 1]: B(p + 1, q + 1).
  const double mu0 = std::tgamma(p + 1.0) * std::tgamma(q + 1.0) / std::tgamma(p + q + 2.0);
  const EigenFrame ef = jacobi_eigen(std::move(jm));
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    rule.nodes[i] = 0.5 * (1.0 + ef.eigenvalues[i]);
    const double v0 = ef.frame(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

inline QuadratureRule gauss_legendre_rule(int n) { return gauss_jacobi_rule(n, 0.0, 0.0); }

/// Process-wide memo of computed rules; returned rules are immutable.
inline std::shared_ptr<const QuadratureRule> cached_jacobi_rule(int n, double p, double q) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_tuple(n, p, q);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(n, p, q));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(rule)).first->second;
}

enum class QuadratureKind { GaussLegendre, GaussJacobi };

struct QuadratureConfig {
  int nodes = 128;
  QuadratureKind rule = QuadratureKind::GaussJacobi;
};

namespace detail {

inline void check_nodes(const QuadratureConfig& q) {
  if (q.nodes < 8) throw ParameterError("quadrature needs at least 8 nodes");
}

inline void check_open_unit(double lam) {
  if (!(lam > 0.0 && lam < 1.0)) throw ParameterError("lambda must lie in (0, 1)");
}

/// Sum of w_i g(t_i) where g(t) is assembled from A !_t B.
template <class Integrand>
Element harmonic_sum(const Element& a, const Element& b, const QuadratureRule& rule,
                     Integrand&& integrand) {
  require_same_algebra(a, b);
  require_positive_invertible(a, "A");
  require_positive_invertible(b, "B");
  const Element a_inv = inverse(a);
  const Element b_inv = inverse(b);
  Element acc = zero(a.algebra());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const Element h = inverse(affine(a_inv, b_inv, 1.0 - t, t));
    acc = affine(acc, integrand(t, h), 1.0, rule.weights[i]);
  }
  return acc;
}

/// Legendre rule for the weight t^{lam-1} (1-t)^{-lam} after removing both
/// endpoint singularities: split at 1/2, t = u^{1/lam} on the left half and
/// 1 - t = v^{1/(1-lam)} on the right. Both halves become smooth integrals.
inline QuadratureRule regularized_legendre_rule(int n, double lam) {
  const int left_n = n / 2;
  const auto left = gauss_legendre_rule(left_n);
  const auto right = gauss_legendre_rule(n - left_n);
  QuadratureRule rule;
  const double u_max = std::pow(0.5, lam);
  for (std::size_t i = 0; i < left.nodes.size(); ++i) {
    const double t = std::pow(u_max * left.nodes[i], 1.0 / lam);
    rule.nodes.push_back(t);
    rule.weights.push_back(u_max * left.weights[i] * std::pow(1.0 - t, -lam) / lam);
  }
  const double v_max = std::pow(0.5, 1.0 - lam);
  for (std::size_t i = 0; i < right.nodes.size(); ++i) {
    const double s = std::pow(v_max * right.nodes[i], 1.0 / (1.0 - lam));
    const double t = 1.0 - s;
    rule.nodes.push_back(t);
    rule.weights.push_back(v_max * right.weights[i] * std::pow(t, lam - 1.0) / (1.0 - lam));
  }
  return rule;
}

/// Rule carrying the weight t^{lam-1} (1-t)^{-lam}.
inline std::shared_ptr<const QuadratureRule> lambda_rule(double lam, const QuadratureConfig& q) {
  if (q.rule == QuadratureKind::GaussJacobi) return cached_jacobi_rule(q.nodes, lam - 1.0, -lam);
  return std::make_shared<const QuadratureRule>(regularized_legendre_rule(q.nodes, lam));
}

}  // namespace detail

/// S(A|B) as the integral of (A !_t B - A) / t over [0, 1] (Gauss-Legendre).
inline Element quad_integral_S(const Element& a, const Element& b, const QuadratureConfig& q) {
  detail::check_nodes(q);
  const auto rule = cached_jacobi_rule(q.nodes, 0.0, 0.0);
  return detail::harmonic_sum(a, b, *rule, [&](double t, const Element& h) {
    return (1.0 / t) * (h - a);
  });
}

/// T_lam(A|B) = sin(lam pi)/(lam pi) * int t^{lam-1} (1-t)^{-lam} (A !_t B - A) dt.
inline Element quad_integral_T(const Element& a, const Element& b, double lam,
                               const QuadratureConfig& q) {
  detail::check_nodes(q);
  detail::check_open_unit(lam);
  const auto rule = detail::lambda_rule(lam, q);
  const Element sum = detail::harmonic_sum(a, b, *rule, [&](double, const Element& h) { return h - a; });
  return (std::sin(lam * std::numbers::pi) / (lam * std::numbers::pi)) * sum;
}

/// A #_lam B = sin(lam pi)/pi * int t^{lam-1} (1-t)^{-lam} (A !_t B) dt.
inline Element quad_integral_geo(const Element& a, const Element& b, double lam,
                                 const QuadratureConfig& q) {
  detail::check_nodes(q);
  detail::check_open_unit(lam);
  const auto rule = detail::lambda_rule(lam, q);
  const Element sum = detail::harmonic_sum(a, b, *rule, [&](double, const Element& h) { return h; });
  return (std::sin(lam * std::numbers::pi) / std::numbers::pi) * sum;
}

/// Quadrature of the weight t^{lam-1} (1-t)^{-lam} alone; equals pi / sin(lam pi).
inline double weight_integral(double lam, int nodes) {
  detail::check_open_unit(lam);
  const auto rule = cached_jacobi_rule(nodes, lam - 1.0, -lam);
  double s = 0.0;
  for (double w : rule->weights) s += w;
  return s;
}

}  // namespace jordan
