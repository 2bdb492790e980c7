#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "jordan/core.hpp"

namespace jordan {

namespace fn {

inline ScalarFunction identity() {
  return {"id", Interval::real_line(), [](double t) { return t; }};
}
inline ScalarFunction constant(double c) {
  return {"const", Interval::real_line(), [c](double) { return c; }};
}
inline ScalarFunction log() {
  return {"log", Interval::positive(), [](double t) { return std::log(t); }};
}
inline ScalarFunction exp() {
  return {"exp", Interval::real_line(), [](double t) { return std::exp(t); }};
}
inline ScalarFunction sqrt() {
  return {"sqrt", Interval::nonnegative(), [](double t) { return std::sqrt(t); }};
}
inline ScalarFunction square() {
  return {"square", Interval::real_line(), [](double t) { return t * t; }};
}
inline ScalarFunction reciprocal() {
  return {"inverse", Interval::real_line(), [](double t) { return 1.0 / t; }};
}
/// t -> -t log t
inline ScalarFunction neg_xlogx() {
  return {"-xlogx", Interval::positive(), [](double t) { return -t * std::log(t); }};
}

/// t -> t^p. Negative exponents need (0, inf), fractional ones [0, inf),
/// non-negative integers accept the whole line.
inline ScalarFunction power(double p) {
  std::ostringstream label;
  label.precision(17);
  label << "pow(" << p << ")";
  const bool integral = std::floor(p) == p;
  Interval dom = p < 0.0 ? Interval::positive()
                 : integral ? Interval::real_line()
                            : Interval::nonnegative();
  return {label.str(), dom, [p](double t) { return std::pow(t, p); }};
}

}  // namespace fn

/// Sp(x); eigenvalues closer than the backend tolerance are merged.
inline Spectrum spectrum(const Element& x) {
  switch (x.algebra().kind) {
    case AlgebraKind::SymMatrix: {
      const auto ev = sym::eigenvalues(x);
      return Spectrum::from_sorted(ev, 1e-10 * (1.0 + sym::spectral_radius(ev)));
    }
    case AlgebraKind::SpinFactor: return spin::spin_spectrum(x);
    case AlgebraKind::Albert: return albert::albert_spectrum(x);
  }
  return {};
}

inline double min_eigenvalue(const Element& x) { return eigenvalues(x).front(); }

/// f(x) by functional calculus on the backend's spectral decomposition.
inline Element func_calculus(const Element& x, const ScalarFunction& f) {
  switch (x.algebra().kind) {
    case AlgebraKind::SymMatrix: return sym::matrix_apply(f, x);
    case AlgebraKind::SpinFactor: return spin::spin_apply(f, x);
    case AlgebraKind::Albert: return albert::albert_apply(f, x);
  }
  throw InvalidElement("unknown algebra kind");
}

inline Element power(const Element& x, double p) {
  if (!std::isfinite(p)) throw ParameterError("power: non-finite exponent");
  if (p == 0.0) return identity(x.algebra());
  if (p == 1.0) return x;
  return func_calculus(x, fn::power(p));
}

inline Element log(const Element& x) { return func_calculus(x, fn::log()); }
inline Element exp(const Element& x) { return func_calculus(x, fn::exp()); }
inline Element sqrt(const Element& x) { return func_calculus(x, fn::sqrt()); }

/// Jordan inverse; requires min |eigenvalue| > 1e-12 |x|.
inline Element inverse(const Element& x) {
  const auto ev = eigenvalues(x);
  double radius = 0.0;
  double smallest = std::abs(ev.front());
  for (double l : ev) {
    radius = std::max(radius, std::abs(l));
    smallest = std::min(smallest, std::abs(l));
  }
  if (!(smallest > 1e-12 * radius) || radius == 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "element is singular: min |eigenvalue| = " << smallest;
    throw SingularError(os.str(), smallest);
  }
  return func_calculus(x, fn::reciprocal());
}

/// min Sp(x) >= -tol (1 + |x|).
inline bool is_positive(const Element& x, double tol) {
  const auto ev = eigenvalues(x);
  const double radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.front() >= -tol * (1.0 + radius);
}

/// Throws PositivityError unless min Sp(x) > 1e-12 |x|.
inline void require_positive_invertible(const Element& x, const char* name) {
  const auto ev = eigenvalues(x);
  const double radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  if (!(ev.front() > 1e-12 * radius) || radius == 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "operand " << name << " is not positive invertible (min eigenvalue " << ev.front()
       << ")";
    throw PositivityError(os.str());
  }
}

}  // namespace jordan
