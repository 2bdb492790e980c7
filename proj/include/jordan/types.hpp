#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jordan/error.hpp"

namespace jordan {

enum class AlgebraKind { SymMatrix, SpinFactor, Albert };

/// Identifies one concrete Jordan algebra.
///
/// `dim` is the matrix side for SymMatrix, the vector length for SpinFactor
/// and the fixed coordinate count 27 for Albert.
struct AlgebraDescriptor {
  AlgebraKind kind = AlgebraKind::SymMatrix;
  std::size_t dim = 1;

  static AlgebraDescriptor sym(std::size_t n) { return checked({AlgebraKind::SymMatrix, n}); }
  static AlgebraDescriptor spin(std::size_t n) { return checked({AlgebraKind::SpinFactor, n}); }
  static AlgebraDescriptor albert() { return {AlgebraKind::Albert, 27}; }

  static AlgebraDescriptor checked(AlgebraDescriptor d) {
    if (d.dim < 1) throw InvalidElement("algebra dimension must be >= 1");
    if (d.kind == AlgebraKind::Albert && d.dim != 27)
      throw InvalidElement("Albert descriptor must have dim 27");
    return d;
  }

  /// Number of stored real coordinates.
  std::size_t coord_count() const {
    switch (kind) {
      case AlgebraKind::SymMatrix: return dim * (dim + 1) / 2;
      case AlgebraKind::SpinFactor: return dim + 1;
      case AlgebraKind::Albert: return 27;
    }
    return 0;
  }

  /// Rank of the algebra: number of eigenvalues counted with multiplicity.
  std::size_t degree() const {
    switch (kind) {
      case AlgebraKind::SymMatrix: return dim;
      case AlgebraKind::SpinFactor: return 2;
      case AlgebraKind::Albert: return 3;
    }
    return 0;
  }

  /// True for the special (JC) backends.
  bool is_special() const { return kind != AlgebraKind::Albert; }

  std::string name() const {
    switch (kind) {
      case AlgebraKind::SymMatrix: return "sym";
      case AlgebraKind::SpinFactor: return "spin";
      case AlgebraKind::Albert: return "albert";
    }
    return "?";
  }

  std::string label() const {
    return kind == AlgebraKind::Albert ? name() : name() + std::to_string(dim);
  }

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// A value of a concrete Jordan algebra in the backend's canonical coordinates.
///
/// SymMatrix: packed upper triangle, row-major. SpinFactor: [s, v1..vn].
/// Albert: [a, b, c, x1(8), x2(8), x3(8)].
class Element {
 public:
  Element() = default;

  Element(AlgebraDescriptor algebra, std::vector<double> coords)
      : algebra_(algebra), coords_(std::move(coords)) {
    if (coords_.size() != algebra_.coord_count()) {
      throw InvalidElement("element of " + algebra_.label() + " needs " +
                           std::to_string(algebra_.coord_count()) + " coordinates, got " +
                           std::to_string(coords_.size()));
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) throw InvalidElement("element has a non-finite coordinate");
    }
  }

  const AlgebraDescriptor& algebra() const noexcept { return algebra_; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& coord_vector() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Largest absolute coordinate.
  double max_abs() const {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  AlgebraDescriptor algebra_;
  std::vector<double> coords_;
};

inline void require_same_algebra(const Element& x, const Element& y) {
  if (!(x.algebra() == y.algebra())) {
    throw IncompatibleAlgebras("incompatible algebras: " + x.algebra().label() + " vs " +
                               y.algebra().label());
  }
}

/// Interval of the real line, each end open or closed. Infinite ends are open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), true, true}; }
  static Interval nonnegative() {
    return {0.0, std::numeric_limits<double>::infinity(), false, true};
  }

  std::string describe() const {
    std::ostringstream os;
    os << (lo_open ? "(" : "[") << lo << ", " << hi << (hi_open ? ")" : "]");
    return os.str();
  }
};

/// A real function on an interval, applied to elements by functional calculus.
struct ScalarFunction {
  std::string label;
  Interval domain;
  std::function<double(double)> eval;

  double operator()(double t) const { return eval(t); }

  /// Checks an eigenvalue against the domain with slack `1e-12 * scale` and
  /// returns the point at which to evaluate (closed ends clamp roundoff).
  double admit(double eigenvalue, double scale) const {
    const double slack = 1e-12 * scale;
    double t = eigenvalue;
    if (std::isfinite(domain.lo)) {
      if (domain.lo_open ? !(t > domain.lo + slack) : !(t >= domain.lo - slack)) fail(t);
      if (!domain.lo_open && t < domain.lo) t = domain.lo;
    }
    if (std::isfinite(domain.hi)) {
      if (domain.hi_open ? !(t < domain.hi - slack) : !(t <= domain.hi + slack)) fail(t);
      if (!domain.hi_open && t > domain.hi) t = domain.hi;
    }
    return t;
  }

 private:
  [[noreturn]] void fail(double t) const {
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalue " << t << " outside domain " << domain.describe() << " of '" << label
       << "'";
    throw DomainError(os.str(), t, label);
  }
};

/// Distinct eigenvalues (ascending) with multiplicities.
struct Spectrum {
  std::vector<double> values;
  std::vector<int> multiplicities;

  double min() const { return values.front(); }
  double max() const { return values.back(); }

  /// Groups a sorted eigenvalue list; neighbours closer than `tol` merge
  /// into one value (their mean).
  static Spectrum from_sorted(std::span<const double> eigenvalues, double tol) {
    Spectrum s;
    std::size_t i = 0;
    while (i < eigenvalues.size()) {
      std::size_t j = i + 1;
      double sum = eigenvalues[i];
      while (j < eigenvalues.size() && eigenvalues[j] - eigenvalues[j - 1] <= tol) {
        sum += eigenvalues[j];
        ++j;
      }
      s.values.push_back(sum / static_cast<double>(j - i));
      s.multiplicities.push_back(static_cast<int>(j - i));
      i = j;
    }
    return s;
  }
};

}  // namespace jordan
