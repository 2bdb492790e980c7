#pragma once

#include <algorithm>

#include "jordan/spectral.hpp"

namespace jordan {

/// Outcome of checking lhs <= rhs in the Loewner order.
struct OrderCertificate {
  double margin = 0.0;  // min Sp(rhs - lhs)
  double scale = 1.0;   // 1 + max(|lhs|, |rhs|)
  double tol = 0.0;
  bool verdict = false;  // margin >= -tol * scale

  /// margin / scale, the quantity compared against -tol.
  double relative_margin() const { return margin / scale; }
};

/// Certifies a <= b. Failure is reported in the certificate, never thrown.
inline OrderCertificate loewner_leq(const Element& a, const Element& b, double tol) {
  require_same_algebra(a, b);
  if (!(tol >= 0.0)) throw ParameterError("loewner_leq: tol must be >= 0");
  OrderCertificate c;
  c.margin = min_eigenvalue(b - a);
  c.scale = 1.0 + std::max(jb_norm(a), jb_norm(b));
  c.tol = tol;
  c.verdict = c.margin >= -tol * c.scale;
  return c;
}

}  // namespace jordan
