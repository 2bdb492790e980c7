#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "jordan/error.hpp"

namespace jordan {

/// Scalar functions whose pointwise order drives the refined entropy bounds.
enum class ScalarBoundFamily { RDelta, SDelta, Q, JDelta, KDelta };

inline std::string_view family_name(ScalarBoundFamily f) {
  switch (f) {
    case ScalarBoundFamily::RDelta: return "r_delta";
    case ScalarBoundFamily::SDelta: return "s_delta";
    case ScalarBoundFamily::Q: return "q";
    case ScalarBoundFamily::JDelta: return "j_delta";
    case ScalarBoundFamily::KDelta: return "k_delta";
  }
  return "?";
}

/// r_d(x) = [ln d + 2(1 - 2d/(x+d))] x^a
/// s_d(x) = [ln d + 4 - 8 sqrt(d)/(sqrt(x) + sqrt(d))] x^a
/// q(x)   = x^a ln x
/// j_d(x) = x^{a+1/2}/sqrt(d) - x^{a-1/2} sqrt(d) + x^a ln d
/// k_d(x) = x^{a+1}/(2d) - x^{a-1} d/2 + x^a ln d
inline double scalar_bound_eval(ScalarBoundFamily family, double x, double alpha, double delta) {
  if (!(x > 0.0) || !(delta > 0.0) || !(alpha >= 0.0)) {
    throw ParameterError("scalar bound needs x > 0, delta > 0, alpha >= 0");
  }
  const double xa = std::pow(x, alpha);
  const double ld = std::log(delta);
  const double rd = std::sqrt(delta);
  switch (family) {
    case ScalarBoundFamily::RDelta: return (ld + 2.0 * (1.0 - 2.0 * delta / (x + delta))) * xa;
    case ScalarBoundFamily::SDelta: return (ld + 4.0 - 8.0 * rd / (std::sqrt(x) + rd)) * xa;
    case ScalarBoundFamily::Q: return xa * std::log(x);
    case ScalarBoundFamily::JDelta:
      return std::pow(x, alpha + 0.5) / rd - std::pow(x, alpha - 0.5) * rd + xa * ld;
    case ScalarBoundFamily::KDelta:
      return std::pow(x, alpha + 1.0) / (2.0 * delta) - std::pow(x, alpha - 1.0) * delta / 2.0 +
             xa * ld;
  }
  return 0.0;
}

}  // namespace jordan
