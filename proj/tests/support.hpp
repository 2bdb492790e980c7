#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include <gtest/gtest.h>

#include "jordan/jordan.hpp"

namespace testing_support {

using namespace jordan;

inline Element sym_rows(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t k = 0;
    for (double v : r) m(i, k++) = v;
    ++i;
  }
  return sym::from_dense_checked(m);
}

inline Element diag(std::initializer_list<double> d) {
  DenseMatrix m(d.size());
  std::size_t i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return sym::from_dense_element(m);
}

inline Element scalar(double v) { return Element(AlgebraDescriptor::sym(1), {v}); }

inline Element spin_el(double s, std::initializer_list<double> v) {
  std::vector<double> c{s};
  c.insert(c.end(), v);
  return Element(AlgebraDescriptor::spin(v.size()), c);
}

inline Element albert_diag(double a, double b, double c) {
  std::vector<double> k(27, 0.0);
  k[0] = a;
  k[1] = b;
  k[2] = c;
  return Element(AlgebraDescriptor::albert(), k);
}

// Max coordinate deviation relative to 1 + the larger operand.
inline double rel_dev(const Element& x, const Element& y) {
  double d = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
    s = std::max({s, std::abs(x[i]), std::abs(y[i])});
  }
  return d / (1.0 + s);
}

inline void expect_coords(const Element& x, std::initializer_list<double> want, double tol) {
  ASSERT_EQ(x.size(), want.size());
  std::size_t i = 0;
  for (double w : want) {
    EXPECT_NEAR(x[i], w, tol * (1.0 + std::abs(w))) << "coordinate " << i;
    ++i;
  }
}

inline std::vector<AlgebraDescriptor> backends() { return all_backends(); }

}  // namespace testing_support
