#include <numbers>

#include "support.hpp"

using namespace testing_support;

TEST(Spectrum, Examples) {
  for (const auto& alg : backends()) {
    const Spectrum s = spectrum(identity(alg));
    EXPECT_EQ(s.values.size(), 1u) << alg.label();
    EXPECT_NEAR(s.values[0], 1.0, 1e-15);
    EXPECT_EQ(static_cast<std::size_t>(s.multiplicities[0]), alg.degree());
  }
  EXPECT_EQ(spectrum(diag({1, 2})).values, (std::vector<double>{1, 2}));
  EXPECT_EQ(spectrum(spin_el(2, {1, 0})).values, (std::vector<double>{1, 3}));
}

TEST(Spectrum, MultiplicitiesSumToDegree) {
  Rng rng(51);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) {
      const Spectrum s = spectrum(random_element(alg, rng));
      int total = 0;
      for (int m : s.multiplicities) total += m;
      EXPECT_EQ(static_cast<std::size_t>(total), alg.degree());
      EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
    }
  }
}

TEST(FuncCalculus, ConstantAndIdentity) {
  Rng rng(52);
  for (const auto& alg : backends()) {
    const Element x = random_element(alg, rng);
    EXPECT_LT(rel_dev(func_calculus(x, fn::constant(1.0)), identity(alg)), 1e-12) << alg.label();
    EXPECT_LT(rel_dev(func_calculus(x, fn::identity()), x), 1e-12) << alg.label();
  }
}

TEST(FuncCalculus, ExpLogRoundTrip) {
  Rng rng(53);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = random_positive(alg, 100.0, rng);
      EXPECT_LT(rel_dev(exp(log(x)), x), 1e-9) << alg.label();
    }
  }
}

TEST(FuncCalculus, SpectralMapping) {
  Rng rng(54);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = random_positive(alg, 100.0, rng);
      auto ev = eigenvalues(x);
      const auto fx = eigenvalues(log(x));
      for (double& v : ev) v = std::log(v);
      std::sort(ev.begin(), ev.end());
      const double scale = 1.0 + jb_norm(log(x));
      for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(fx[i], ev[i], 1e-9 * scale) << alg.label();
    }
  }
}

TEST(FuncCalculus, DomainErrorNamesEigenvalue) {
  try {
    log(diag({1, -2}));
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_DOUBLE_EQ(e.eigenvalue(), -2.0);
    EXPECT_NE(std::string(e.what()).find("-2"), std::string::npos);
  }
  EXPECT_THROW(log(diag({1, 0})), DomainError);
  EXPECT_THROW(power(diag({1, -1}), 0.5), DomainError);
}

TEST(Power, Examples) {
  expect_coords(power(diag({4, 9}), 0.5), {2, 0, 3}, 1e-15);
  expect_coords(power(sym_rows({{2, 1}, {1, 1}}), -1.0), {1, -1, 2}, 1e-13);
}

TEST(Power, SquareRootSquaredAndAdditivity) {
  Rng rng(55);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) {
      const Element x = random_positive(alg, 100.0, rng);
      EXPECT_LT(rel_dev(square(power(x, 0.5)), x), 1e-10) << alg.label();
      EXPECT_LT(rel_dev(jordan_product(power(x, 0.3), power(x, -1.7)), power(x, -1.4)), 1e-9) << alg.label();
    }
  }
}

TEST(Inverse, Examples) {
  const Element one = identity(AlgebraDescriptor::sym(3));
  EXPECT_LT(rel_dev(inverse(one), one), 1e-15);
  expect_coords(inverse(diag({2, 4})), {0.5, 0, 0.25}, 1e-15);
  Rng rng(56);
  for (const auto& alg : backends()) {
    const Element x = random_positive(alg, 100.0, rng);
    EXPECT_LT(rel_dev(jordan_product(x, inverse(x)), identity(alg)), 1e-10) << alg.label();
  }
}

TEST(Inverse, SingularReportsSmallestEigenvalue) {
  try {
    inverse(diag({3, 0}));
    FAIL() << "expected a singularity error";
  } catch (const SingularError& e) {
    EXPECT_NE(std::string(e.what()).find("min |eigenvalue| = 0"), std::string::npos);
  }
}

TEST(IsPositive, Examples) {
  EXPECT_TRUE(is_positive(identity(AlgebraDescriptor::sym(2)), 0.0));
  EXPECT_FALSE(is_positive(diag({1, -1}), 0.0));
  Rng rng(57);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) EXPECT_TRUE(is_positive(random_square(alg, rng), 1e-10)) << alg.label();
  }
}

TEST(Monotonicity, LogAndFractionalPowers) {
  Rng rng(58);
  for (const auto& alg : backends()) {
    for (int t = 0; t < 20; ++t) {
      const Element a = random_positive(alg, 100.0, rng);
      const Element b = a + random_square(alg, rng);
      EXPECT_TRUE(loewner_leq(log(a), log(b), 1e-8).verdict) << alg.label();
      for (double p : {0.25, 0.5, 0.75}) EXPECT_TRUE(loewner_leq(power(a, p), power(b, p), 1e-8).verdict);
    }
  }
}
