#include <numbers>

#include "support.hpp"

using namespace testing_support;

namespace {

// Non-commuting fixtures; reference values come from an eigh-based
// evaluation of the defining formulas in an independent numerics stack.
Element a2() { return sym_rows({{2, 0.5}, {0.5, 1}}); }
Element b2() { return sym_rows({{3, -0.25}, {-0.25, 2}}); }
Element c3() { return sym_rows({{4, 1, 0.5}, {1, 3, -0.2}, {0.5, -0.2, 2}}); }
Element d3() { return sym_rows({{2, 0.3, 0}, {0.3, 5, 1}, {0, 1, 3}}); }

const double e = std::numbers::e;

}  // namespace

TEST(HarmonicMean, Examples) {
  const Element a = a2();
  EXPECT_LT(rel_dev(harmonic_mean(a, a, 0.3), a), 1e-14);
  EXPECT_LT(rel_dev(harmonic_mean(a, b2(), 0.0), a), 1e-14);
  EXPECT_LT(rel_dev(harmonic_mean(a, b2(), 1.0), b2()), 1e-14);
  expect_coords(harmonic_mean(diag({1, 1}), diag({3, 1}), 0.5), {1.5, 0, 1}, 1e-15);
  expect_coords(harmonic_mean(c3(), d3(), 0.3),
                {3.0629283828227569, 0.73479284978651904, 0.31195043628555108, 3.2665579887697982,
                 -0.067557037866817882, 2.1400124795284565},
                1e-13);
  EXPECT_THROW(harmonic_mean(diag({1, -1}), diag({1, 1}), 0.5), PositivityError);
}

TEST(GeometricMean, Examples) {
  EXPECT_LT(rel_dev(geometric_mean(a2(), a2(), 0.4), a2()), 1e-14);
  expect_coords(geometric_mean(scalar(1), scalar(9), 0.5), {3}, 1e-15);
  EXPECT_LT(rel_dev(geometric_mean(a2(), identity(a2().algebra()), 0.5), power(a2(), 0.5)), 1e-14);
  expect_coords(geometric_mean(a2(), b2(), 0.5), {2.3891343795011029, 0.23983968172235129, 1.3732891463270132},
                1e-13);
}

TEST(AbGeometricMean, Examples) {
  EXPECT_LT(rel_dev(ab_geometric_mean(a2(), b2(), 0.0, 2.0), power(a2(), 2.0)), 1e-13);
  EXPECT_LT(rel_dev(ab_geometric_mean(a2(), b2(), 1.0, 1.0), b2()), 1e-13);
  expect_coords(ab_geometric_mean(diag({1, 4}), diag({2, 8}), 0.5, 1.0), {std::sqrt(2.0), 0, std::sqrt(32.0)},
                1e-15);
  EXPECT_THROW(ab_geometric_mean(a2(), b2(), 0.5, 0.0), ParameterError);
}

TEST(RelEntropy, Examples) {
  expect_coords(rel_entropy(a2(), a2()), {0, 0, 0}, 1e-14);
  expect_coords(rel_entropy(scalar(1), scalar(e)), {1}, 1e-15);
  expect_coords(rel_entropy(diag({1, 2}), diag({e, 2 * e * e})), {1, 0, 4}, 1e-14);
  expect_coords(rel_entropy(a2(), b2()), {0.62576382839490396, -0.36497902680290317, 0.57359190614826616}, 1e-13);
  expect_coords(rel_entropy(c3(), d3()),
                {-2.8071086342555636, -0.82795679042659642, -0.58818354741484291, 1.1589078037062928,
                 0.62561320712959345, 0.59654255962701463},
                1e-13);
}

TEST(RelEntropy, XlogxFormAgrees) {
  EXPECT_LT(rel_dev(rel_entropy_xlogx(c3(), d3()), rel_entropy(c3(), d3())), 1e-13);
}

TEST(Tsallis, Examples) {
  expect_coords(tsallis(a2(), a2(), 0.5), {0, 0, 0}, 1e-14);
  EXPECT_LT(rel_dev(tsallis(a2(), b2(), 1.0), b2() - a2()), 1e-14);
  expect_coords(tsallis(scalar(1), scalar(4), 0.5), {2}, 1e-15);
  expect_coords(tsallis(a2(), b2(), 0.5), {0.7782687590022036, -0.52032063655529781, 0.74657829265402564}, 1e-13);
  expect_coords(tsallis(c3(), d3(), 0.3),
                {-2.5257335610319052, -0.77468317335077275, -0.55142124595431175, 1.364354267005228,
                 0.76557559701726519, 0.69519134721199616},
                1e-12);
  EXPECT_THROW(tsallis(a2(), b2(), 0.0), ParameterError);
}

TEST(RelEntropyAb, Examples) {
  const Element b = b2();
  const Element one = identity(b.algebra());
  EXPECT_LT(rel_dev(rel_entropy_ab(one, b, 0.7, 1.3), jordan_product(power(b, 0.7), log(b))), 1e-13);
  expect_coords(rel_entropy_ab(a2(), power(a2(), 2.0), 0.5, 2.0), {0, 0, 0}, 1e-13);
  expect_coords(rel_entropy_ab(a2(), b2(), 0.5, 2.0),
                {-1.2622479228334975, -1.6745778146311328, 0.67830083148079645}, 1e-12);
  EXPECT_LT(rel_dev(rel_entropy_ab(c3(), d3(), 0.0, 1.0), rel_entropy(c3(), d3())), 1e-13);
}

TEST(TsallisLb, Examples) {
  expect_coords(tsallis_lb(c3(), d3(), 0.3, 0.5),
                {0.020784602167220823, 0.034437877926335875, -0.11879275895713338, 2.0763697865479891,
                 0.5396601476219326, 1.1181566302741328},
                1e-12);
  EXPECT_LT(rel_dev(tsallis_lb(c3(), d3(), 0.3, 1.0), tsallis(c3(), d3(), 0.3)), 1e-13);
}

TEST(LnLambda, Examples) {
  EXPECT_DOUBLE_EQ(ln_lambda(1.0, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(ln_lambda(3.5, 1.0), 2.5);
  EXPECT_DOUBLE_EQ(ln_lambda(4.0, 0.5), 2.0);
  EXPECT_THROW(ln_lambda(2.0, 0.0), ParameterError);
}

TEST(Bound, Examples) {
  const Element a = a2();
  EntropyParams p;
  p.alpha = 0.5;
  p.beta = 1.0;
  expect_coords(bound_expr(BoundKind::I, a, a, p), {0, 0, 0}, 1e-14);
  expect_coords(bound_expr(BoundKind::III, a, a, p), {0, 0, 0}, 1e-14);
  p.alpha = 0.0;
  expect_coords(bound_expr(BoundKind::V, scalar(1), scalar(e * e), p), {0.5 * (e * e - 1.0 / (e * e))}, 1e-15);
}

TEST(Bound, MissingParametersAreRejected) {
  EntropyParams p;
  p.beta = 1.0;
  EXPECT_THROW(bound_expr(BoundKind::I, a2(), b2(), p), ParameterError);
  p.alpha = 0.0;
  EXPECT_THROW(bound_expr(BoundKind::Id, a2(), b2(), p), ParameterError);
  EXPECT_THROW(bound_expr(BoundKind::IV, a2(), b2(), p), ParameterError);
  p.delta = 2.0;
  EXPECT_NO_THROW(bound_expr(BoundKind::Id, a2(), b2(), p));
  EXPECT_THROW(parse_bound("VI"), UnknownId);
}

TEST(Bound, ScalarFormsMatchClosedForms) {
  // a = 1, b = x: every bound reduces to a scalar function of x.
  const double x = 3.7;
  const double al = 0.5;
  EntropyParams p;
  p.alpha = al;
  p.beta = 1.0;
  p.delta = 2.0;
  p.lambda = 0.4;
  auto at = [&](BoundKind k) { return bound_expr(k, scalar(1), scalar(x), p)[0]; };
  const double xa = std::pow(x, al);
  EXPECT_NEAR(at(BoundKind::I), 2.0 * (1.0 - 2.0 / (1.0 + x)) * xa, 1e-14);
  EXPECT_NEAR(at(BoundKind::II), 4.0 * xa - 8.0 * xa / (std::sqrt(x) + 1.0), 1e-13);
  EXPECT_NEAR(at(BoundKind::III), std::pow(x, al + 0.5) - std::pow(x, al - 0.5), 1e-14);
  EXPECT_NEAR(at(BoundKind::V), 0.5 * (std::pow(x, al + 1.0) - std::pow(x, al - 1.0)), 1e-14);
  EXPECT_NEAR(at(BoundKind::IV), 0.5 * (std::pow(x, 0.4) - std::pow(x, -0.6) + x - 1.0), 1e-14);
  using F = ScalarBoundFamily;
  EXPECT_NEAR(at(BoundKind::Id), scalar_bound_eval(F::RDelta, x, al, 2.0), 1e-13);
  EXPECT_NEAR(at(BoundKind::IId), scalar_bound_eval(F::SDelta, x, al, 2.0), 1e-13);
  EXPECT_NEAR(at(BoundKind::IIId), scalar_bound_eval(F::JDelta, x, al, 2.0), 1e-13);
  EXPECT_NEAR(at(BoundKind::Vd), scalar_bound_eval(F::KDelta, x, al, 2.0), 1e-13);
}

TEST(ScalarBounds, Examples) {
  using F = ScalarBoundFamily;
  for (auto f : {F::RDelta, F::SDelta, F::Q, F::JDelta, F::KDelta}) {
    EXPECT_NEAR(scalar_bound_eval(f, 1.0, 0.7, 1.0), 0.0, 1e-15) << family_name(f);
  }
  EXPECT_NEAR(scalar_bound_eval(F::Q, 2.0, 0.0, 1.0), std::log(2.0), 1e-15);
  const double r = scalar_bound_eval(F::RDelta, 2.0, 0.0, 1.0);
  const double s = scalar_bound_eval(F::SDelta, 2.0, 0.0, 1.0);
  const double q = scalar_bound_eval(F::Q, 2.0, 0.0, 1.0);
  const double j = scalar_bound_eval(F::JDelta, 2.0, 0.0, 1.0);
  const double k = scalar_bound_eval(F::KDelta, 2.0, 0.0, 1.0);
  EXPECT_NEAR(r, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s, 4.0 - 8.0 / (std::sqrt(2.0) + 1.0), 1e-15);
  EXPECT_NEAR(j, std::sqrt(2.0) - 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(k, 0.75, 1e-15);
  EXPECT_LT(r, s);
  EXPECT_LT(s, q);
  EXPECT_LT(q, j);
  EXPECT_LT(j, k);
  EXPECT_THROW(scalar_bound_eval(F::Q, 0.0, 0.0, 1.0), ParameterError);
  EXPECT_THROW(scalar_bound_eval(F::Q, 1.0, -0.5, 1.0), ParameterError);
}

TEST(ClosedFormChain, ScalarValues) {
  // a = 1, b = e: the closed-form bounds of S around S = 1.
  const std::vector<double> want{1 - 1 / e,
                                 2 * (e - 1) / (e + 1),
                                 4 - 8 / (std::sqrt(e) + 1),
                                 1,
                                 std::sqrt(e) - 1 / std::sqrt(e),
                                 0.5 * (e - 1 / e),
                                 e - 1};
  const Pair p{scalar(1), scalar(e)};
  const std::vector<double> got{expr::low_end(p)[0], expr::lit_I(p)[0], expr::lit_II(p)[0],
                                rel_entropy(p.a, p.b)[0], expr::lit_III(p)[0], expr::lit_V(p)[0],
                                (p.b - p.a)[0]};
  const std::vector<double> rounded{0.632, 0.924, 0.980, 1.0, 1.042, 1.175, 1.718};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], 1e-14) << i;
    EXPECT_NEAR(got[i], rounded[i], 6e-4) << i;
    if (i > 0) {
      EXPECT_LT(got[i - 1], got[i]);
    }
  }
}

class MeansProperties : public ::testing::TestWithParam<AlgebraDescriptor> {};

TEST_P(MeansProperties, Homogeneity) {
  Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    const Element a = random_positive(GetParam(), 100.0, rng);
    const Element b = random_positive(GetParam(), 100.0, rng);
    const double c = std::exp(uniform(rng, -2.0, 2.0));
    EXPECT_LT(rel_dev(rel_entropy(c * a, c * b), c * rel_entropy(a, b)), 1e-9);
    EXPECT_LT(rel_dev(tsallis(c * a, c * b, 0.3), c * tsallis(a, b, 0.3)), 1e-9);
  }
}

TEST_P(MeansProperties, CongruenceInvariance) {
  Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    const Element a = random_positive(GetParam(), 100.0, rng);
    const Element b = random_positive(GetParam(), 100.0, rng);
    const Element c = random_invertible(GetParam(), rng);
    const Element lhs = rel_entropy(quad_map(c, a), quad_map(c, b));
    EXPECT_LT(jb_norm(lhs - quad_map(c, rel_entropy(a, b))) / (1.0 + jb_norm(lhs)), 1e-8);
    const Element tl = tsallis(quad_map(c, a), quad_map(c, b), 0.6);
    EXPECT_LT(jb_norm(tl - quad_map(c, tsallis(a, b, 0.6))) / (1.0 + jb_norm(tl)), 1e-8);
  }
}

TEST_P(MeansProperties, MonotoneInSecondSlot) {
  Rng rng(63);
  for (int t = 0; t < 30; ++t) {
    const Element a = random_positive(GetParam(), 100.0, rng);
    const Element b = random_positive(GetParam(), 100.0, rng);
    const Element c = b + random_square(GetParam(), rng);
    EXPECT_TRUE(loewner_leq(rel_entropy(a, b), rel_entropy(a, c), 1e-8).verdict);
    EXPECT_TRUE(loewner_leq(tsallis(a, b, 0.5), tsallis(a, c, 0.5), 1e-8).verdict);
  }
}

TEST_P(MeansProperties, MidpointConcavityInEachSlot) {
  Rng rng(64);
  for (int t = 0; t < 30; ++t) {
    const Element a = random_positive(GetParam(), 100.0, rng);
    const Element b1 = random_positive(GetParam(), 100.0, rng);
    const Element b2 = random_positive(GetParam(), 100.0, rng);
    const Element mid = 0.5 * (b1 + b2);
    EXPECT_TRUE(loewner_leq(0.5 * (rel_entropy(a, b1) + rel_entropy(a, b2)), rel_entropy(a, mid), 1e-8).verdict);
    EXPECT_TRUE(loewner_leq(0.5 * (rel_entropy(b1, a) + rel_entropy(b2, a)), rel_entropy(mid, a), 1e-8).verdict);
  }
}

TEST_P(MeansProperties, LowerAndUpperEnds) {
  // A - {A B^-1 A} <= S(A|B) <= B - A for any positive pair.
  Rng rng(65);
  for (int t = 0; t < 30; ++t) {
    const Pair p{random_positive(GetParam(), 100.0, rng), random_positive(GetParam(), 100.0, rng)};
    const Element s = rel_entropy(p.a, p.b);
    EXPECT_TRUE(loewner_leq(expr::low_end(p), s, 1e-8).verdict);
    EXPECT_TRUE(loewner_leq(s, p.b - p.a, 1e-8).verdict);
  }
}

INSTANTIATE_TEST_SUITE_P(AllBackends, MeansProperties, ::testing::ValuesIn(all_backends()),
                         [](const auto& info) { return info.param.label(); });
