#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jordan/harness.hpp"
#include "jordan/means.hpp"
#include "jordan/quadrature.hpp"
#include "jordan/scalar_bounds.hpp"

// Registry of every inequality chain, identity, concavity statement and
// algebra axiom checked by randomized trials.
namespace jordan {

enum class EntryKind { Chain, Scalar, Concavity, Identity, Axiom };

inline std::string_view kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::Chain: return "chain";
    case EntryKind::Scalar: return "scalar";
    case EntryKind::Concavity: return "concavity";
    case EntryKind::Identity: return "identity";
    case EntryKind::Axiom: return "axiom";
  }
  return "?";
}

struct ParamGrid {
  std::vector<double> alpha{0.0, 0.5, 1.0, 2.0};
  std::vector<double> beta{0.5, 1.0, 2.0};
  std::vector<double> lambda{0.1, 0.5, 0.9, 1.0};
  std::vector<double> delta_ge{1.0, 2.0, 5.0};
  std::vector<double> delta_le{0.2, 0.5, 1.0};
};

struct VerifyOptions {
  std::optional<std::int64_t> trials;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::optional<double> cond;
  bool negative_control = false;
  ParamGrid grid;
  QuadratureConfig quad;
  std::optional<int> threads;  // default: JE_THREADS
};

enum class DeltaBranch { None, AtLeastOne, AtMostOne };

/// Which grids an entry draws from. `open_lambda` drops lambda = 1.
struct ParamUse {
  bool alpha = false;
  bool beta = false;
  bool lambda = false;
  bool open_lambda = false;
  DeltaBranch delta = DeltaBranch::None;
};

struct TrialContext {
  const AlgebraDescriptor& alg;
  std::int64_t trial;
  Rng rng;
  TrialParams params;
  double cond;
  bool negative;
  const VerifyOptions& opts;
  TrialOutcome& out;

  void keep(std::string name, const Element& e) { out.elements.emplace_back(std::move(name), e); }
  double alpha() const { return params.alpha.value_or(0.0); }
  double beta() const { return params.beta.value_or(1.0); }
  double lambda() const { return params.lambda.value_or(0.5); }
  double delta() const { return params.delta.value_or(1.0); }
};

struct Entry {
  std::string id;
  EntryKind kind = EntryKind::Chain;
  std::string summary;
  std::vector<std::string> links;
  std::vector<std::optional<double>> fixed_tol;  // per link; empty entry uses the run tol
  double default_tol = 1e-8;
  double default_cond = 1e4;
  std::int64_t default_trials = 500;
  std::vector<AlgebraDescriptor> backends;
  std::vector<AlgebraDescriptor> exploratory;  // run on request, never gated
  ParamUse use;
  bool negative_control = false;  // a hypothesis-violating sampler exists
  std::function<std::vector<LinkSample>(TrialContext&)> run;
};

// ---------------------------------------------------------------------------
// Backends

inline std::vector<AlgebraDescriptor> all_backends() {
  return {AlgebraDescriptor::sym(2),  AlgebraDescriptor::sym(3),  AlgebraDescriptor::sym(4),
          AlgebraDescriptor::sym(6),  AlgebraDescriptor::sym(8),  AlgebraDescriptor::spin(1),
          AlgebraDescriptor::spin(2), AlgebraDescriptor::spin(4), AlgebraDescriptor::spin(8),
          AlgebraDescriptor::albert()};
}

inline std::vector<AlgebraDescriptor> special_backends() {
  auto all = all_backends();
  all.pop_back();
  return all;
}

// ---------------------------------------------------------------------------
// Samplers

/// How B relates to delta * A^beta.
enum class Hypothesis { None, PowerBelow, PowerAbove };

struct Pair {
  Element a;
  Element b;
};

namespace detail {

/// G o G rescaled so its norm is `size`.
inline Element scaled_square(const AlgebraDescriptor& alg, Rng& rng, double size) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Element g2 = random_square(alg, rng);
    const double n = jb_norm(g2);
    if (n > 0.0) return (size / n) * g2;
  }
  throw SamplerError("could not draw a nonzero square");
}

inline double root_cond(double cond, double beta) { return std::pow(cond, 1.0 / std::max(1.0, beta)); }

}  // namespace detail

/// Draws (A, B) satisfying the hypothesis by construction: B = delta A^beta + G^2
/// for PowerBelow, delta A^beta = B + G^2 for PowerAbove. Every tenth trial
/// takes G = 0. A negative control swaps the direction and never takes G = 0.
inline Pair sample_pair(TrialContext& ctx, Hypothesis h, double beta, double delta) {
  const AlgebraDescriptor& alg = ctx.alg;
  const bool equality = !ctx.negative && ctx.trial % 10 == 0;
  if (ctx.negative) {
    if (h == Hypothesis::PowerBelow) h = Hypothesis::PowerAbove;
    else if (h == Hypothesis::PowerAbove) h = Hypothesis::PowerBelow;
  }
  const double tol = 1e-8;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double size = std::pow(10.0, uniform(ctx.rng, -3.0, 1.0));
    switch (h) {
      case Hypothesis::None: {
        Element a = random_positive(alg, detail::root_cond(ctx.cond, beta), ctx.rng);
        Element b = random_positive(alg, ctx.cond, ctx.rng);
        return {std::move(a), std::move(b)};
      }
      case Hypothesis::PowerBelow: {
        Element a = random_positive(alg, detail::root_cond(ctx.cond, beta), ctx.rng);
        const Element target = delta * power(a, beta);
        if (equality) return {std::move(a), target};
        Element b = target + detail::scaled_square(alg, ctx.rng, size * jb_norm(target));
        const bool ok = ctx.negative ? !loewner_leq(b, target, tol).verdict
                                     : loewner_leq(target, b, tol).verdict;
        if (ok) return {std::move(a), std::move(b)};
        break;
      }
      case Hypothesis::PowerAbove: {
        Element b = random_positive(alg, std::pow(ctx.cond, std::min(1.0, beta)), ctx.rng);
        Element top = b;
        if (!equality) top = b + detail::scaled_square(alg, ctx.rng, size * jb_norm(b));
        Element a = power((1.0 / delta) * top, 1.0 / beta);
        const Element target = delta * power(a, beta);
        const bool ok = ctx.negative ? !loewner_leq(target, b, tol).verdict
                                     : loewner_leq(b, target, tol).verdict;
        if (ok) return {std::move(a), std::move(b)};
        break;
      }
    }
  }
  throw SamplerError("sampler could not satisfy the hypothesis on " + alg.label());
}

// ---------------------------------------------------------------------------
// Expression helpers

namespace expr {

inline Element mean(const Pair& p, double alpha, double beta) {
  return ab_geometric_mean(p.a, p.b, alpha, beta);
}

/// M(hi) - M(lo) for the (., beta)-geometric mean.
inline Element mean_gap(const Pair& p, double hi, double lo, double beta) {
  return mean(p, hi, beta) - mean(p, lo, beta);
}

inline Element bound(BoundKind k, const Pair& p, const TrialContext& ctx) {
  EntropyParams e;
  e.alpha = ctx.alpha();
  e.beta = ctx.beta();
  e.lambda = ctx.lambda();
  e.delta = ctx.delta();
  return bound_expr(k, p.a, p.b, e);
}

/// {A B^-1 A}
inline Element aba_inv(const Pair& p) { return quad_map(p.a, inverse(p.b)); }

/// A - {A B^-1 A}
inline Element low_end(const Pair& p) { return p.a - aba_inv(p); }

/// 2 (A - 2 {A (A + B)^-1 A})
inline Element lit_I(const Pair& p) {
  return 2.0 * affine(p.a, quad_map(p.a, inverse(p.a + p.b)), 1.0, -2.0);
}

/// 4A - 8 {A (A #_1/2 B + A)^-1 A}
inline Element lit_II(const Pair& p) {
  const Element g = geometric_mean(p.a, p.b, 0.5);
  return affine(p.a, quad_map(p.a, inverse(g + p.a)), 4.0, -8.0);
}

/// A #_1/2 B - A #_-1/2 B
inline Element lit_III(const Pair& p) {
  return geometric_mean(p.a, p.b, 0.5) - geometric_mean(p.a, p.b, -0.5);
}

/// (B - {A B^-1 A}) / 2
inline Element lit_V(const Pair& p) { return 0.5 * (p.b - aba_inv(p)); }

/// (ln d) A + 2 [A - 2d {A (dA + B)^-1 A}]
inline Element lit_Id(const Pair& p, double d) {
  const Element inner = quad_map(p.a, inverse(d * p.a + p.b));
  return std::log(d) * p.a + 2.0 * affine(p.a, inner, 1.0, -2.0 * d);
}

/// (ln d + 4) A - 8 sqrt(d) {A (A #_1/2 B + sqrt(d) A)^-1 A}
inline Element lit_IId(const Pair& p, double d) {
  const double rd = std::sqrt(d);
  const Element g = geometric_mean(p.a, p.b, 0.5);
  return affine(p.a, quad_map(p.a, inverse(g + rd * p.a)), std::log(d) + 4.0, -8.0 * rd);
}

/// (A #_1/2 B / sqrt(d) - sqrt(d) A #_-1/2 B) + (ln d) A
inline Element lit_IIId(const Pair& p, double d) {
  const double rd = std::sqrt(d);
  return affine(geometric_mean(p.a, p.b, 0.5), geometric_mean(p.a, p.b, -0.5), 1.0 / rd, -rd) +
         std::log(d) * p.a;
}

/// (B / d - d {A B^-1 A}) / 2 + (ln d) A
inline Element lit_Vd(const Pair& p, double d) {
  return 0.5 * affine(p.b, aba_inv(p), 1.0 / d, -d) + std::log(d) * p.a;
}

}  // namespace expr

// ---------------------------------------------------------------------------
// Chain entries

using Term = std::pair<std::string, std::function<Element(const Pair&, const TrialContext&)>>;

struct ChainDef {
  std::string id;
  std::string summary;
  Hypothesis hypothesis = Hypothesis::None;
  ParamUse use;
  std::optional<double> fixed_beta;  // operands sampled for this beta
  std::vector<Term> terms;
  std::vector<std::pair<int, int>> pairs;  // empty: consecutive terms
};

inline Entry make_chain(ChainDef def) {
  Entry e;
  e.id = def.id;
  e.kind = EntryKind::Chain;
  e.summary = def.summary;
  e.backends = all_backends();
  e.use = def.use;
  e.negative_control = def.hypothesis != Hypothesis::None;
  if (def.pairs.empty()) {
    for (int i = 0; i + 1 < static_cast<int>(def.terms.size()); ++i) def.pairs.emplace_back(i, i + 1);
  }
  for (const auto& [lo, hi] : def.pairs) e.links.push_back(def.terms[lo].first + " <= " + def.terms[hi].first);
  e.fixed_tol.assign(e.links.size(), std::nullopt);
  e.run = [def = std::move(def)](TrialContext& ctx) {
    if (def.fixed_beta) ctx.params.beta = *def.fixed_beta;
    const double beta = ctx.beta();
    const double delta = def.use.delta == DeltaBranch::None ? 1.0 : ctx.delta();
    const Pair p = sample_pair(ctx, def.hypothesis, beta, delta);
    ctx.keep("A", p.a);
    ctx.keep("B", p.b);
    std::vector<Element> values;
    values.reserve(def.terms.size());
    for (const auto& term : def.terms) values.push_back(term.second(p, ctx));
    std::vector<LinkSample> out;
    for (const auto& [lo, hi] : def.pairs) out.push_back(order_link(values[lo], values[hi]));
    return out;
  };
  return e;
}

inline Term term_bound(BoundKind k) {
  return {std::string(bound_name(k)), [k](const Pair& p, const TrialContext& c) { return expr::bound(k, p, c); }};
}

inline Term term_S_ab() {
  return {"S_ab", [](const Pair& p, const TrialContext& c) {
            return rel_entropy_ab(p.a, p.b, c.alpha(), c.beta());
          }};
}

inline Term term_gap(std::string label, double dhi, double dlo) {
  return {std::move(label), [dhi, dlo](const Pair& p, const TrialContext& c) {
            return expr::mean_gap(p, c.alpha() + dhi, c.alpha() + dlo, c.beta());
          }};
}

inline Term term_fixed_gap(std::string label, double hi, double lo) {
  return {std::move(label), [hi, lo](const Pair& p, const TrialContext& c) {
            return expr::mean_gap(p, hi, lo, c.beta());
          }};
}

inline Term term_plain(std::string label, Element (*f)(const Pair&)) {
  return {std::move(label), [f](const Pair& p, const TrialContext&) { return f(p); }};
}

inline Term term_delta(std::string label, Element (*f)(const Pair&, double)) {
  return {std::move(label), [f](const Pair& p, const TrialContext& c) { return f(p, c.delta()); }};
}

inline Term term_S() {
  return {"S", [](const Pair& p, const TrialContext&) { return rel_entropy(p.a, p.b); }};
}

inline Term term_T_lb(std::string label, double sign) {
  return {std::move(label), [sign](const Pair& p, const TrialContext& c) {
            return tsallis_lb(p.a, p.b, sign * c.lambda(), c.beta());
          }};
}

inline std::vector<Entry> chain_entries() {
  using BK = BoundKind;
  const ParamUse ab{true, true, false, false, DeltaBranch::None};
  const ParamUse ab_ge{true, true, false, false, DeltaBranch::AtLeastOne};
  const ParamUse ab_le{true, true, false, false, DeltaBranch::AtMostOne};
  const ParamUse lb{false, true, true, false, DeltaBranch::None};
  const ParamUse none{};
  const ParamUse d_ge{false, false, false, false, DeltaBranch::AtLeastOne};
  const ParamUse d_le{false, false, false, false, DeltaBranch::AtMostOne};
  const ParamUse lam{false, false, true, false, DeltaBranch::None};

  const Term lo_gap = term_gap("M(a)-M(a-1)", 0.0, -1.0);
  const Term hi_gap = term_gap("M(a+1)-M(a)", 1.0, 0.0);
  const Term low = term_plain("A-{AB^-1A}", expr::low_end);
  const Term top = term_plain("B-A", [](const Pair& p) { return p.b - p.a; });
  const Term lI = term_plain("2(A-2{A(A+B)^-1A})", expr::lit_I);
  const Term lII = term_plain("4A-8{A(A#B+A)^-1A}", expr::lit_II);
  const Term lIII = term_plain("A#B-A#_-1/2B", expr::lit_III);
  const Term lV = term_plain("(B-{AB^-1A})/2", expr::lit_V);
  const Term lId = term_delta("I'(lit)", expr::lit_Id);
  const Term lIId = term_delta("II'(lit)", expr::lit_IId);
  const Term lIIId = term_delta("III'(lit)", expr::lit_IIId);
  const Term lVd = term_delta("V'(lit)", expr::lit_Vd);

  std::vector<Entry> out;
  auto add = [&](ChainDef d) { out.push_back(make_chain(std::move(d))); };

  add({"prop4.3i", "mean gaps bracket I", Hypothesis::None, ab, {}, {lo_gap, term_bound(BK::I), hi_gap}, {}});
  add({"prop4.3ii", "mean gaps bracket V", Hypothesis::None, ab, {}, {lo_gap, term_bound(BK::V), hi_gap}, {}});
  add({"prop4.3iii", "lowest mean gap", Hypothesis::None, ab, {},
       {term_fixed_gap("M(0)-M(-1)", 0.0, -1.0), lo_gap}, {}});
  add({"thm4.6i", "I <= II <= S_ab <= III <= V when A^b <= B", Hypothesis::PowerBelow, ab, {},
       {term_bound(BK::I), term_bound(BK::II), term_S_ab(), term_bound(BK::III), term_bound(BK::V)}, {}});
  add({"thm4.6ii", "V <= III <= S_ab <= II <= I when A^b >= B", Hypothesis::PowerAbove, ab, {},
       {term_bound(BK::V), term_bound(BK::III), term_S_ab(), term_bound(BK::II), term_bound(BK::I)}, {}});
  add({"cor4.7i", "mean gaps around the A^b <= B chain", Hypothesis::PowerBelow, ab, {},
       {lo_gap, term_bound(BK::I), term_bound(BK::II), term_S_ab(), term_bound(BK::III),
        term_bound(BK::V), hi_gap},
       {}});
  add({"cor4.7ii", "mean gaps around the A^b >= B chain", Hypothesis::PowerAbove, ab, {},
       {lo_gap, term_bound(BK::V), term_bound(BK::III), term_S_ab(), term_bound(BK::II),
        term_bound(BK::I), hi_gap},
       {}});
  add({"cor4.8i", "closed-form bounds of S when A <= B", Hypothesis::PowerBelow, none, 1.0,
       {low, lI, lII, term_S(), lIII, lV, top}, {}});
  add({"cor4.8ii", "closed-form bounds of S when A >= B", Hypothesis::PowerAbove, none, 1.0,
       {low, lV, lIII, term_S(), lII, lI, top}, {}});
  add({"thm4.9i", "I' <= II' <= S_ab <= III' <= V' when d >= 1, dA^b <= B", Hypothesis::PowerBelow,
       ab_ge, {},
       {term_bound(BK::Id), term_bound(BK::IId), term_S_ab(), term_bound(BK::IIId), term_bound(BK::Vd)},
       {}});
  add({"thm4.9ii", "II <= II' and III' <= III when d >= 1, dA^b <= B", Hypothesis::PowerBelow, ab_ge, {},
       {term_bound(BK::II), term_bound(BK::IId), term_bound(BK::IIId), term_bound(BK::III)},
       {{0, 1}, {2, 3}}});
  out.back().negative_control = false;  // holds for every x > 0, hypothesis or not
  add({"thm4.9iii", "V' <= III' <= S_ab <= II' <= I' when d <= 1, dA^b >= B", Hypothesis::PowerAbove,
       ab_le, {},
       {term_bound(BK::Vd), term_bound(BK::IIId), term_S_ab(), term_bound(BK::IId), term_bound(BK::Id)},
       {}});
  add({"thm4.9iv", "II' <= II and III <= III' when d <= 1, dA^b >= B", Hypothesis::PowerAbove, ab_le, {},
       {term_bound(BK::IId), term_bound(BK::II), term_bound(BK::III), term_bound(BK::IIId)},
       {{0, 1}, {2, 3}}});
  out.back().negative_control = false;
  add({"cor4.10i", "refined closed-form bounds of S when d >= 1, dA <= B", Hypothesis::PowerBelow, d_ge,
       1.0, {low, lI, lId, lIId, term_S(), lIIId, lVd, lV, top}, {}});
  add({"cor4.10ii", "refined closed-form bounds of S when d <= 1, dA >= B", Hypothesis::PowerAbove, d_le,
       1.0, {low, lV, lVd, lIIId, term_S(), lIId, lId, lI, top}, {}});
  add({"tsallis-order", "T_-l,b <= S_0,b <= T_l,b", Hypothesis::None, lb, {},
       {term_T_lb("T_-l,b", -1.0),
        {"S_0,b", [](const Pair& p, const TrialContext& c) { return rel_entropy_ab(p.a, p.b, 0.0, c.beta()); }},
        term_T_lb("T_l,b", 1.0)},
       {}});
  {
    // Tsallis bounds plus both directions of "T = 0 iff A^b = B".
    Entry e = make_chain({"tsallis-bounds", "mean gaps bracket T_l,b", Hypothesis::None, lb, {},
                          {term_fixed_gap("M(0)-M(-1)", 0.0, -1.0), term_T_lb("T_l,b", 1.0),
                           term_fixed_gap("M(1)-M(0)", 1.0, 0.0)},
                          {}});
    e.links.push_back("A^b=B => T=0");
    e.links.push_back("T=0 => A^b=B");
    e.fixed_tol.push_back(0.0);
    e.fixed_tol.push_back(0.0);
    auto chain = e.run;
    e.run = [chain](TrialContext& ctx) {
      std::vector<LinkSample> out = chain(ctx);
      const double beta = ctx.beta();
      const double lam = ctx.lambda();
      constexpr double kEq = 1e-6;
      // Operands with A^b = B exactly, and with B a tiny perturbation of A^b.
      const Element a = random_positive(ctx.alg, detail::root_cond(ctx.cond, beta), ctx.rng);
      const Element ab = power(a, beta);
      const Element t_eq = tsallis_lb(a, ab, lam, beta);
      const double s_eq = 1.0 + jb_norm(ab);
      out.push_back({kEq - jb_norm(t_eq) / s_eq, true});
      const double eps = std::pow(10.0, uniform(ctx.rng, -12.0, -9.0));
      const Element b = ab + detail::scaled_square(ctx.alg, ctx.rng, eps * jb_norm(ab));
      const Element t = tsallis_lb(a, b, lam, beta);
      const double scale = 1.0 + std::max(jb_norm(ab), jb_norm(b));
      if (jb_norm(t) <= 1e-9 * scale) {
        out.push_back({kEq - jb_norm(ab - b) / scale, true});
      } else {
        out.push_back({0.0, false});
      }
      return out;
    };
    out.push_back(std::move(e));
  }
  add({"iv-bounds-i", "T_l,b below IV when A^b <= B", Hypothesis::PowerBelow, lb, {},
       {term_fixed_gap("M(0)-M(-1)", 0.0, -1.0),
        {"M(l)-M(l-1)", [](const Pair& p, const TrialContext& c) {
           return expr::mean_gap(p, c.lambda(), c.lambda() - 1.0, c.beta());
         }},
        term_T_lb("T_l,b", 1.0), term_bound(BK::IV), term_fixed_gap("M(1)-M(0)", 1.0, 0.0)},
       {}});
  add({"iv-bounds-ii", "IV below T_l,b when B <= A^b", Hypothesis::PowerAbove, lb, {},
       {term_fixed_gap("M(0)-M(-1)", 0.0, -1.0),
        {"M(l)-M(l-1)", [](const Pair& p, const TrialContext& c) {
           return expr::mean_gap(p, c.lambda(), c.lambda() - 1.0, c.beta());
         }},
        term_bound(BK::IV), term_T_lb("T_l,b", 1.0), term_fixed_gap("M(1)-M(0)", 1.0, 0.0)},
       {}});
  add({"remark4.15", "A - {AB^-1A} <= T_l <= B - A", Hypothesis::None, lam, 1.0,
       {low, {"T_l", [](const Pair& p, const TrialContext& c) { return tsallis(p.a, p.b, c.lambda()); }}, top},
       {}});
  return out;
}

// ---------------------------------------------------------------------------
// Scalar chains over dense x-grids

inline Entry make_scalar(std::string id, std::string summary, DeltaBranch branch,
                         std::vector<std::pair<std::string, std::function<double(double, double, double)>>> fs,
                         std::vector<std::pair<int, int>> pairs) {
  Entry e;
  e.id = std::move(id);
  e.kind = EntryKind::Scalar;
  e.summary = std::move(summary);
  e.backends = {AlgebraDescriptor::sym(1)};
  e.use = {true, false, false, false, branch};
  e.negative_control = true;
  if (pairs.empty()) {
    for (int i = 0; i + 1 < static_cast<int>(fs.size()); ++i) pairs.emplace_back(i, i + 1);
  }
  for (const auto& [lo, hi] : pairs) e.links.push_back(fs[lo].first + " <= " + fs[hi].first);
  e.fixed_tol.assign(e.links.size(), std::nullopt);
  e.run = [fs, pairs, branch](TrialContext& ctx) {
    const double alpha = ctx.alpha();
    const double delta = ctx.delta();
    // Hypothesis region: x >= delta (delta >= 1) or x <= delta (delta <= 1).
    // A negative control samples the opposite side.
    const bool above = (branch == DeltaBranch::AtLeastOne) != ctx.negative;
    const double jitter = ctx.trial % 10 == 0 ? 0.0 : uniform(ctx.rng);
    constexpr int kPoints = 64;
    std::vector<LinkSample> out(pairs.size(), LinkSample{std::numeric_limits<double>::infinity(), true});
    double worst = std::numeric_limits<double>::infinity();
    double worst_x = delta;
    for (int k = 0; k < kPoints; ++k) {
      const double step = 4.0 * (k + jitter) / kPoints;
      const double x = delta * std::pow(10.0, above ? step : -step);
      std::vector<double> v;
      v.reserve(fs.size());
      for (const auto& f : fs) v.push_back(f.second(x, alpha, delta));
      for (std::size_t l = 0; l < pairs.size(); ++l) {
        const double lo = v[pairs[l].first];
        const double hi = v[pairs[l].second];
        const double m = (hi - lo) / (1.0 + std::max(std::abs(lo), std::abs(hi)));
        if (m < out[l].margin) out[l].margin = m;
        if (m < worst) {
          worst = m;
          worst_x = x;
        }
      }
    }
    ctx.keep("x", Element(AlgebraDescriptor::sym(1), {worst_x}));
    return out;
  };
  return e;
}

inline std::vector<Entry> scalar_entries() {
  using F = ScalarBoundFamily;
  auto fam = [](F f, std::string label, bool at_one) {
    return std::pair<std::string, std::function<double(double, double, double)>>{
        std::move(label), [f, at_one](double x, double a, double d) {
          return scalar_bound_eval(f, x, a, at_one ? 1.0 : d);
        }};
  };
  std::vector<Entry> out;
  out.push_back(make_scalar("prop4.5a", "r_d <= s_d <= q <= j_d <= k_d for x >= d >= 1", DeltaBranch::AtLeastOne,
                            {fam(F::RDelta, "r_d", false), fam(F::SDelta, "s_d", false), fam(F::Q, "q", false),
                             fam(F::JDelta, "j_d", false), fam(F::KDelta, "k_d", false)},
                            {}));
  out.push_back(make_scalar("prop4.5b", "s_1 <= s_d and j_d <= j_1 for x >= d >= 1", DeltaBranch::AtLeastOne,
                            {fam(F::SDelta, "s_1", true), fam(F::SDelta, "s_d", false),
                             fam(F::JDelta, "j_d", false), fam(F::JDelta, "j_1", true)},
                            {{0, 1}, {2, 3}}));
  out.back().negative_control = false;  // holds for every x > 0
  out.push_back(make_scalar("prop4.5c", "k_d <= j_d <= q <= s_d <= r_d for x <= d <= 1", DeltaBranch::AtMostOne,
                            {fam(F::KDelta, "k_d", false), fam(F::JDelta, "j_d", false), fam(F::Q, "q", false),
                             fam(F::SDelta, "s_d", false), fam(F::RDelta, "r_d", false)},
                            {}));
  out.push_back(make_scalar("prop4.5d", "s_d <= s_1 and j_1 <= j_d for x <= d <= 1", DeltaBranch::AtMostOne,
                            {fam(F::SDelta, "s_d", false), fam(F::SDelta, "s_1", true),
                             fam(F::JDelta, "j_1", true), fam(F::JDelta, "j_d", false)},
                            {{0, 1}, {2, 3}}));
  out.back().negative_control = false;
  return out;
}

// ---------------------------------------------------------------------------
// Concavity and monotonicity

namespace detail {

inline const std::vector<double>& concavity_weights() {
  static const std::vector<double> w{0.25, 0.5, 0.75};
  return w;
}

inline std::vector<std::string> weight_labels(const std::string& stem) {
  return {stem + " t=1/4", stem + " t=1/2", stem + " t=3/4"};
}

/// Entropy-like map selected by the entry: S or T_lambda.
using BinaryMap = std::function<Element(const Element&, const Element&, const TrialContext&)>;

inline BinaryMap entropy_map(bool tsallis_form) {
  if (tsallis_form) {
    return [](const Element& a, const Element& b, const TrialContext& c) { return tsallis(a, b, c.lambda()); };
  }
  return [](const Element& a, const Element& b, const TrialContext&) { return rel_entropy(a, b); };
}

}  // namespace detail

/// slot: 0 = first argument, 1 = second, 2 = both jointly.
inline Entry make_concavity(std::string id, std::string summary, bool tsallis_form, int slot) {
  Entry e;
  e.id = std::move(id);
  e.kind = EntryKind::Concavity;
  e.summary = std::move(summary);
  e.backends = slot == 2 ? special_backends() : all_backends();
  if (slot == 2) e.exploratory = {AlgebraDescriptor::albert()};
  e.use = {false, false, tsallis_form, false, DeltaBranch::None};
  e.links = detail::weight_labels("concave");
  e.fixed_tol.assign(e.links.size(), std::nullopt);
  const auto f = detail::entropy_map(tsallis_form);
  e.run = [f, slot](TrialContext& ctx) {
    const Element a1 = random_positive(ctx.alg, ctx.cond, ctx.rng);
    const Element b1 = random_positive(ctx.alg, ctx.cond, ctx.rng);
    const Element a2 = slot == 1 ? a1 : random_positive(ctx.alg, ctx.cond, ctx.rng);
    const Element b2 = slot == 0 ? b1 : random_positive(ctx.alg, ctx.cond, ctx.rng);
    ctx.keep("A1", a1);
    ctx.keep("B1", b1);
    ctx.keep("A2", a2);
    ctx.keep("B2", b2);
    const Element f1 = f(a1, b1, ctx);
    const Element f2 = f(a2, b2, ctx);
    std::vector<LinkSample> out;
    for (double t : detail::concavity_weights()) {
      const Element mixed = f(affine(a1, a2, t, 1.0 - t), affine(b1, b2, t, 1.0 - t), ctx);
      out.push_back(order_link(affine(f1, f2, t, 1.0 - t), mixed));
    }
    return out;
  };
  return e;
}

inline std::vector<Entry> concavity_entries() {
  std::vector<Entry> out;
  out.push_back(make_concavity("concave-S-first", "S concave in its first argument", false, 0));
  out.push_back(make_concavity("concave-S-second", "S concave in its second argument", false, 1));
  out.push_back(make_concavity("concave-T-first", "T_l concave in its first argument", true, 0));
  out.push_back(make_concavity("concave-T-second", "T_l concave in its second argument", true, 1));
  out.push_back(make_concavity("joint-S", "S jointly concave", false, 2));
  out.push_back(make_concavity("joint-T", "T_l jointly concave", true, 2));
  {
    Entry e;
    e.id = "concave-xlogx";
    e.kind = EntryKind::Concavity;
    e.summary = "-x log x operator concave";
    e.backends = all_backends();
    e.links = detail::weight_labels("concave");
    e.fixed_tol.assign(e.links.size(), std::nullopt);
    e.run = [](TrialContext& ctx) {
      const Element x = random_positive(ctx.alg, ctx.cond, ctx.rng);
      const Element y = random_positive(ctx.alg, ctx.cond, ctx.rng);
      ctx.keep("X", x);
      ctx.keep("Y", y);
      const auto f = fn::neg_xlogx();
      const Element fx = func_calculus(x, f);
      const Element fy = func_calculus(y, f);
      std::vector<LinkSample> out;
      for (double t : detail::concavity_weights()) {
        out.push_back(order_link(affine(fx, fy, t, 1.0 - t), func_calculus(affine(x, y, t, 1.0 - t), f)));
      }
      return out;
    };
    out.push_back(std::move(e));
  }
  for (bool tsallis_form : {false, true}) {
    Entry e;
    e.id = tsallis_form ? "monotone-T" : "monotone-S";
    e.kind = EntryKind::Concavity;
    e.summary = tsallis_form ? "B <= C implies T_l(A|B) <= T_l(A|C)" : "B <= C implies S(A|B) <= S(A|C)";
    e.backends = all_backends();
    e.use = {false, false, tsallis_form, false, DeltaBranch::None};
    e.links = {"second slot"};
    e.fixed_tol = {std::nullopt};
    const auto f = detail::entropy_map(tsallis_form);
    e.run = [f](TrialContext& ctx) {
      const Element a = random_positive(ctx.alg, ctx.cond, ctx.rng);
      const Element b = random_positive(ctx.alg, ctx.cond, ctx.rng);
      const double size = std::pow(10.0, uniform(ctx.rng, -3.0, 1.0));
      const Element c = b + detail::scaled_square(ctx.alg, ctx.rng, size * jb_norm(b));
      ctx.keep("A", a);
      ctx.keep("B", b);
      ctx.keep("C", c);
      return std::vector<LinkSample>{order_link(f(a, b, ctx), f(a, c, ctx))};
    };
    out.push_back(std::move(e));
  }
  {
    Entry e;
    e.id = "monotone-functions";
    e.kind = EntryKind::Concavity;
    e.summary = "log and t^p (p = 1/4, 1/2, 3/4) operator monotone";
    e.backends = all_backends();
    e.links = {"log", "p=1/4", "p=1/2", "p=3/4"};
    e.fixed_tol.assign(e.links.size(), std::nullopt);
    e.run = [](TrialContext& ctx) {
      const Element a = random_positive(ctx.alg, ctx.cond, ctx.rng);
      const double size = std::pow(10.0, uniform(ctx.rng, -3.0, 1.0));
      const Element b = a + detail::scaled_square(ctx.alg, ctx.rng, size * jb_norm(a));
      ctx.keep("A", a);
      ctx.keep("B", b);
      std::vector<LinkSample> out{order_link(log(a), log(b))};
      for (double p : {0.25, 0.5, 0.75}) out.push_back(order_link(power(a, p), power(b, p)));
      return out;
    };
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identities

namespace detail {

inline Entry identity_entry(std::string id, std::string summary, std::vector<std::string> links,
                            std::function<std::vector<LinkSample>(TrialContext&)> run) {
  Entry e;
  e.id = std::move(id);
  e.kind = EntryKind::Identity;
  e.summary = std::move(summary);
  e.links = std::move(links);
  e.fixed_tol.assign(e.links.size(), std::nullopt);
  e.backends = all_backends();
  e.default_cond = 100.0;
  e.run = std::move(run);
  return e;
}

inline Pair positive_pair(TrialContext& ctx) {
  Element a = random_positive(ctx.alg, ctx.cond, ctx.rng);
  Element b = random_positive(ctx.alg, ctx.cond, ctx.rng);
  ctx.keep("A", a);
  ctx.keep("B", b);
  return {std::move(a), std::move(b)};
}

}  // namespace detail

inline std::vector<Entry> identity_entries() {
  using detail::identity_entry;
  using detail::positive_pair;
  std::vector<Entry> out;
  const std::vector<AlgebraDescriptor> quad_backends{AlgebraDescriptor::sym(2), AlgebraDescriptor::sym(3),
                                                     AlgebraDescriptor::sym(4), AlgebraDescriptor::sym(6)};

  {
    Entry e = identity_entry("integral-S", "S equals the harmonic-mean integral", {"quadrature = closed form"},
                             [](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               return std::vector<LinkSample>{equality_link(
                                   quad_integral_S(p.a, p.b, ctx.opts.quad), rel_entropy(p.a, p.b))};
                             });
    e.backends = quad_backends;
    e.default_tol = 1e-6;
    e.default_trials = 100;
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry("integral-T", "T_l equals the Gauss-Jacobi integral", {"quadrature = closed form"},
                             [](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               const double lam = ctx.lambda();
                               return std::vector<LinkSample>{equality_link(
                                   quad_integral_T(p.a, p.b, lam, ctx.opts.quad), tsallis(p.a, p.b, lam))};
                             });
    e.backends = quad_backends;
    e.use = {false, false, true, true, DeltaBranch::None};
    e.default_tol = 1e-6;
    e.default_trials = 100;
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry("integral-geo", "A #_l B equals the Gauss-Jacobi integral",
                             {"quadrature = closed form"}, [](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               const double lam = ctx.lambda();
                               return std::vector<LinkSample>{
                                   equality_link(quad_integral_geo(p.a, p.b, lam, ctx.opts.quad),
                                                 geometric_mean(p.a, p.b, lam))};
                             });
    e.backends = quad_backends;
    e.use = {false, false, true, true, DeltaBranch::None};
    e.default_tol = 1e-6;
    e.default_trials = 100;
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry(
        "quadrature-convergence", "doubling 64 -> 128 nodes at least halves the integral error",
        {"S", "T_l", "geo"}, [](TrialContext& ctx) {
          const Pair p = positive_pair(ctx);
          const double lam = ctx.lambda();
          const Element s = rel_entropy(p.a, p.b);
          const Element t = tsallis(p.a, p.b, lam);
          const Element g = geometric_mean(p.a, p.b, lam);
          auto link = [](const Element& exact, const std::function<Element(int)>& approx) {
            const double scale = 1.0 + jb_norm(exact);
            const double d64 = jb_norm(approx(64) - exact) / scale;
            const double d128 = jb_norm(approx(128) - exact) / scale;
            // Below 1e-13 both errors are rounding noise.
            return LinkSample{std::max(0.5 * d64, 1e-13) - d128, true};
          };
          const auto rule = ctx.opts.quad.rule;
          return std::vector<LinkSample>{
              link(s, [&](int n) { return quad_integral_S(p.a, p.b, {n, rule}); }),
              link(t, [&](int n) { return quad_integral_T(p.a, p.b, lam, {n, rule}); }),
              link(g, [&](int n) { return quad_integral_geo(p.a, p.b, lam, {n, rule}); })};
        });
    e.backends = {AlgebraDescriptor::sym(4)};
    e.use = {false, false, true, true, DeltaBranch::None};
    e.fixed_tol = {0.0, 0.0, 0.0};
    e.default_trials = 50;
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry("weight-normalization", "Gauss-Jacobi weight integral equals pi / sin(l pi)",
                             {"weight sum"}, [](TrialContext& ctx) {
                               const double lam = ctx.lambda();
                               const double exact = std::numbers::pi / std::sin(lam * std::numbers::pi);
                               const double got = weight_integral(lam, ctx.opts.quad.nodes);
                               return std::vector<LinkSample>{{-std::abs(got - exact) / exact, true}};
                             });
    e.backends = {AlgebraDescriptor::sym(1)};
    e.use = {false, false, true, true, DeltaBranch::None};
    e.default_trials = 3;
    out.push_back(std::move(e));
  }
  out.push_back(identity_entry("xlogx-form", "S equals the -Y o log Y form", {"S = xlogx form"},
                               [](TrialContext& ctx) {
                                 const Pair p = positive_pair(ctx);
                                 return std::vector<LinkSample>{
                                     equality_link(rel_entropy(p.a, p.b), rel_entropy_xlogx(p.a, p.b))};
                               }));
  for (bool tsallis_form : {false, true}) {
    Entry e = identity_entry(tsallis_form ? "homogeneity-T" : "homogeneity-S", "f(cA|cB) = c f(A|B)",
                             {"homogeneity"}, [tsallis_form](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               const double c = ctx.trial % 10 == 0 ? 1.0 : std::exp(uniform(ctx.rng, -2.0, 2.0));
                               const auto f = detail::entropy_map(tsallis_form);
                               return std::vector<LinkSample>{
                                   equality_link(f(c * p.a, c * p.b, ctx), c * f(p.a, p.b, ctx))};
                             });
    e.use.lambda = tsallis_form;
    out.push_back(std::move(e));
  }
  for (bool tsallis_form : {false, true}) {
    Entry e = identity_entry(tsallis_form ? "congruence-T" : "congruence-S", "f({CAC}|{CBC}) = {C f(A|B) C}",
                             {"congruence"}, [tsallis_form](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               const Element c = ctx.trial % 10 == 0 ? identity(ctx.alg)
                                                                     : random_invertible(ctx.alg, ctx.rng);
                               ctx.keep("C", c);
                               const auto f = detail::entropy_map(tsallis_form);
                               return std::vector<LinkSample>{equality_link(
                                   f(quad_map(c, p.a), quad_map(c, p.b), ctx), quad_map(c, f(p.a, p.b, ctx)))};
                             });
    e.use.lambda = tsallis_form;
    out.push_back(std::move(e));
  }
  out.push_back(identity_entry("congruence-harmonic", "{C (A !_t B) C} = {CAC} !_t {CBC}", {"congruence"},
                               [](TrialContext& ctx) {
                                 const Pair p = positive_pair(ctx);
                                 const Element c = random_invertible(ctx.alg, ctx.rng);
                                 ctx.keep("C", c);
                                 const double t = uniform(ctx.rng);
                                 return std::vector<LinkSample>{
                                     equality_link(quad_map(c, harmonic_mean(p.a, p.b, t)),
                                                   harmonic_mean(quad_map(c, p.a), quad_map(c, p.b), t))};
                               }));
  out.push_back(identity_entry("definitional-S01", "S_0,1 = S", {"S_0,1 = S"}, [](TrialContext& ctx) {
    const Pair p = positive_pair(ctx);
    return std::vector<LinkSample>{equality_link(rel_entropy_ab(p.a, p.b, 0.0, 1.0), rel_entropy(p.a, p.b))};
  }));
  {
    Entry e = identity_entry("definitional-T1", "T_l,1 = T_l", {"T_l,1 = T_l"}, [](TrialContext& ctx) {
      const Pair p = positive_pair(ctx);
      const double lam = ctx.lambda();
      return std::vector<LinkSample>{equality_link(tsallis_lb(p.a, p.b, lam, 1.0), tsallis(p.a, p.b, lam))};
    });
    e.use.lambda = true;
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry(
        "limit-T", "|T_l - S| shrinks linearly in l", {"ratio l=1e-2/1e-3", "ratio l=1e-3/1e-4"},
        [](TrialContext& ctx) {
          const Pair p = positive_pair(ctx);
          const Element s = rel_entropy(p.a, p.b);
          double dev[3];
          const double lams[3] = {1e-2, 1e-3, 1e-4};
          for (int i = 0; i < 3; ++i) dev[i] = jb_norm(tsallis(p.a, p.b, lams[i]) - s);
          auto ratio_link = [](double hi, double lo) {
            if (!(lo > 0.0)) return LinkSample{-1.0, true};
            const double r = hi / lo;
            return LinkSample{std::min(r - 5.0, 20.0 - r), true};
          };
          return std::vector<LinkSample>{ratio_link(dev[0], dev[1]), ratio_link(dev[1], dev[2])};
        });
    e.fixed_tol = {0.0, 0.0};
    out.push_back(std::move(e));
  }
  {
    Entry e = identity_entry("inverse-laws", "A o A^-1 = I, A^2 o A^-1 = A, {ABA}^-1 = {A^-1 B^-1 A^-1}",
                             {"A o A^-1 = I", "A^2 o A^-1 = A", "quad inverse"}, [](TrialContext& ctx) {
                               const Pair p = positive_pair(ctx);
                               const Element ai = inverse(p.a);
                               const Element lhs = inverse(quad_map(p.a, p.b));
                               const Element rhs = quad_map(ai, inverse(p.b));
                               return std::vector<LinkSample>{
                                   equality_link(jordan_product(p.a, ai), identity(ctx.alg)),
                                   equality_link(jordan_product(square(p.a), ai), p.a), equality_link(lhs, rhs)};
                             });
    e.default_tol = 1e-9;
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra axioms

inline std::vector<Entry> axiom_entries() {
  std::vector<Entry> out;
  auto axiom = [&](std::string id, std::string summary, std::vector<std::string> links, double tol,
                   std::function<std::vector<LinkSample>(TrialContext&)> run) {
    Entry e;
    e.id = std::move(id);
    e.kind = EntryKind::Axiom;
    e.summary = std::move(summary);
    e.links = std::move(links);
    e.fixed_tol.assign(e.links.size(), std::nullopt);
    e.default_tol = tol;
    e.default_trials = 1000;
    e.default_cond = 100.0;
    e.backends = all_backends();
    e.run = std::move(run);
    out.push_back(std::move(e));
  };
  auto two = [](TrialContext& ctx) {
    Element x = random_element(ctx.alg, ctx.rng);
    Element y = random_element(ctx.alg, ctx.rng);
    ctx.keep("X", x);
    ctx.keep("Y", y);
    return Pair{std::move(x), std::move(y)};
  };

  axiom("axiom-jordan", "(x^2 o y) o x = x^2 o (y o x)", {"Jordan identity"}, 1e-10, [two](TrialContext& ctx) {
    const auto [x, y] = two(ctx);
    const Element x2 = square(x);
    const Element r = jordan_product(jordan_product(x2, y), x) - jordan_product(x2, jordan_product(y, x));
    const double nx = 1.0 + jb_norm(x);
    const double scale = nx * nx * nx * (1.0 + jb_norm(y));
    return std::vector<LinkSample>{{-jb_norm(r) / scale, true}};
  });
  {
    axiom("axiom-commutativity", "x o y = y o x coordinatewise", {"exact"}, 0.0, [two](TrialContext& ctx) {
      const auto [x, y] = two(ctx);
      const Element xy = jordan_product(x, y);
      const Element yx = jordan_product(y, x);
      double worst = 0.0;
      for (std::size_t i = 0; i < xy.size(); ++i) worst = std::max(worst, std::abs(xy[i] - yx[i]));
      return std::vector<LinkSample>{{-worst, true}};
    });
    out.back().fixed_tol = {0.0};
  }
  axiom("axiom-quadlinear", "U_A(sB + tC) = s U_A(B) + t U_A(C)", {"linearity"}, 1e-12,
        [two](TrialContext& ctx) {
          const auto [a, b] = two(ctx);
          const Element c = random_element(ctx.alg, ctx.rng);
          ctx.keep("Z", c);
          const double s = gaussian(ctx.rng);
          const double t = gaussian(ctx.rng);
          const Element lhs = quad_map(a, affine(b, c, s, t));
          const Element rhs = affine(quad_map(a, b), quad_map(a, c), s, t);
          const double na = 1.0 + jb_norm(a);
          const double scale = na * na * (1.0 + std::abs(s) * jb_norm(b) + std::abs(t) * jb_norm(c));
          return std::vector<LinkSample>{{-jb_norm(lhs - rhs) / scale, true}};
        });
  axiom("axiom-norm-product", "|x o y| <= |x| |y|", {"product"}, 1e-10, [two](TrialContext& ctx) {
    const auto [x, y] = two(ctx);
    const double bound = jb_norm(x) * jb_norm(y);
    return std::vector<LinkSample>{{(bound - jb_norm(jordan_product(x, y))) / (1.0 + bound), true}};
  });
  axiom("axiom-norm-square", "|x^2| = |x|^2", {"square"}, 1e-10, [two](TrialContext& ctx) {
    const auto [x, y] = two(ctx);
    (void)y;
    const double n = jb_norm(x);
    return std::vector<LinkSample>{{-std::abs(jb_norm(square(x)) - n * n) / (1.0 + n * n), true}};
  });
  axiom("axiom-norm-sum", "|x^2| <= |x^2 + y^2|", {"sum of squares"}, 1e-10, [two](TrialContext& ctx) {
    const auto [x, y] = two(ctx);
    const Element x2 = square(x);
    const double big = jb_norm(x2 + square(y));
    return std::vector<LinkSample>{{(big - jb_norm(x2)) / (1.0 + big), true}};
  });
  axiom("axiom-quad-positivity", "U_A(B) >= 0 for B >= 0", {"positivity"}, 1e-10, [](TrialContext& ctx) {
    const Element a = random_element(ctx.alg, ctx.rng);
    const Element b = random_square(ctx.alg, ctx.rng);
    ctx.keep("A", a);
    ctx.keep("B", b);
    const Element u = quad_map(a, b);
    const double na = jb_norm(a);
    const double scale = 1.0 + na * na * jb_norm(b);
    return std::vector<LinkSample>{{min_eigenvalue(u) / scale, true}};
  });
  {
    axiom("axiom-cayley-hamilton", "x^3 - T x^2 + S x - N = 0 on the Albert algebra", {"residual"}, 1e-9,
          [](TrialContext& ctx) {
            const Element x = random_element(ctx.alg, ctx.rng);
            ctx.keep("X", x);
            const auto ax = albert::AlbertElement::from_coords(x.coords());
            const double f = 1.0 + ax.frobenius();
            const double r = albert::cayley_hamilton_residual(ax, albert::invariants(ax));
            return std::vector<LinkSample>{{-r / (f * f * f), true}};
          });
    out.back().backends = {AlgebraDescriptor::albert()};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lookup and execution

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> all;
    for (auto* part : {&chain_entries, &scalar_entries, &concavity_entries, &identity_entries, &axiom_entries}) {
      for (auto& e : (*part)()) all.push_back(std::move(e));
    }
    return all;
  }();
  return entries;
}

inline const Entry& find_entry(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw UnknownId("unknown theorem or identity id '" + std::string(id) + "'");
}

inline std::vector<std::string> registry_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  return ids;
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::vector<double> lambda_grid(const Entry& e, const ParamGrid& g) {
  if (!e.use.open_lambda) return g.lambda;
  std::vector<double> out;
  for (double l : g.lambda) {
    if (l > 0.0 && l < 1.0) out.push_back(l);
  }
  return out;
}

inline const std::vector<double>* delta_grid(const Entry& e, const ParamGrid& g) {
  switch (e.use.delta) {
    case DeltaBranch::AtLeastOne: return &g.delta_ge;
    case DeltaBranch::AtMostOne: return &g.delta_le;
    case DeltaBranch::None: return nullptr;
  }
  return nullptr;
}

/// Mixed-radix walk through the grids the entry uses.
inline TrialParams draw_params(const Entry& e, const ParamGrid& g, std::int64_t trial) {
  TrialParams p;
  auto idx = static_cast<std::size_t>(trial);
  auto take = [&](const std::vector<double>& grid, std::optional<double>& slot, const char* name) {
    if (grid.empty()) throw ParameterError(std::string("empty parameter grid for ") + name);
    slot = grid[idx % grid.size()];
    idx /= grid.size();
  };
  if (e.use.alpha) take(g.alpha, p.alpha, "alpha");
  if (e.use.beta) take(g.beta, p.beta, "beta");
  if (e.use.lambda) {
    const auto lg = lambda_grid(e, g);
    take(lg, p.lambda, "lambda");
  }
  if (const auto* dg = delta_grid(e, g)) take(*dg, p.delta, "delta");
  return p;
}

inline void validate_grid(const Entry& e, const ParamGrid& g) {
  if (e.use.alpha) {
    for (double a : g.alpha) {
      if (!(a >= 0.0)) throw ParameterError("alpha grid values must be >= 0");
    }
  }
  if (e.use.beta) {
    for (double b : g.beta) {
      if (!(b > 0.0)) throw ParameterError("beta grid values must be > 0");
    }
  }
  if (e.use.lambda) {
    for (double l : lambda_grid(e, g)) {
      if (!(l > 0.0 && l <= 1.0)) throw ParameterError("lambda grid values must lie in (0, 1]");
    }
  }
  if (e.use.delta == DeltaBranch::AtLeastOne) {
    for (double d : g.delta_ge) {
      if (!(d >= 1.0)) throw ParameterError("delta grid values must be >= 1 for this entry");
    }
  }
  if (e.use.delta == DeltaBranch::AtMostOne) {
    for (double d : g.delta_le) {
      if (!(d > 0.0 && d <= 1.0)) throw ParameterError("delta grid values must lie in (0, 1] for this entry");
    }
  }
}

}  // namespace detail

/// Runs one registry entry on one backend.
inline ChainReport verify_entry(const Entry& e, const AlgebraDescriptor& backend, const VerifyOptions& opts) {
  if (opts.negative_control && !e.negative_control) {
    throw ParameterError("'" + e.id + "' has no hypothesis to violate");
  }
  detail::validate_grid(e, opts.grid);
  ChainReport r;
  r.theorem_id = e.id;
  r.backend = AlgebraDescriptor::checked(backend);
  r.trials = opts.trials.value_or(e.default_trials);
  if (r.trials < 1) throw ParameterError("trials must be >= 1");
  r.tol = opts.tol.value_or(e.default_tol);
  if (!(r.tol >= 0.0)) throw ParameterError("tol must be >= 0");
  r.cond = opts.cond.value_or(e.default_cond);
  if (!(r.cond >= 1.0)) throw ParameterError("cond must be >= 1");
  r.seed = opts.seed;
  r.negative_control = opts.negative_control;
  r.gated = std::find(e.exploratory.begin(), e.exploratory.end(), backend) == e.exploratory.end();
  for (std::size_t k = 0; k < e.links.size(); ++k) {
    r.links.push_back({e.links[k], std::numeric_limits<double>::infinity(), -1,
                       e.fixed_tol[k].value_or(r.tol)});
  }
  if (e.use.alpha) r.params["alpha"] = opts.grid.alpha;
  if (e.use.beta) r.params["beta"] = opts.grid.beta;
  if (e.use.lambda) r.params["lambda"] = detail::lambda_grid(e, opts.grid);
  if (const auto* dg = detail::delta_grid(e, opts.grid)) r.params["delta"] = *dg;

  const std::uint64_t salt = detail::fnv1a(e.id + "/" + backend.label());
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(r.trials));
  const int threads = opts.threads.value_or(resolve_threads());
  for_each_index(outcomes.size(), threads, [&](std::size_t i) {
    TrialOutcome& out = outcomes[i];
    const auto trial = static_cast<std::int64_t>(i);
    TrialContext ctx{r.backend, trial, derive_rng(opts.seed, i, salt), detail::draw_params(e, opts.grid, trial),
                     r.cond, opts.negative_control, opts, out};
    try {
      out.links = e.run(ctx);
    } catch (const SamplerError&) {
      throw;
    } catch (const Error& err) {
      out.error = err.what();
    }
    out.params = ctx.params;
  });
  merge_outcomes(r, outcomes);
  return r;
}

inline ChainReport verify_entry(std::string_view id, const AlgebraDescriptor& backend, const VerifyOptions& opts) {
  return verify_entry(find_entry(id), backend, opts);
}

/// Inequality chains, scalar chains and concavity statements.
inline ChainReport verify_chain(std::string_view id, const AlgebraDescriptor& backend, const VerifyOptions& opts) {
  const Entry& e = find_entry(id);
  if (e.kind == EntryKind::Identity || e.kind == EntryKind::Axiom) {
    throw UnknownId("'" + std::string(id) + "' is an identity, not a chain");
  }
  return verify_entry(e, backend, opts);
}

/// Equalities and algebra axioms.
inline ChainReport verify_identity(std::string_view id, const AlgebraDescriptor& backend,
                                   const VerifyOptions& opts) {
  const Entry& e = find_entry(id);
  if (e.kind != EntryKind::Identity && e.kind != EntryKind::Axiom) {
    throw UnknownId("'" + std::string(id) + "' is a chain, not an identity");
  }
  return verify_entry(e, backend, opts);
}

}  // namespace jordan
