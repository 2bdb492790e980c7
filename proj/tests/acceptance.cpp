// Acceptance run: one PASS/FAIL line per criterion, followed by the
// offending (entry, backend) pairs when a criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jordan/io.hpp"
#include "jordan/jordan.hpp"

using namespace jordan;

namespace {

struct Outcome {
  bool ok = true;
  std::size_t runs = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<std::string> notes;

  void fail(std::string why) {
    ok = false;
    notes.push_back(std::move(why));
  }
};

using Clock = std::chrono::steady_clock;

// Verifies each id on its gated backends; a run passes when it has no
// violations. Worst margins are tracked relative to each link's tol.
void run_entries(Outcome& o, const std::vector<std::string>& ids, const VerifyOptions& opts) {
  for (const auto& id : ids) {
    const Entry& e = find_entry(id);
    for (const auto& b : e.backends) {
      const ChainReport r = verify_entry(e, b, opts);
      ++o.runs;
      for (const auto& l : r.links) o.worst = std::min(o.worst, l.worst_margin + l.tol);
      if (r.violation_count != 0) {
        std::string msg = id + " on " + b.label() + ": " + std::to_string(r.violation_count) + " violations";
        if (!r.violations.empty()) {
          const auto& v = r.violations.front();
          msg += v.error.empty() ? " (" + v.link + " margin " + io::exact(v.margin) + ")" : " (" + v.error + ")";
        }
        o.fail(msg);
      }
    }
  }
}

std::vector<std::string> ids_of(EntryKind kind) {
  std::vector<std::string> out;
  for (const auto& e : registry()) {
    if (e.kind == kind) out.push_back(e.id);
  }
  return out;
}

int report(int number, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) o.fail("runtime " + std::to_string(secs) + " s over limit");
  std::printf("[%s] %d. %s: %zu runs, %.1f s", o.ok ? "PASS" : "FAIL", number, title, o.runs, secs);
  if (o.runs > 0 && std::isfinite(o.worst)) std::printf(", worst slack %.3g", o.worst);
  std::printf("\n");
  for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
  return o.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;

  failures += report(1, "algebra axioms (1000 trials per backend, <= 1e-10 scale, CH <= 1e-9 scale)", 60.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.trials = 1000;
    run_entries(o, ids_of(EntryKind::Axiom), opts);
    return o;
  });

  failures += report(2, "integral representations (128 nodes, <= 1e-6; weight integral <= 1e-8)", 120.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.quad.nodes = 128;
    opts.cond = 100.0;
    opts.grid.lambda = {0.1, 0.5, 0.9};
    run_entries(o, {"integral-S", "integral-T", "integral-geo", "quadrature-convergence"}, opts);
    VerifyOptions w = opts;
    w.tol = 1e-8;
    run_entries(o, {"weight-normalization"}, w);
    for (const auto& b : find_entry("integral-T").backends) {
      if (b.kind != AlgebraKind::SymMatrix || b.dim > 6) o.fail("integral backend outside sym n <= 6");
    }
    return o;
  });

  failures += report(3, "identity suite (500 trials per backend, <= 1e-8)", 0.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.trials = 500;
    opts.tol = 1e-8;
    run_entries(o,
                {"homogeneity-S", "homogeneity-T", "congruence-S", "congruence-T", "congruence-harmonic",
                 "definitional-S01", "definitional-T1", "xlogx-form"},
                opts);
    return o;
  });

  failures += report(4, "limit l -> 0 (successive deviation ratios in [5, 20])", 0.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.trials = 500;
    run_entries(o, {"limit-T"}, opts);
    return o;
  });

  failures += report(5, "inequality registry (>= 500 trials, tol 1e-8, negative controls fire)", 900.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.trials = 500;
    opts.tol = 1e-8;
    std::vector<std::string> ids = ids_of(EntryKind::Chain);
    for (const auto& id : ids_of(EntryKind::Scalar)) ids.push_back(id);
    run_entries(o, ids, opts);
    VerifyOptions neg = opts;
    neg.negative_control = true;
    for (const auto& id : ids) {
      const Entry& e = find_entry(id);
      if (!e.negative_control) continue;
      for (const auto& b : e.backends) {
        const ChainReport r = verify_entry(e, b, neg);
        ++o.runs;
        if (r.violation_count == 0) o.fail(id + " negative control on " + b.label() + " found no violation");
      }
    }
    return o;
  });

  failures += report(6, "concavity suite (500 trials, margins >= -1e-8 scale)", 0.0, [] {
    Outcome o;
    VerifyOptions opts;
    opts.trials = 500;
    opts.tol = 1e-8;
    run_entries(o, ids_of(EntryKind::Concavity), opts);
    for (const char* id : {"joint-S", "joint-T"}) {
      for (const auto& b : find_entry(id).backends) {
        if (!b.is_special()) o.fail(std::string(id) + " gated on a non-special backend");
      }
      // Reported, never gated.
      for (const auto& b : find_entry(id).exploratory) {
        const ChainReport r = verify_entry(find_entry(id), b, opts);
        double w = std::numeric_limits<double>::infinity();
        for (const auto& l : r.links) w = std::min(w, l.worst_margin);
        std::printf("       exploratory %s on %s: worst margin %.3g\n", id, b.label().c_str(), w);
      }
    }
    return o;
  });

  failures += report(7, "determinism (serial vs parallel vs repeat, byte-identical)", 0.0, [] {
    Outcome o;
    VerifyOptions serial;
    serial.trials = 100;
    serial.seed = 20240611;
    serial.threads = 1;
    VerifyOptions parallel = serial;
    parallel.threads = 4;
    for (const char* id : {"thm4.6i", "cor4.10ii", "tsallis-bounds", "prop4.5c", "joint-T", "integral-T",
                           "axiom-jordan", "limit-T"}) {
      const Entry& e = find_entry(id);
      for (const auto& b : e.backends) {
        const std::string a = io::to_json(verify_entry(e, b, serial)).dump(2);
        const std::string p = io::to_json(verify_entry(e, b, parallel)).dump(2);
        const std::string again = io::to_json(verify_entry(e, b, serial)).dump(2);
        ++o.runs;
        if (a != p || a != again) o.fail(std::string(id) + " on " + b.label() + " differs between runs");
      }
    }
    return o;
  });

  std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
