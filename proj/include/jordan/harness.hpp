#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "jordan/order.hpp"
#include "jordan/random.hpp"

namespace jordan {

/// Parameters drawn for one trial. Unused entries stay empty.
struct TrialParams {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> lambda;
  std::optional<double> delta;
};

/// Worst observed margin of one link over all trials. Margins are
/// scale-relative (margin / scale) so they compare directly against -tol.
struct LinkResult {
  std::string label;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::int64_t argmin_trial = -1;
  double tol = 0.0;
};

struct Violation {
  std::int64_t trial = 0;
  std::string link;  // empty when the trial raised an error
  double margin = 0.0;
  std::string error;
  TrialParams params;
  std::vector<std::pair<std::string, Element>> elements;
};

struct ChainReport {
  std::string theorem_id;
  AlgebraDescriptor backend;
  std::int64_t trials = 0;
  double tol = 0.0;
  double cond = 1.0;
  std::uint64_t seed = 0;
  bool negative_control = false;
  bool gated = true;  // false for exploratory runs
  std::vector<LinkResult> links;
  std::vector<Violation> violations;  // first kMaxStoredViolations only
  std::int64_t violation_count = 0;
  std::map<std::string, std::vector<double>> params;

  static constexpr std::size_t kMaxStoredViolations = 20;

  /// A regular run passes with no violations; a negative control passes
  /// when it finds at least one.
  bool pass() const { return negative_control ? violation_count > 0 : violation_count == 0; }

  std::int64_t failing_links() const {
    std::int64_t n = 0;
    for (const auto& l : links) n += l.worst_margin < -l.tol ? 1 : 0;
    return n;
  }
};

/// One link evaluated in one trial.
struct LinkSample {
  double margin = 0.0;  // scale-relative
  bool applicable = true;
};

struct TrialOutcome {
  std::vector<LinkSample> links;
  TrialParams params;
  std::vector<std::pair<std::string, Element>> elements;
  std::string error;
};

/// Worker count from JE_THREADS: unset means hardware concurrency, 0 or 1
/// means serial.
inline int resolve_threads() {
  const char* env = std::getenv("JE_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs fn(i) for i in [0, count). Results must be written by index; the
/// lowest-index exception is rethrown, so failures match the serial run.
template <class Fn>
void for_each_index(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Folds trial outcomes, in trial order, into the report's links and
/// violations.
inline void merge_outcomes(ChainReport& report, const std::vector<TrialOutcome>& outcomes) {
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const TrialOutcome& o = outcomes[t];
    const auto trial = static_cast<std::int64_t>(t);
    auto record = [&](Violation v) {
      ++report.violation_count;
      if (report.violations.size() < ChainReport::kMaxStoredViolations) {
        report.violations.push_back(std::move(v));
      }
    };
    if (!o.error.empty()) {
      record({trial, "", 0.0, o.error, o.params, o.elements});
      continue;
    }
    for (std::size_t k = 0; k < report.links.size() && k < o.links.size(); ++k) {
      if (!o.links[k].applicable) continue;
      LinkResult& link = report.links[k];
      const double m = o.links[k].margin;
      if (m < link.worst_margin || link.argmin_trial < 0) {
        link.worst_margin = m;
        link.argmin_trial = trial;
      }
      if (!(m >= -link.tol)) record({trial, link.label, m, "", o.params, o.elements});
    }
  }
}

/// Scale-relative Loewner margin of lhs <= rhs.
inline LinkSample order_link(const Element& lhs, const Element& rhs) {
  const OrderCertificate c = loewner_leq(lhs, rhs, 0.0);
  return {c.relative_margin(), true};
}

/// Negative scale-relative distance; 0 means exact agreement.
inline LinkSample equality_link(const Element& lhs, const Element& rhs) {
  const double scale = 1.0 + std::max(jb_norm(lhs), jb_norm(rhs));
  return {-jb_norm(lhs - rhs) / scale, true};
}

}  // namespace jordan
