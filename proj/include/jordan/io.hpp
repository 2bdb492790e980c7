#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jordan/harness.hpp"
#include "jordan/sym_matrix.hpp"

// JSON and CSV encodings of elements, spectra and reports. Requires
// nlohmann/json on the include path.
namespace jordan::io {

using nlohmann::json;

inline AlgebraDescriptor parse_descriptor(const std::string& name, std::size_t dim) {
  if (name == "sym") return AlgebraDescriptor::sym(dim);
  if (name == "spin") return AlgebraDescriptor::spin(dim);
  if (name == "albert") {
    if (dim != 27 && dim != 0) throw InvalidElement("albert elements have dim 27");
    return AlgebraDescriptor::albert();
  }
  throw InvalidElement("unknown algebra '" + name + "'");
}

inline json to_json(const AlgebraDescriptor& alg) {
  return {{"algebra", std::string(alg.name())}, {"dim", alg.dim}};
}

inline json to_json(const Element& x) {
  json j = to_json(x.algebra());
  j["coords"] = x.coord_vector();
  return j;
}

inline json to_json(const Spectrum& s) { return {{"values", s.values}, {"multiplicities", s.multiplicities}}; }

/// Reads {"algebra", "dim", "coords"} or, for symmetric matrices,
/// {"matrix": [[...], ...]}.
inline Element element_from_json(const json& j) {
  if (!j.is_object()) throw InvalidElement("element must be a JSON object");
  if (j.contains("matrix")) {
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) throw InvalidElement("matrix must be a non-empty array of rows");
    const std::size_t n = rows.size();
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw InvalidElement("matrix must be square");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k].get<double>();
    }
    return sym::from_dense_checked(m);
  }
  if (!j.contains("algebra") || !j.contains("coords")) {
    throw InvalidElement("element needs \"algebra\" and \"coords\"");
  }
  const auto name = j.at("algebra").get<std::string>();
  auto coords = j.at("coords").get<std::vector<double>>();
  std::size_t dim = 0;
  if (j.contains("dim")) {
    dim = j.at("dim").get<std::size_t>();
  } else if (name == "albert") {
    dim = 27;
  } else {
    throw InvalidElement("element needs \"dim\"");
  }
  return Element(parse_descriptor(name, dim), std::move(coords));
}

inline json to_json(const TrialParams& p) {
  json j = json::object();
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.beta) j["beta"] = *p.beta;
  if (p.lambda) j["lambda"] = *p.lambda;
  if (p.delta) j["delta"] = *p.delta;
  return j;
}

/// Infinite margins (no applicable trial) are written as null.
inline json margin_json(double m) { return std::isfinite(m) ? json(m) : json(nullptr); }

inline json to_json(const ChainReport& r) {
  json links = json::array();
  for (const auto& l : r.links) {
    links.push_back({{"label", l.label},
                     {"worst_margin", margin_json(l.worst_margin)},
                     {"argmin_trial", l.argmin_trial},
                     {"tol", l.tol}});
  }
  json violations = json::array();
  for (const auto& v : r.violations) {
    json jv = {{"trial", v.trial}, {"params", to_json(v.params)}};
    if (!v.link.empty()) {
      jv["link"] = v.link;
      jv["margin"] = margin_json(v.margin);
    }
    if (!v.error.empty()) jv["error"] = v.error;
    json elements = json::object();
    for (const auto& [name, e] : v.elements) elements[name] = to_json(e);
    jv["elements"] = std::move(elements);
    violations.push_back(std::move(jv));
  }
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return {{"theorem_id", r.theorem_id},
          {"backend", to_json(r.backend)},
          {"trials", r.trials},
          {"tol", r.tol},
          {"cond", r.cond},
          {"seed", r.seed},
          {"negative_control", r.negative_control},
          {"gated", r.gated},
          {"params", std::move(params)},
          {"links", std::move(links)},
          {"violation_count", r.violation_count},
          {"violations", std::move(violations)},
          {"pass", r.pass()}};
}

/// Summary fields of a report read back from JSON.
struct ReportSummary {
  std::string theorem_id;
  std::string backend;
  std::size_t dim = 0;
  std::int64_t trials = 0;
  double worst_margin = 0.0;
  bool has_margin = false;
  bool pass = false;
  bool gated = true;
  std::int64_t failing_links = 0;
};

inline ReportSummary summary_from_json(const json& j) {
  ReportSummary s;
  s.theorem_id = j.at("theorem_id").get<std::string>();
  s.backend = j.at("backend").at("algebra").get<std::string>();
  s.dim = j.at("backend").at("dim").get<std::size_t>();
  s.trials = j.at("trials").get<std::int64_t>();
  s.pass = j.at("pass").get<bool>();
  s.gated = j.value("gated", true);
  const bool negative = j.value("negative_control", false);
  for (const auto& l : j.at("links")) {
    const auto& m = l.at("worst_margin");
    if (m.is_null()) continue;
    const double v = m.get<double>();
    const double tol = l.at("tol").get<double>();
    if (!s.has_margin || v < s.worst_margin) s.worst_margin = v;
    s.has_margin = true;
    if (!negative && v < -tol) ++s.failing_links;
  }
  if (!s.pass && s.failing_links == 0) s.failing_links = 1;
  return s;
}

inline ReportSummary summarize(const ChainReport& r) { return summary_from_json(to_json(r)); }

/// %.17g keeps every double exact on round trip.
inline std::string exact(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_header() { return "theorem_id,backend,dim,trials,worst_margin,verdict\n"; }

inline std::string csv_row(const ReportSummary& s) {
  std::ostringstream os;
  const char* verdict = !s.gated ? "exploratory" : (s.pass ? "pass" : "fail");
  os << s.theorem_id << ',' << s.backend << ',' << s.dim << ',' << s.trials << ','
     << (s.has_margin ? exact(s.worst_margin) : "") << ',' << verdict << '\n';
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace jordan::io
