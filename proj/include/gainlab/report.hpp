#pragma once

// JSON / CSV / human renderings of reports.
//
// Big integers are exact decimal strings; reals are decimal strings rounded
// to the display precision. Key and column order are fixed.

#include "gainlab/bigmath.hpp"
#include "gainlab/corpus.hpp"
#include "gainlab/gains.hpp"
#include "gainlab/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gainlab {

using ojson = nlohmann::ordered_json;

enum class OutputFormat { json, csv, human };

inline constexpr int kDefaultDisplayDigits = 6;

/// Bounds for one parameter set, as printed by the `bounds` command.
struct BoundsReport {
  std::uint64_t n = 0;
  Natural A, B, y;
  QMax q_max = QMax::strong();
  BoundSet bounds;
  Real gp_max;  // for q_max
  std::optional<std::uint64_t> max_admissible_exponent;  // empty when q_max <= 1
};

inline BoundsReport make_bounds_report(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y,
                                       const QMax& q_max) {
  BoundsReport r{n, A, B, y, q_max, evaluate_bounds(n, A, B, y, q_max), Real(0), std::nullopt};
  r.gp_max = *r.bounds.gp_max_custom;
  if (q_max.value > 1) r.max_admissible_exponent = max_admissible_exponent(q_max);
  return r;
}

namespace detail {

inline ojson real_or_null(const std::optional<Real>& v, int digits) {
  return v ? ojson(format_significant(*v, digits)) : ojson(nullptr);
}

inline std::string cell(const std::optional<Real>& v, int digits) {
  return v ? format_significant(*v, digits) : std::string();
}

inline std::string cell(const std::optional<Natural>& v) { return v ? v->str() : std::string(); }

inline std::string cell(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : std::string();
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline void write_table(std::ostream& os, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += "  ";
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size(), ' ');
    }
    os << s << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace detail

// ---- gain reports -----------------------------------------------------------

inline ojson to_json(const GainReport& r, int digits = kDefaultDisplayDigits) {
  const Solution& s = r.solution;
  ojson j;
  j["solution"] = {{"n", std::to_string(s.n())}, {"x", s.x().str()},       {"y", s.y().str()},
                   {"A", s.A().str()},            {"B", s.B().str()},       {"k", s.k().str()},
                   {"trivial_x", r.triviality() == Triviality::trivial_x}};
  j["terms"] = {{"C", r.C.str()},
                {"P", r.P.str()},
                {"radical_P", r.radical_P ? ojson(r.radical_P->str()) : ojson(nullptr)}};
  j["gains"] = {{"G_a", format_significant(r.G_a, digits)},
                {"G_p", detail::real_or_null(r.G_p, digits)},
                {"q", detail::real_or_null(r.q, digits)}};
  j["bounds"] = {{"ga_min", format_significant(r.bounds.ga_min, digits)},
                 {"q_min", format_significant(r.bounds.q_min, digits)},
                 {"gp_max_strong", format_significant(r.bounds.gp_max_strong, digits)},
                 {"gp_max_ultra", format_significant(r.bounds.gp_max_ultra, digits)},
                 {"k1_q_bound", format_significant(r.bounds.k1_q_bound, digits)}};
  if (r.bounds.gp_max_custom) j["bounds"]["gp_max_custom"] = format_significant(*r.bounds.gp_max_custom, digits);
  j["checks"] = {{"identity", true},
                 {"coprime", true},
                 {"thm1_holds", r.thm1_holds},
                 {"thm5_holds", r.thm5_holds ? ojson(*r.thm5_holds) : ojson(nullptr)}};
  return j;
}

inline std::vector<std::string> gain_columns(bool with_custom) {
  std::vector<std::string> h = {"n",      "x",     "y",           "A",           "B",     "k",
                                "trivial_x", "C",  "P",           "radical_P",   "G_a",   "G_p",
                                "q",      "ga_min", "q_min",      "gp_max_strong", "gp_max_ultra", "k1_q_bound"};
  if (with_custom) h.push_back("gp_max_custom");
  for (const char* c : {"identity", "coprime", "thm1_holds", "thm5_holds"}) h.emplace_back(c);
  return h;
}

inline std::vector<std::string> gain_row(const GainReport& r, int digits, bool with_custom) {
  const Solution& s = r.solution;
  auto f = [&](const Real& v) { return format_significant(v, digits); };
  std::vector<std::string> row = {std::to_string(s.n()),
                                  s.x().str(),
                                  s.y().str(),
                                  s.A().str(),
                                  s.B().str(),
                                  s.k().str(),
                                  detail::bool_str(r.triviality() == Triviality::trivial_x),
                                  r.C.str(),
                                  r.P.str(),
                                  detail::cell(r.radical_P),
                                  f(r.G_a),
                                  detail::cell(r.G_p, digits),
                                  detail::cell(r.q, digits),
                                  f(r.bounds.ga_min),
                                  f(r.bounds.q_min),
                                  f(r.bounds.gp_max_strong),
                                  f(r.bounds.gp_max_ultra),
                                  f(r.bounds.k1_q_bound)};
  if (with_custom) row.push_back(detail::cell(r.bounds.gp_max_custom, digits));
  row.push_back("true");
  row.push_back("true");
  row.push_back(detail::bool_str(r.thm1_holds));
  row.push_back(detail::cell(r.thm5_holds));
  return row;
}

inline void emit_report(std::ostream& os, const GainReport& r, OutputFormat fmt,
                        int digits = kDefaultDisplayDigits) {
  const bool custom = r.bounds.gp_max_custom.has_value();
  switch (fmt) {
    case OutputFormat::json: os << to_json(r, digits).dump(2) << '\n'; break;
    case OutputFormat::csv: detail::write_csv(os, gain_columns(custom), {gain_row(r, digits, custom)}); break;
    case OutputFormat::human: {
      const auto h = gain_columns(custom);
      const auto row = gain_row(r, digits, custom);
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < h.size(); ++i) rows.push_back({h[i], row[i].empty() ? "n/a" : row[i]});
      detail::write_table(os, {"field", "value"}, rows);
      if (!r.complete()) os << "note: factorization budget exhausted; radical-dependent fields unavailable\n";
      break;
    }
  }
}

// ---- search results ---------------------------------------------------------

inline ojson to_json(const SearchResult& r, int digits = kDefaultDisplayDigits) {
  ojson j;
  j["solutions"] = ojson::array();
  for (const auto& s : r.solutions) j["solutions"].push_back(to_json(s, digits));
  j["cells_scanned"] = r.cells_scanned;
  j["mode"] = to_string(r.mode);
  j["solution_count"] = r.solutions.size();
  j["unfactored_dropped"] = r.unfactored_dropped;
  return j;
}

inline void emit_report(std::ostream& os, const SearchResult& r, OutputFormat fmt,
                        int digits = kDefaultDisplayDigits) {
  const bool custom = !r.solutions.empty() && r.solutions.front().bounds.gp_max_custom.has_value();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(r.solutions.size());
  if (fmt != OutputFormat::json) {
    for (const auto& s : r.solutions) rows.push_back(gain_row(s, digits, custom));
  }
  switch (fmt) {
    case OutputFormat::json: os << to_json(r, digits).dump(2) << '\n'; break;
    case OutputFormat::csv: detail::write_csv(os, gain_columns(custom), rows); break;
    case OutputFormat::human:
      detail::write_table(os, gain_columns(custom), rows);
      os << r.solutions.size() << " solution(s), " << r.cells_scanned << " cells scanned\n";
      break;
  }
}

// ---- bounds -----------------------------------------------------------------

inline ojson to_json(const BoundsReport& b, int digits = kDefaultDisplayDigits) {
  ojson j;
  j["n"] = std::to_string(b.n);
  j["A"] = b.A.str();
  j["B"] = b.B.str();
  j["y"] = b.y.str();
  j["qmax"] = format_significant(b.q_max.value, digits);
  j["qmax_label"] = to_string(b.q_max.label);
  j["ga_min"] = format_significant(b.bounds.ga_min, digits);
  j["q_min"] = format_significant(b.bounds.q_min, digits);
  j["gp_max"] = format_significant(b.gp_max, digits);
  j["gp_max_strong"] = format_significant(b.bounds.gp_max_strong, digits);
  j["gp_max_ultra"] = format_significant(b.bounds.gp_max_ultra, digits);
  j["k1_q_bound"] = format_significant(b.bounds.k1_q_bound, digits);
  j["max_admissible_exponent"] =
      b.max_admissible_exponent ? ojson(std::to_string(*b.max_admissible_exponent)) : ojson(nullptr);
  return j;
}

inline void emit_report(std::ostream& os, const BoundsReport& b, OutputFormat fmt,
                        int digits = kDefaultDisplayDigits) {
  const ojson j = to_json(b, digits);
  if (fmt == OutputFormat::json) {
    os << j.dump(2) << '\n';
    return;
  }
  std::vector<std::string> keys;
  std::vector<std::string> values;
  for (const auto& [k, v] : j.items()) {
    keys.push_back(k);
    values.push_back(v.is_null() ? "" : v.get<std::string>());
  }
  if (fmt == OutputFormat::csv) {
    detail::write_csv(os, keys, {values});
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < keys.size(); ++i) rows.push_back({keys[i], values[i].empty() ? "n/a" : values[i]});
  detail::write_table(os, {"bound", "value"}, rows);
}

// ---- corpus -----------------------------------------------------------------

inline ojson to_json(const CorpusEntry& e) {
  ojson j;
  j["name"] = e.name;
  j["label"] = e.label;
  j["params"] = {{"n", std::to_string(e.n)}, {"x", e.x.str()}, {"y", e.y.str()}, {"A", e.A.str()}, {"B", e.B.str()}};
  j["k_printed"] = e.k_printed ? ojson(e.k_printed->str()) : ojson(nullptr);
  j["k_derived"] = e.k_derived ? ojson(e.k_derived->str()) : ojson(nullptr);
  j["expected"] = ojson::array();
  for (const auto& ex : e.expected) {
    j["expected"].push_back({{"quantity", ex.quantity},
                             {"value", ex.exact ? ex.exact->str() : format_significant(ex.value, 6)},
                             {"tolerance", ex.exact ? std::string("exact") : format_significant(ex.tolerance, 1)}});
  }
  return j;
}

inline ojson to_json(const VerificationReport& v, const CorpusEntry& e, int digits = kDefaultDisplayDigits) {
  ojson j = to_json(e);
  j["consistency"] = {{"identity", to_string(v.identity)},
                      {"k_printed_matches", to_string(v.k_printed_matches)},
                      {"coprimality", to_string(v.coprimality)}};
  j["flags"] = ojson::array();
  if (v.k_printed_matches == Verdict::fail) j["flags"].push_back("inconsistent-k");
  if (!v.quantities_pass()) j["flags"].push_back("quantity-mismatch");
  j["quantities"] = ojson::array();
  for (const auto& q : v.quantities) {
    ojson c;
    c["quantity"] = q.expected.quantity;
    c["expected"] = q.expected.exact ? q.expected.exact->str() : format_significant(q.expected.value, digits);
    c["tolerance"] = q.expected.exact ? std::string("exact") : format_significant(q.expected.tolerance, 1);
    if (q.computed_exact) {
      c["computed"] = q.computed_exact->str();
    } else {
      c["computed"] = detail::real_or_null(q.computed, digits);
    }
    c["pass"] = q.pass;
    j["quantities"].push_back(std::move(c));
  }
  j["report"] = v.report ? to_json(*v.report, digits) : ojson(nullptr);
  return j;
}

inline void emit_corpus(std::ostream& os, const std::vector<CorpusEntry>& entries,
                        const std::vector<VerificationReport>& reports, OutputFormat fmt,
                        int digits = kDefaultDisplayDigits) {
  if (fmt == OutputFormat::json) {
    ojson j;
    j["corpus_version"] = kCorpusVersion;
    j["entries"] = ojson::array();
    for (std::size_t i = 0; i < entries.size(); ++i) j["entries"].push_back(to_json(reports[i], entries[i], digits));
    os << j.dump(2) << '\n';
    return;
  }
  const std::vector<std::string> header = {"entry",    "quantity", "expected",          "tolerance",
                                           "computed", "pass",     "identity",          "k_printed_matches",
                                           "coprimality"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : reports) {
    for (const auto& q : v.quantities) {
      rows.push_back({v.name, q.expected.quantity,
                      q.expected.exact ? q.expected.exact->str() : format_significant(q.expected.value, digits),
                      q.expected.exact ? "exact" : format_significant(q.expected.tolerance, 1),
                      q.computed_exact ? q.computed_exact->str() : detail::cell(q.computed, digits),
                      detail::bool_str(q.pass), to_string(v.identity), to_string(v.k_printed_matches),
                      to_string(v.coprimality)});
    }
  }
  if (fmt == OutputFormat::csv) {
    detail::write_csv(os, header, rows);
  } else {
    detail::write_table(os, header, rows);
    for (const auto& v : reports) {
      if (v.k_printed_matches == Verdict::fail) os << v.name << ": printed k does not match B*y^n - A*x^n\n";
    }
  }
}

}  // namespace gainlab
