#pragma once

// Built-in case studies: Reyssat (1987), de Weger (1985), Nitaj (1993).
//
// Each entry stores the raw parameters and the published values with a
// tolerance one digit wider than their print precision. k is always rederived
// from B*y^n - A*x^n; a printed k is kept only as a claim to be checked.

#include "gainlab/bigmath.hpp"
#include "gainlab/factor.hpp"
#include "gainlab/gains.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gainlab {

inline constexpr int kCorpusVersion = 1;

struct Expected {
  std::string quantity;
  Real value;
  Real tolerance;
  std::optional<Natural> exact;  // integer quantities compare exactly
};

struct CorpusEntry {
  std::string name;
  std::string label;
  std::uint64_t n = 0;
  Natural x, y, A, B;
  std::optional<Natural> k_printed;
  /// B*y^n - A*x^n; empty if that difference is not positive.
  std::optional<Natural> k_derived;
  std::vector<Expected> expected;
};

enum class Verdict { pass, fail, not_applicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

namespace detail {

inline CorpusEntry make_entry(std::string name, std::string label, std::uint64_t n, Natural x, Natural y,
                              Natural A, Natural B, std::optional<Natural> k_printed,
                              std::vector<Expected> expected) {
  CorpusEntry e{std::move(name), std::move(label), n, std::move(x), std::move(y), std::move(A), std::move(B),
                std::move(k_printed), std::nullopt, std::move(expected)};
  auto k = checked_sub(e.B * ipow(e.y, n), e.A * ipow(e.x, n));
  if (k && !k->is_zero()) e.k_derived = std::move(*k);
  return e;
}

inline Expected approx(std::string q, const char* value, const char* tol) {
  return {std::move(q), Real(value), Real(tol), std::nullopt};
}

inline Expected exactly(std::string q, std::uint64_t v) {
  return {std::move(q), Real(v), Real(0), Natural(v)};
}

}  // namespace detail

inline std::vector<CorpusEntry> builtin_corpus() {
  using detail::approx;
  using detail::exactly;
  std::vector<CorpusEntry> out;

  // 2 + 3^10 * 109 = 23^5
  out.push_back(detail::make_entry("reyssat", "Reyssat (1987)", 5, 9, 23, 109, 1, Natural(2),
                                   {approx("q", "1.6299", "1e-3"), approx("G_a", "1.46283", "5e-4"),
                                    approx("G_p", "1.114", "1e-3")}));

  // 23 * 128^3 = 3087 * 25^3 + 121
  out.push_back(detail::make_entry(
      "deweger", "de Weger (1985)", 3, 25, 128, 3087, 23, Natural(121),
      {approx("G_p", "2.2091", "5e-4"), approx("G_a", "0.7360", "5e-4"), approx("ga_min", "0.4790", "5e-4"),
       approx("gp_max_strong", "4.1754", "1e-3"), approx("gp_max_ultra", "3.1315", "1e-3"),
       exactly("radical_P", 53130)}));

  // 1 * 2^59 = (7^2 * 41^2 * 311^3) * 1^59 + k, printed k = 11^16 * 13^2 * 79
  const Natural nitaj_A = ipow(7, 2) * ipow(41, 2) * ipow(311, 3);
  const Natural nitaj_k_printed = ipow(11, 16) * ipow(13, 2) * Natural(79);
  out.push_back(detail::make_entry(
      "nitaj", "Nitaj (1993)", 59, 1, 2, nitaj_A, 1, nitaj_k_printed,
      {approx("ga_min", "0.5815", "5e-4"), approx("gp_max_strong", "3.4394", "1e-3"),
       approx("G_p", "3.2737", "5e-3"), approx("limit_ratio", "0.952", "5e-3")}));
  return out;
}

inline std::optional<CorpusEntry> find_entry(const std::string& name) {
  for (auto& e : builtin_corpus()) {
    if (e.name == name) return e;
  }
  return std::nullopt;
}

struct QuantityCheck {
  Expected expected;
  std::optional<Real> computed;
  std::optional<Natural> computed_exact;
  bool pass = false;
};

struct VerificationReport {
  std::string name;
  std::vector<QuantityCheck> quantities;
  Verdict identity = Verdict::not_applicable;
  Verdict k_printed_matches = Verdict::not_applicable;
  Verdict coprimality = Verdict::not_applicable;
  std::optional<GainReport> report;
  std::optional<ValidationReport> validation;

  bool quantities_pass() const {
    for (const auto& q : quantities) {
      if (!q.pass) return false;
    }
    return true;
  }

  bool consistent() const {
    return identity != Verdict::fail && k_printed_matches != Verdict::fail && coprimality != Verdict::fail;
  }

  const QuantityCheck* find(const std::string& quantity) const {
    for (const auto& q : quantities) {
      if (q.expected.quantity == quantity) return &q;
    }
    return nullptr;
  }
};

namespace detail {

// Computed value of a named quantity, if the report carries it.
inline std::optional<Real> quantity_value(const GainReport& r, const std::string& q) {
  if (q == "q") return r.q;
  if (q == "G_a") return r.G_a;
  if (q == "G_p") return r.G_p;
  if (q == "ga_min") return r.bounds.ga_min;
  if (q == "q_min") return r.bounds.q_min;
  if (q == "gp_max_strong") return r.bounds.gp_max_strong;
  if (q == "gp_max_ultra") return r.bounds.gp_max_ultra;
  if (q == "limit_ratio") {
    if (!r.G_p) return std::nullopt;
    return *r.G_p / r.bounds.gp_max_strong;
  }
  if (q == "radical_P" && r.radical_P) {
    Real v;
    mpfr_set_z(v.backend().data(), r.radical_P->value().backend().data(), MPFR_RNDN);
    return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Recomputes every expected quantity from the raw parameters and runs the
/// consistency checks. Failures are reported as data.
inline VerificationReport verify_entry(const CorpusEntry& e, Factorizer& factorizer) {
  VerificationReport v;
  v.name = e.name;

  if (e.k_derived) {
    const bool holds = e.B * ipow(e.y, e.n) == e.A * ipow(e.x, e.n) + *e.k_derived;
    v.identity = holds ? Verdict::pass : Verdict::fail;
    if (e.k_printed) v.k_printed_matches = *e.k_printed == *e.k_derived ? Verdict::pass : Verdict::fail;
    v.coprimality = gcd3(e.A * e.x, e.B * e.y, *e.k_derived).is_one() ? Verdict::pass : Verdict::fail;

    auto validated = validate_solution(e.n, e.x, e.y, e.A, e.B, *e.k_derived);
    if (auto* s = std::get_if<Solution>(&validated)) {
      v.report = compute_gains_tolerant(*s, factorizer, evaluate_bounds(e.n, e.A, e.B, e.y));
    } else {
      v.validation = std::get<ValidationReport>(std::move(validated));
    }
  } else {
    v.identity = Verdict::fail;  // B*y^n <= A*x^n: no positive k
  }

  for (const auto& ex : e.expected) {
    QuantityCheck c{ex, std::nullopt, std::nullopt, false};
    if (v.report) {
      if (ex.exact) {
        if (ex.quantity == "radical_P" && v.report->radical_P) c.computed_exact = *v.report->radical_P;
        c.pass = c.computed_exact && *c.computed_exact == *ex.exact;
      }
      c.computed = detail::quantity_value(*v.report, ex.quantity);
      if (!ex.exact) c.pass = c.computed && mp::abs(*c.computed - ex.value) <= ex.tolerance;
    }
    v.quantities.push_back(std::move(c));
  }
  return v;
}

inline VerificationReport verify_entry(const CorpusEntry& e) {
  Factorizer f;
  return verify_entry(e, f);
}

}  // namespace gainlab
