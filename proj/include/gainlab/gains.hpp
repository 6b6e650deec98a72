#pragma once

// Solutions of B*y^n = A*x^n + k, their gains, and the bounds on them.
//
//   G_a = ln(max(Ax^n, By^n)) / ln(xyABk)
//   G_p = ln(xyABk) / ln(rad(xyABk))
//   q   = ln(max(Ax^n, By^n)) / ln(rad(xyABk)) = G_a * G_p
//
// Structural bound (no conjecture):
//   G_a > n / ((n+2) + (n-1) ln(AB) / (n ln y + ln B))
// Under q < q_max this turns into G_p < q_max / G_a,min. The same expression
// with ln(By^n) in the denominator bounds q from below.

#include "gainlab/bigmath.hpp"
#include "gainlab/factor.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gainlab {

enum class Triviality { non_trivial, trivial_x };

inline const char* to_string(Triviality t) {
  return t == Triviality::trivial_x ? "trivial_x" : "non_trivial";
}

/// Largest exponent accepted by validation; beyond this the terms are too
/// large to be worth materializing.
inline constexpr std::uint64_t kMaxExponent = 1'000'000;

class Solution;

enum class ViolationKind { range, identity, coprimality };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::range: return "range-violation";
    case ViolationKind::identity: return "identity-violation";
    case ViolationKind::coprimality: return "coprimality-violation";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// B*y^n - A*x^n - k, present when the identity was evaluated and failed.
  std::optional<Integer> residual;

  bool has(ViolationKind k) const {
    for (const auto& v : violations) {
      if (v.kind == k) return true;
    }
    return false;
  }

  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.kind)) + ": " + v.detail;
    }
    return out;
  }
};

/// A coprime solution; only obtainable through validate_solution.
class Solution {
 public:
  std::uint64_t n() const noexcept { return n_; }
  const Natural& x() const noexcept { return x_; }
  const Natural& y() const noexcept { return y_; }
  const Natural& A() const noexcept { return A_; }
  const Natural& B() const noexcept { return B_; }
  const Natural& k() const noexcept { return k_; }

  Triviality triviality() const { return x_.is_one() ? Triviality::trivial_x : Triviality::non_trivial; }

  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  friend std::variant<Solution, ValidationReport> validate_solution(std::uint64_t, const Natural&,
                                                                     const Natural&, const Natural&,
                                                                     const Natural&, const Natural&);
  Solution(std::uint64_t n, Natural x, Natural y, Natural A, Natural B, Natural k)
      : n_(n), x_(std::move(x)), y_(std::move(y)), A_(std::move(A)), B_(std::move(B)), k_(std::move(k)) {}

  std::uint64_t n_ = 0;
  Natural x_, y_, A_, B_, k_;
};

using ValidationResult = std::variant<Solution, ValidationReport>;

/// Checks range, the exact identity, and gcd(Ax, By, k) = 1. x = 1 is
/// admitted and classified trivial_x.
inline ValidationResult validate_solution(std::uint64_t n, const Natural& x, const Natural& y,
                                          const Natural& A, const Natural& B, const Natural& k) {
  ValidationReport report;
  auto range = [&](bool ok, std::string what) {
    if (!ok) report.violations.push_back({ViolationKind::range, std::move(what)});
  };
  range(n >= 2, "n must be >= 2");
  range(n <= kMaxExponent, "n must be <= " + std::to_string(kMaxExponent));
  range(y >= Natural(2), "y must be >= 2");
  range(x >= Natural(1), "x must be >= 1");
  range(A >= Natural(1), "A must be >= 1");
  range(B >= Natural(1), "B must be >= 1");
  range(k >= Natural(1), "k must be >= 1");

  // The identity is only meaningful once the exponent is sane.
  if (n <= kMaxExponent) {
    const Natural lhs = B * ipow(y, n);
    const Natural rhs = A * ipow(x, n) + k;
    if (lhs != rhs) {
      report.residual = lhs.value() - rhs.value();
      report.violations.push_back(
          {ViolationKind::identity, "B*y^n - A*x^n - k = " + report.residual->str()});
    }
  }
  // For a + b = c, gcd(a, b, c) = 1 already forces pairwise coprimality.
  const Natural g = gcd3(A * x, B * y, k);
  if (!g.is_one()) {
    report.violations.push_back({ViolationKind::coprimality, "gcd(Ax, By, k) = " + g.str()});
  }

  if (!report.violations.empty()) return report;
  return Solution(n, x, y, A, B, k);
}

class invalid_solution : public error {
 public:
  explicit invalid_solution(ValidationReport r) : error(r.summary()), report_(std::move(r)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// validate_solution that throws invalid_solution instead of returning a report.
inline Solution make_solution(std::uint64_t n, const Natural& x, const Natural& y, const Natural& A,
                              const Natural& B, const Natural& k) {
  auto r = validate_solution(n, x, y, A, B, k);
  if (auto* rep = std::get_if<ValidationReport>(&r)) throw invalid_solution(std::move(*rep));
  return std::get<Solution>(std::move(r));
}

/// The conjectured ceiling on q.
struct QMax {
  enum class Label { strong, ultra, custom };

  Real value;
  Label label = Label::custom;

  static QMax strong() { return {Real(2), Label::strong}; }
  static QMax ultra() { return {Real(3) / 2, Label::ultra}; }
  static QMax custom(Real v) {
    if (!(v > 0)) throw undefined_input("q_max must be positive");
    return {std::move(v), Label::custom};
  }
};

inline const char* to_string(QMax::Label l) {
  switch (l) {
    case QMax::Label::strong: return "strong";
    case QMax::Label::ultra: return "ultra";
    case QMax::Label::custom: return "custom";
  }
  return "?";
}

namespace detail {

inline void check_bound_inputs(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y) {
  if (n < 2) throw undefined_input("bound requires n >= 2");
  if (n > kMaxExponent) throw undefined_input("bound requires n <= " + std::to_string(kMaxExponent));
  if (y < Natural(2)) throw undefined_input("bound requires y >= 2");
  if (A.is_zero() || B.is_zero()) throw undefined_input("bound requires A, B >= 1");
}

// (n+2) + (n-1) ln(AB) / denom. When AB = 1 the correction is exactly zero,
// so callers dividing by n or into n get n/(n+2) with a single rounding.
inline Real bound_core(std::uint64_t n, const Real& ln_ab, const Real& denom) {
  return Real(n + 2) + Real(n - 1) * ln_ab / denom;
}

// n ln y + ln B
inline Real structural_denominator(std::uint64_t n, const Natural& B, const Natural& y) {
  return Real(n) * ln_big(y).value + ln_big(B).value;
}

}  // namespace detail

inline Real ga_lower_bound(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y) {
  detail::check_bound_inputs(n, A, B, y);
  const Real ln_ab = ln_big(A * B).value;
  return Real(n) / detail::bound_core(n, ln_ab, detail::structural_denominator(n, B, y));
}

inline Real gp_upper_bound(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y,
                           const QMax& q_max) {
  detail::check_bound_inputs(n, A, B, y);
  const Real ln_ab = ln_big(A * B).value;
  return q_max.value * detail::bound_core(n, ln_ab, detail::structural_denominator(n, B, y)) / Real(n);
}

/// Evaluated through ln(B*y^n) directly rather than n ln y + ln B.
inline Real q_lower_bound(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y) {
  detail::check_bound_inputs(n, A, B, y);
  const Real ln_ab = ln_big(A * B).value;
  const Real ln_c = ln_big(B * ipow(y, n)).value;
  return Real(n) / detail::bound_core(n, ln_ab, ln_c);
}

/// For y^n = x^n + 1 with x, y >= 2: q > n/2.
inline Real k1_quality_bound(std::uint64_t n) {
  if (n < 2) throw undefined_input("k1 bound requires n >= 2");
  return Real(n) / 2;
}

/// Largest n with n/2 < q_max.
inline std::uint64_t max_admissible_exponent(const QMax& q_max) {
  if (!(q_max.value > 1)) throw undefined_input("q_max <= 1 excludes every exponent (out of model)");
  const Real twice = q_max.value * 2;
  if (twice > Real(std::uint64_t{1} << 62)) throw undefined_input("q_max too large");
  // largest integer strictly below 2*q_max
  return mp::ceil(twice).convert_to<std::uint64_t>() - 1;
}

struct BoundSet {
  Real ga_min;
  Real q_min;
  Real gp_max_strong;
  Real gp_max_ultra;
  std::optional<Real> gp_max_custom;
  Real k1_q_bound;
};

inline BoundSet evaluate_bounds(std::uint64_t n, const Natural& A, const Natural& B, const Natural& y,
                                const std::optional<QMax>& custom = std::nullopt) {
  detail::check_bound_inputs(n, A, B, y);
  const Real ln_ab = ln_big(A * B).value;
  const Real core = detail::bound_core(n, ln_ab, detail::structural_denominator(n, B, y));
  BoundSet b;
  b.ga_min = Real(n) / core;
  b.q_min = q_lower_bound(n, A, B, y);
  b.gp_max_strong = QMax::strong().value * core / Real(n);
  b.gp_max_ultra = QMax::ultra().value * core / Real(n);
  if (custom) b.gp_max_custom = custom->value * core / Real(n);
  b.k1_q_bound = k1_quality_bound(n);
  return b;
}

/// a > b with a relative guard band of 1e-40, so rounding noise can never
/// turn a failed strict inequality into a pass.
inline bool strictly_exceeds(const Real& a, const Real& b) {
  static const Real kGuard("1e-40");
  const Real scale = mp::abs(b) > 1 ? Real(mp::abs(b)) : Real(1);
  return a > b + kGuard * scale;
}

struct GainReport {
  Solution solution;
  Natural C;  // dominant term B*y^n
  Natural P;  // x*y*A*B*k
  std::optional<Natural> radical_P;  // absent if factorization ran out of budget
  Real G_a;
  std::optional<Real> G_p;
  std::optional<Real> q;
  BoundSet bounds;
  bool dominant_is_by = true;  // B*y^n > A*x^n, the structural bound's hypothesis
  bool thm1_holds = false;     // G_a > ga_min
  std::optional<bool> thm5_holds;  // q > q_min

  Triviality triviality() const { return solution.triviality(); }
  bool complete() const { return radical_P.has_value(); }
};

class degenerate_denominator : public error {
 public:
  using error::error;
};

namespace detail {

inline GainReport build_report(const Solution& s, Factorizer& factorizer, BoundSet bounds,
                               bool tolerate_unfactored) {
  const std::uint64_t n = s.n();
  const Natural ax = s.A() * ipow(s.x(), n);
  Natural C = s.B() * ipow(s.y(), n);
  Natural P = s.x() * s.y() * s.A() * s.B() * s.k();
  const Real ln_p = ln_big(P).value;
  if (P.is_one()) throw degenerate_denominator("x*y*A*B*k = 1");

  GainReport r{s, std::move(C), std::move(P), std::nullopt, Real(0), std::nullopt, std::nullopt, std::move(bounds),
               true, false, std::nullopt};
  r.dominant_is_by = r.C > ax;
  const Natural& top = r.dominant_is_by ? r.C : ax;
  const Real ln_top = ln_big(top).value;
  r.G_a = ln_top / ln_p;
  r.thm1_holds = r.dominant_is_by && strictly_exceeds(r.G_a, r.bounds.ga_min);

  try {
    const std::array<Factorization, 5> parts = {
        factorizer.factorize(s.x()), factorizer.factorize(s.y()), factorizer.factorize(s.A()),
        factorizer.factorize(s.B()), factorizer.factorize(s.k())};
    const Natural rad = merge_factorizations(parts).radical();
    const Real ln_r = ln_big(rad).value;
    if (ln_r == 0) throw degenerate_denominator("rad(x*y*A*B*k) = 1");
    r.radical_P = rad;
    r.G_p = ln_p / ln_r;
    r.q = ln_top / ln_r;
    r.thm5_holds = strictly_exceeds(*r.q, r.bounds.q_min);
  } catch (const budget_exceeded&) {
    if (!tolerate_unfactored) throw;
  }
  return r;
}

}  // namespace detail

/// Full report for one solution. Throws budget_exceeded if a term resists
/// factorization.
inline GainReport compute_gains(const Solution& s, Factorizer& factorizer,
                                const std::optional<QMax>& custom = std::nullopt) {
  return detail::build_report(s, factorizer, evaluate_bounds(s.n(), s.A(), s.B(), s.y(), custom), false);
}

inline GainReport compute_gains(const Solution& s, const std::optional<QMax>& custom = std::nullopt) {
  Factorizer f;
  return compute_gains(s, f, custom);
}

/// Like compute_gains with precomputed bounds; a factorization that runs out
/// of budget leaves radical_P, G_p, q and thm5_holds empty instead of throwing.
inline GainReport compute_gains_tolerant(const Solution& s, Factorizer& factorizer, BoundSet bounds) {
  return detail::build_report(s, factorizer, std::move(bounds), true);
}

}  // namespace gainlab
