// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "gainlab/gainlab.hpp"
#include "gainlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gainlab;
using Clock = std::chrono::steady_clock;

struct Check {
  std::string detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [X]");
    ok = ok && cond;
  }

  void near(const std::string& name, const Real& got, const char* want, const char* tol) {
    const bool pass = mp::abs(Real(got - Real(want))) <= Real(tol);
    expect(pass, name + "=" + format_significant(got, 6) + " (want " + want + "+-" + tol + ")");
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3fs (limit %gs)", secs, limit_s);
  c.expect(secs < limit_s, timing);
  if (!c.ok) ++failures;
  std::printf("%s  %d. %s: %s\n", c.ok ? "PASS" : "FAIL", id, title, c.detail.c_str());
  std::fflush(stdout);
}

std::string canonical_json(const SearchResult& r) { return to_json(r).dump(); }

// Set of (n, x, y, A, B, k) tuples, in canonical order.
std::vector<std::string> tuples(const SearchResult& r) {
  std::vector<std::string> out;
  for (const auto& g : r.solutions) {
    const Solution& s = g.solution;
    out.push_back(std::to_string(s.n()) + "," + s.x().str() + "," + s.y().str() + "," + s.A().str() + "," +
                  s.B().str() + "," + s.k().str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main() {
  criterion(1, "Reyssat reproduction", 0.1, [](Check& c) {
    const GainReport r = compute_gains(make_solution(5, 9, 23, 109, 1, 2));
    c.near("q", *r.q, "1.6299", "1e-3");
    c.near("G_a", r.G_a, "1.46283", "5e-4");
    c.near("G_p", *r.G_p, "1.114", "1e-3");
  });

  criterion(2, "de Weger reproduction", 0.1, [](Check& c) {
    const GainReport r = compute_gains(make_solution(3, 25, 128, 3087, 23, 121));
    c.near("G_p", *r.G_p, "2.2091", "5e-4");
    c.near("G_a", r.G_a, "0.7360", "5e-4");
    c.expect(r.radical_P && *r.radical_P == Natural(53130), "radical=" + r.radical_P->str() + " (want 53130)");
    const BoundsReport strong = make_bounds_report(3, 3087, 23, 128, QMax::strong());
    const BoundsReport ultra = make_bounds_report(3, 3087, 23, 128, QMax::ultra());
    c.near("ga_min", strong.bounds.ga_min, "0.4790", "5e-4");
    c.near("gp_max(2)", strong.gp_max, "4.1754", "1e-3");
    c.near("gp_max(1.5)", ultra.gp_max, "3.1315", "1e-3");
  });

  criterion(3, "Nitaj reproduction", 1.0, [](Check& c) {
    const CorpusEntry e = *find_entry("nitaj");
    const Natural A = ipow(7, 2) * ipow(41, 2) * ipow(311, 3);
    const Natural k = *checked_sub(ipow(2, 59), A);
    c.expect(e.k_derived && *e.k_derived == k, "k_derived=" + k.str());
    const GainReport r = compute_gains(make_solution(59, 1, 2, A, 1, k));
    c.near("ga_min", r.bounds.ga_min, "0.5815", "5e-4");
    c.near("gp_max(2)", r.bounds.gp_max_strong, "3.4394", "1e-3");
    c.near("G_p", *r.G_p, "3.2737", "5e-3");
    c.near("G_p/gp_max", *r.G_p / r.bounds.gp_max_strong, "0.952", "5e-3");
    const VerificationReport v = verify_entry(e);
    c.expect(v.k_printed_matches == Verdict::fail, "printed-k mismatch reported");
  });

  criterion(4, "Squares and cubes under q_max = 3/2", 1.0, [](Check& c) {
    const Real g2 = gp_upper_bound(2, 1, 1, 2, QMax::ultra());
    const Real g3 = gp_upper_bound(3, 1, 1, 2, QMax::ultra());
    c.expect(g2 == Real(3), "gp_max(n=2)=" + format_significant(g2, 40));
    c.expect(g3 == Real("2.5"), "gp_max(n=3)=" + format_significant(g3, 40));
  });

  criterion(5, "Exponent admissibility and y^n = x^n + 1", 10.0, [](Check& c) {
    const auto e2 = max_admissible_exponent(QMax::strong());
    const auto e15 = max_admissible_exponent(QMax::ultra());
    c.expect(e2 == 3, "max_n(2)=" + std::to_string(e2));
    c.expect(e15 == 2, "max_n(1.5)=" + std::to_string(e15));
    SearchBox box;
    box.mode = SearchMode::fixed_k;
    box.n = {2, 6};
    box.x = {2, 1000};
    box.y = {2, 1000};
    box.k = {1, 1};
    const SearchResult r = brute_force_oracle(box);
    c.expect(r.solutions.empty(), std::to_string(r.solutions.size()) + " solutions over " +
                                      std::to_string(r.cells_scanned) + " cells");
  });

  criterion(6, "Bounds hold over a hunt", 60.0, [](Check& c) {
    SearchBox box;
    box.mode = SearchMode::derived_k;
    box.n = {2, 5};
    box.A = {1, 10};
    box.B = {1, 10};
    box.x = {2, 60};
    box.y = {2, 60};
    const SearchResult r = hunt_derived_k(box);
    std::size_t bad_ga = 0, bad_q = 0, bad_prod = 0, bad_gp = 0, missing = 0;
    const Real tol("1e-40");
    for (const auto& g : r.solutions) {
      if (!g.q || !g.G_p) {
        ++missing;
        continue;
      }
      const Solution& s = g.solution;
      if (!strictly_exceeds(g.G_a, ga_lower_bound(s.n(), s.A(), s.B(), s.y()))) ++bad_ga;
      if (!strictly_exceeds(*g.q, q_lower_bound(s.n(), s.A(), s.B(), s.y()))) ++bad_q;
      if (mp::abs(Real(*g.q - g.G_a * *g.G_p)) > tol * mp::abs(*g.q)) ++bad_prod;
      if (*g.G_p < 1) ++bad_gp;
    }
    c.expect(r.solutions.size() >= 300, std::to_string(r.solutions.size()) + " solutions");
    c.expect(missing == 0, "unfactored=" + std::to_string(missing));
    c.expect(bad_ga == 0, "G_a<=ga_min: " + std::to_string(bad_ga));
    c.expect(bad_q == 0, "q<=q_min: " + std::to_string(bad_q));
    c.expect(bad_prod == 0, "q!=G_a*G_p: " + std::to_string(bad_prod));
    c.expect(bad_gp == 0, "G_p<1: " + std::to_string(bad_gp));
  });

  criterion(7, "Oracle equivalence and partition-merge", 60.0, [](Check& c) {
    std::mt19937_64 rng(20240917);
    auto pick = [&](std::uint64_t lo, std::uint64_t span) {
      const std::uint64_t a = lo + rng() % span;
      return Interval{a, a + rng() % span};
    };
    int disagreements = 0;
    std::uint64_t total = 0;
    for (int i = 0; i < 20; ++i) {
      SearchBox box;
      box.mode = i % 2 ? SearchMode::derived_k : SearchMode::fixed_k;
      box.n = pick(2, 3);
      box.A = pick(1, 6);
      box.B = pick(1, 6);
      box.x = pick(2, 25);
      box.y = pick(2, 25);
      if (box.mode == SearchMode::fixed_k) box.k = {1, 1 + rng() % 400};
      if (box.mode == SearchMode::derived_k && i % 4 == 1) box.q_threshold = Real("0.9");
      if (oracle_cell_count(box) > 1'000'000) box.k.hi = box.k.lo;
      const SearchResult fast = run_search(box);
      const SearchResult slow = brute_force_oracle(box);
      total += fast.solutions.size();
      if (tuples(fast) != tuples(slow)) ++disagreements;
    }
    c.expect(disagreements == 0,
             "20 boxes, " + std::to_string(total) + " solutions, " + std::to_string(disagreements) + " disagreements");

    for (SearchMode mode : {SearchMode::fixed_k, SearchMode::derived_k}) {
      SearchBox box;
      box.mode = mode;
      box.n = {2, 4};
      box.A = {1, 8};
      box.B = {1, 8};
      box.x = {2, 40};
      box.y = {2, 40};
      box.k = {1, 300};
      const std::string whole = canonical_json(run_search(box));
      std::vector<SearchResult> parts;
      for (const auto& piece : split_box(box, Axis::x, 8)) parts.push_back(run_search(piece));
      const std::string merged = canonical_json(merge_results(std::move(parts)));
      c.expect(whole == merged, std::string(to_string(mode)) + " 8-way merge byte-identical (" +
                                    std::to_string(whole.size()) + " bytes)");
    }
  });

  criterion(8, "Logarithm additivity and exact integer roots", 30.0, [](Check& c) {
    std::mt19937_64 rng(77);
    auto random_natural = [&](unsigned limbs) {
      Integer v = 0;
      for (unsigned i = 0; i < limbs; ++i) v = (v << 64) + Integer(rng());
      return Natural::from_integer(v);
    };
    int add_fail = 0, root_fail = 0;
    const Real tol("1e-45");
    for (int i = 0; i < 10000; ++i) {
      const Natural a = random_natural(1 + rng() % 3) + Natural(1);
      const Natural b = random_natural(1 + rng() % 3) + Natural(1);
      const Real lhs = ln_big(a * b).value;
      const Real rhs = ln_big(a).value + ln_big(b).value;
      if (mp::abs(Real(lhs - rhs)) > tol * (lhs > 1 ? lhs : Real(1))) ++add_fail;
    }
    for (int i = 0; i < 10000; ++i) {
      const Natural v = random_natural(1 + rng() % 4);
      const std::uint64_t n = 1 + rng() % 80;
      const Natural r = nth_root_floor(v, n);
      if (!(ipow(r, n) <= v && ipow(r + Natural(1), n) > v)) ++root_fail;
    }
    c.expect(add_fail == 0, "additivity failures=" + std::to_string(add_fail) + "/10000");
    c.expect(root_fail == 0, "root failures=" + std::to_string(root_fail) + "/10000");
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
