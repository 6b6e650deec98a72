#pragma once

// Exhaustive search for coprime solutions over finite parameter boxes.
//
// fixed_k   iterates (n, A, B, x, k) and solves for y exactly with an integer
//           n-th root; y is never scanned.
// derived_k iterates (n, A, B, x, y) and takes k = By^n - Ax^n when positive.
//
// Work is split into (n, A, B) units pulled by worker threads. Each worker
// owns its factorizer; results are merged with a total order, so any thread
// count yields the same canonical sequence.

#include "gainlab/bigmath.hpp"
#include "gainlab/factor.hpp"
#include "gainlab/gains.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace gainlab {

struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  std::uint64_t width() const { return hi - lo + 1; }
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class SearchMode { fixed_k, derived_k };

inline const char* to_string(SearchMode m) { return m == SearchMode::fixed_k ? "fixed_k" : "derived_k"; }

struct SearchBox {
  Interval n{2, 2};
  Interval x{2, 2};
  Interval y{2, 2};
  Interval A{1, 1};
  Interval B{1, 1};
  Interval k{1, 1};  // fixed_k only
  SearchMode mode = SearchMode::fixed_k;
  std::optional<Real> q_threshold;  // derived_k only
  bool require_nontrivial = true;
};

enum class Axis { n, x, y, A, B, k };

class invalid_box : public error {
 public:
  using error::error;
};

class box_too_large : public error {
 public:
  using error::error;
};

struct SearchOptions {
  std::uint64_t cell_ceiling = 10'000'000'000ULL;
  unsigned threads = 0;  // 0: hardware concurrency
  FactorBudget budget;
  std::optional<QMax> custom_qmax;
  /// Called with (cells done, cells total) roughly every progress_interval cells.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
  std::uint64_t progress_interval = 1'000'000;
};

struct SearchResult {
  SearchMode mode = SearchMode::fixed_k;
  std::vector<GainReport> solutions;
  std::uint64_t cells_scanned = 0;
  /// Solutions dropped because a threshold was set and q could not be
  /// evaluated within the factorization budget.
  std::uint64_t unfactored_dropped = 0;
  std::chrono::nanoseconds duration{0};
};

namespace detail {

inline std::uint64_t checked_product(std::initializer_list<std::uint64_t> widths) {
  std::uint64_t total = 1;
  for (std::uint64_t w : widths) {
    if (__builtin_mul_overflow(total, w, &total)) throw box_too_large("cell count overflows 64 bits");
  }
  return total;
}

inline Interval& axis_ref(SearchBox& b, Axis a) {
  switch (a) {
    case Axis::n: return b.n;
    case Axis::x: return b.x;
    case Axis::y: return b.y;
    case Axis::A: return b.A;
    case Axis::B: return b.B;
    case Axis::k: return b.k;
  }
  return b.n;
}

/// Lexicographic (n, k, A, B, x, y).
inline bool canonical_less(const Solution& a, const Solution& b) {
  if (a.n() != b.n()) return a.n() < b.n();
  if (auto c = a.k() <=> b.k(); c != 0) return c < 0;
  if (auto c = a.A() <=> b.A(); c != 0) return c < 0;
  if (auto c = a.B() <=> b.B(); c != 0) return c < 0;
  if (auto c = a.x() <=> b.x(); c != 0) return c < 0;
  return a.y() < b.y();
}

}  // namespace detail

/// Cells visited by the search proper: (n, A, B, x, k) in fixed_k mode,
/// (n, A, B, x, y) in derived_k mode.
inline std::uint64_t cell_count(const SearchBox& b) {
  const std::uint64_t last = b.mode == SearchMode::fixed_k ? b.k.width() : b.y.width();
  return detail::checked_product({b.n.width(), b.A.width(), b.B.width(), b.x.width(), last});
}

/// Cells visited by the brute-force oracle, which also scans y in fixed_k mode.
inline std::uint64_t oracle_cell_count(const SearchBox& b) {
  if (b.mode == SearchMode::derived_k) return cell_count(b);
  return detail::checked_product(
      {b.n.width(), b.A.width(), b.B.width(), b.x.width(), b.y.width(), b.k.width()});
}

inline void validate_box(const SearchBox& b, std::uint64_t ceiling) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw invalid_box(what);
  };
  for (const Interval* iv : {&b.n, &b.x, &b.y, &b.A, &b.B, &b.k}) need(iv->lo <= iv->hi, "empty interval");
  need(b.n.lo >= 2, "n must be >= 2");
  need(b.n.hi <= kMaxExponent, "n exceeds the supported exponent range");
  need(b.y.lo >= 2, "y must be >= 2");
  need(b.x.lo >= (b.require_nontrivial ? 2u : 1u),
       b.require_nontrivial ? "x must be >= 2 (pass allow-trivial to admit x = 1)" : "x must be >= 1");
  need(b.A.lo >= 1 && b.B.lo >= 1, "A and B must be >= 1");
  if (b.mode == SearchMode::fixed_k) need(b.k.lo >= 1, "k must be >= 1");
  if (cell_count(b) > ceiling) {
    throw box_too_large("box has " + std::to_string(cell_count(b)) + " cells, ceiling is " +
                        std::to_string(ceiling));
  }
}

/// Sorts into the mode's canonical order and removes duplicates.
/// fixed_k: canonical tuple order. derived_k: descending q, ties (and
/// reports without q, which go last) by canonical tuple order.
inline void canonicalize(SearchResult& r) {
  auto by_tuple = [](const GainReport& a, const GainReport& b) {
    return detail::canonical_less(a.solution, b.solution);
  };
  if (r.mode == SearchMode::fixed_k) {
    std::sort(r.solutions.begin(), r.solutions.end(), by_tuple);
  } else {
    std::sort(r.solutions.begin(), r.solutions.end(), [&](const GainReport& a, const GainReport& b) {
      if (a.q.has_value() != b.q.has_value()) return a.q.has_value();
      if (a.q && *a.q != *b.q) return *a.q > *b.q;
      return by_tuple(a, b);
    });
  }
  auto last = std::unique(r.solutions.begin(), r.solutions.end(),
                          [](const GainReport& a, const GainReport& b) { return a.solution == b.solution; });
  r.solutions.erase(last, r.solutions.end());
}

/// Splits one axis into up to `parts` contiguous, disjoint pieces.
inline std::vector<SearchBox> split_box(const SearchBox& box, Axis axis, std::size_t parts) {
  SearchBox probe = box;
  const Interval whole = detail::axis_ref(probe, axis);
  const std::uint64_t w = whole.width();
  const std::uint64_t count = std::max<std::uint64_t>(1, std::min<std::uint64_t>(parts, w));
  std::vector<SearchBox> out;
  std::uint64_t start = whole.lo;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t len = w / count + (i < w % count ? 1 : 0);
    SearchBox piece = box;
    detail::axis_ref(piece, axis) = {start, start + len - 1};
    out.push_back(std::move(piece));
    start += len;
  }
  return out;
}

/// Deterministic union of results from disjoint boxes of the same mode.
inline SearchResult merge_results(std::vector<SearchResult> parts) {
  SearchResult out;
  if (!parts.empty()) out.mode = parts.front().mode;
  for (auto& p : parts) {
    if (p.mode != out.mode) throw invalid_box("cannot merge results of different modes");
    out.cells_scanned += p.cells_scanned;
    out.unfactored_dropped += p.unfactored_dropped;
    out.duration += p.duration;
    std::move(p.solutions.begin(), p.solutions.end(), std::back_inserter(out.solutions));
  }
  canonicalize(out);
  return out;
}

namespace detail {

class ProgressTracker {
 public:
  ProgressTracker(const SearchOptions& opts, std::uint64_t total) : opts_(opts), total_(total) {}

  void add(std::uint64_t cells) {
    const std::uint64_t before = done_.fetch_add(cells);
    if (!opts_.progress || opts_.progress_interval == 0) return;
    const std::uint64_t after = before + cells;
    if (after / opts_.progress_interval != before / opts_.progress_interval) {
      std::lock_guard lock(mu_);
      opts_.progress(after, total_);
    }
  }

  std::uint64_t done() const { return done_.load(); }

 private:
  const SearchOptions& opts_;
  std::uint64_t total_;
  std::atomic<std::uint64_t> done_{0};
  std::mutex mu_;
};

struct WorkerOutput {
  std::vector<GainReport> solutions;
  std::uint64_t dropped = 0;
};

class UnitContext {
 public:
  UnitContext(const SearchBox& box, const SearchOptions& opts, std::uint64_t n, std::uint64_t A,
              std::uint64_t B, Factorizer& factorizer, WorkerOutput& out)
      : box_(box), opts_(opts), n_(n), A_(A), B_(B), factorizer_(factorizer), out_(out) {}

  // Validates and reports a candidate whose identity already holds.
  void emit(const Natural& x, const Natural& y, const Natural& k) {
    auto v = validate_solution(n_, x, y, A_, B_, k);
    auto* s = std::get_if<Solution>(&v);
    if (s == nullptr) return;  // coprimality (or range) failure
    const std::uint64_t yk = y.to_u64();
    auto it = bounds_.find(yk);
    if (it == bounds_.end()) {
      it = bounds_.emplace(yk, evaluate_bounds(n_, A_, B_, y, opts_.custom_qmax)).first;
    }
    GainReport report = compute_gains_tolerant(*s, factorizer_, it->second);
    if (box_.mode == SearchMode::derived_k && box_.q_threshold) {
      if (!report.q) {
        ++out_.dropped;
        return;
      }
      if (*report.q < *box_.q_threshold) return;
    }
    out_.solutions.push_back(std::move(report));
  }

  const SearchBox& box() const { return box_; }
  std::uint64_t n() const { return n_; }
  const Natural& A() const { return A_; }
  const Natural& B() const { return B_; }

 private:
  const SearchBox& box_;
  const SearchOptions& opts_;
  std::uint64_t n_;
  Natural A_, B_;
  Factorizer& factorizer_;
  WorkerOutput& out_;
  std::map<std::uint64_t, BoundSet> bounds_;
};

inline constexpr std::uint64_t kFlushCells = 1 << 16;
// Only small coordinates recur often enough to be worth memoizing.
inline constexpr std::size_t kSearchCacheBits = 32;

inline void scan_fixed_k_unit(UnitContext& ctx, ProgressTracker& progress) {
  const SearchBox& box = ctx.box();
  const std::uint64_t n = ctx.n();
  const Natural y_lo_pow = ipow(Natural(box.y.lo), n);
  const Natural y_hi_pow = ipow(Natural(box.y.hi), n);
  const bool unit_b = ctx.B().is_one();
  std::uint64_t pending = 0;
  for (std::uint64_t xv = box.x.lo;; ++xv) {
    const Natural x(xv);
    const Natural ax = ctx.A() * ipow(x, n);
    for (std::uint64_t kv = box.k.lo;; ++kv) {
      const Natural k(kv);
      const Natural t = ax + k;
      if (unit_b || (t % ctx.B()).is_zero()) {
        const Natural yn = unit_b ? t : t / ctx.B();
        if (yn >= y_lo_pow && yn <= y_hi_pow) {
          const Natural y = nth_root_floor(yn, n);
          if (ipow(y, n) == yn) ctx.emit(x, y, k);
        }
      }
      if (++pending == kFlushCells) {
        progress.add(pending);
        pending = 0;
      }
      if (kv == box.k.hi) break;
    }
    if (xv == box.x.hi) break;
  }
  progress.add(pending);
}

inline void scan_derived_k_unit(UnitContext& ctx, ProgressTracker& progress) {
  const SearchBox& box = ctx.box();
  const std::uint64_t n = ctx.n();
  std::uint64_t pending = 0;
  for (std::uint64_t yv = box.y.lo;; ++yv) {
    const Natural y(yv);
    const Natural by = ctx.B() * ipow(y, n);
    for (std::uint64_t xv = box.x.lo;; ++xv) {
      const Natural x(xv);
      const Natural ax = ctx.A() * ipow(x, n);
      if (auto k = checked_sub(by, ax); k && !k->is_zero()) ctx.emit(x, y, *k);
      if (++pending == kFlushCells) {
        progress.add(pending);
        pending = 0;
      }
      if (xv == box.x.hi) break;
    }
    if (yv == box.y.hi) break;
  }
  progress.add(pending);
}

template <typename ScanUnit>
SearchResult run_units(const SearchBox& box, const SearchOptions& opts, ScanUnit scan) {
  validate_box(box, opts.cell_ceiling);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t total_cells = cell_count(box);
  const std::uint64_t units = box.n.width() * box.A.width() * box.B.width();  // <= total_cells

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, units));

  ProgressTracker progress(opts, total_cells);
  std::atomic<std::uint64_t> next{0};
  std::vector<WorkerOutput> outputs(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto worker = [&](unsigned id) {
    try {
      Factorizer factorizer(opts.budget, kSearchCacheBits);
      for (std::uint64_t u = next.fetch_add(1); u < units; u = next.fetch_add(1)) {
        std::uint64_t rest = u;
        const std::uint64_t b = box.B.lo + rest % box.B.width();
        rest /= box.B.width();
        const std::uint64_t a = box.A.lo + rest % box.A.width();
        rest /= box.A.width();
        const std::uint64_t n = box.n.lo + rest;
        UnitContext ctx(box, opts, n, a, b, factorizer, outputs[id]);
        scan(ctx, progress);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next.store(units);
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SearchResult result;
  result.mode = box.mode;
  result.cells_scanned = progress.done();
  for (auto& o : outputs) {
    result.unfactored_dropped += o.dropped;
    std::move(o.solutions.begin(), o.solutions.end(), std::back_inserter(result.solutions));
  }
  canonicalize(result);
  result.duration = std::chrono::steady_clock::now() - t0;
  return result;
}

}  // namespace detail

inline SearchResult enumerate_fixed_k(const SearchBox& box, const SearchOptions& opts = {}) {
  if (box.mode != SearchMode::fixed_k) throw invalid_box("enumerate_fixed_k needs a fixed_k box");
  return detail::run_units(box, opts, detail::scan_fixed_k_unit);
}

inline SearchResult hunt_derived_k(const SearchBox& box, const SearchOptions& opts = {}) {
  if (box.mode != SearchMode::derived_k) throw invalid_box("hunt_derived_k needs a derived_k box");
  return detail::run_units(box, opts, detail::scan_derived_k_unit);
}

inline SearchResult run_search(const SearchBox& box, const SearchOptions& opts = {}) {
  return box.mode == SearchMode::fixed_k ? enumerate_fixed_k(box, opts) : hunt_derived_k(box, opts);
}

inline constexpr std::uint64_t kOracleCellLimit = 10'000'000;

/// Plain nested loops over every coordinate (y included in fixed_k mode),
/// exact evaluation of both sides, no root extraction. Test oracle.
inline SearchResult brute_force_oracle(const SearchBox& box, const SearchOptions& opts = {}) {
  validate_box(box, opts.cell_ceiling);
  if (oracle_cell_count(box) > kOracleCellLimit) throw box_too_large("oracle box exceeds 10^7 cells");
  const auto t0 = std::chrono::steady_clock::now();
  Factorizer factorizer(opts.budget, detail::kSearchCacheBits);
  SearchResult result;
  result.mode = box.mode;

  auto consider = [&](std::uint64_t n, const Natural& x, const Natural& y, const Natural& A,
                      const Natural& B, const Natural& k) {
    auto v = validate_solution(n, x, y, A, B, k);
    auto* s = std::get_if<Solution>(&v);
    if (s == nullptr) return;
    GainReport r = compute_gains_tolerant(*s, factorizer, evaluate_bounds(n, A, B, y, opts.custom_qmax));
    if (box.mode == SearchMode::derived_k && box.q_threshold) {
      if (!r.q) {
        ++result.unfactored_dropped;
        return;
      }
      if (*r.q < *box.q_threshold) return;
    }
    result.solutions.push_back(std::move(r));
  };

  for (std::uint64_t n = box.n.lo; n <= box.n.hi; ++n) {
    for (std::uint64_t a = box.A.lo; a <= box.A.hi; ++a) {
      for (std::uint64_t b = box.B.lo; b <= box.B.hi; ++b) {
        const Natural A(a), B(b);
        for (std::uint64_t xv = box.x.lo; xv <= box.x.hi; ++xv) {
          const Natural x(xv);
          const Natural lhs = A * ipow(x, n);
          for (std::uint64_t yv = box.y.lo; yv <= box.y.hi; ++yv) {
            const Natural y(yv);
            const Natural rhs = B * ipow(y, n);
            if (box.mode == SearchMode::derived_k) {
              ++result.cells_scanned;
              if (rhs > lhs) consider(n, x, y, A, B, *checked_sub(rhs, lhs));
              continue;
            }
            for (std::uint64_t kv = box.k.lo; kv <= box.k.hi; ++kv) {
              ++result.cells_scanned;
              const Natural k(kv);
              if (rhs == lhs + k) consider(n, x, y, A, B, k);
            }
          }
        }
      }
    }
  }
  canonicalize(result);
  result.duration = std::chrono::steady_clock::now() - t0;
  return result;
}

}  // namespace gainlab
