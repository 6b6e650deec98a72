#pragma once

// Integer factorization and radicals.
//
// Strategy: trial division by every prime below 10^6, a deterministic
// Miller-Rabin certificate for what remains, then Brent's variant of Pollard
// rho for composite cofactors. Rho work is metered; exhausting the budget is
// an error carrying the partial factorization, never a silently short radical.

#include "gainlab/bigmath.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gainlab {

struct PrimePower {
  Natural prime;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // strictly ascending primes
  bool complete = true;

  Natural product() const {
    Natural r(1);
    for (const auto& f : factors) r *= ipow(f.prime, f.exponent);
    return r;
  }

  Natural radical() const {
    Natural r(1);
    for (const auto& f : factors) r *= f.prime;
    return r;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Rho iteration limit for a single factorization.
struct FactorBudget {
  std::uint64_t rho_iterations = 100'000'000;
};

class budget_exceeded : public error {
 public:
  budget_exceeded(Factorization partial, Natural cofactor)
      : error("factorization budget exceeded; unfactored cofactor " + cofactor.str()),
        partial_(std::move(partial)),
        cofactor_(std::move(cofactor)) {}

  const Factorization& partial() const noexcept { return partial_; }
  const Natural& cofactor() const noexcept { return cofactor_; }

 private:
  Factorization partial_;
  Natural cofactor_;
};

namespace detail {

inline constexpr std::uint32_t kTrialLimit = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(78'498);
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// The first 13 primes as witnesses certify primality below 3.317e24
// (Sorenson & Webster); the first 12 already cover every 64-bit value.
inline constexpr std::array<std::uint32_t, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
// Extra witnesses used above the certified range (probable prime only).
inline constexpr std::array<std::uint32_t, 12> kExtraWitnesses = {43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::size_t i = 0; i < 12; ++i) {
    std::uint64_t x = powmod(kWitnesses[i], d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

inline bool miller_rabin_big(const Integer& n, std::uint32_t base) {
  Integer d = n - 1;
  std::size_t s = 0;
  while (!mp::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  Integer x = mp::powm(Integer(base), d, n);
  const Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (std::size_t r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

/// Tracks rho iterations against the budget across one factorize call.
struct RhoMeter {
  std::uint64_t limit;
  std::uint64_t used = 0;

  bool spend(std::uint64_t n) {
    used += n;
    return used <= limit;
  }
};

// Brent's cycle detection with batched gcds. Returns a nontrivial factor of
// odd composite n, or 0 if the meter ran out.
inline std::uint64_t brent_u64(std::uint64_t n, RhoMeter& meter) {
  constexpr std::uint64_t kBatch = 128;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    auto f = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>((static_cast<u128>(mulmod(v, v, n)) + c) % n);
    };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      if (!meter.spend(r)) return 0;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t m = std::min(kBatch, r - k);
        if (!meter.spend(m)) return 0;
        for (std::uint64_t i = 0; i < m; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline Integer brent_big(const Integer& n, RhoMeter& meter) {
  constexpr std::uint64_t kBatch = 128;
  for (unsigned c = 1;; ++c) {
    Integer y = 2, x = 2, ys = 2, q = 1, g = 1;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      if (!meter.spend(r)) return 0;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const std::uint64_t m = std::min(kBatch, r - k);
        if (!meter.spend(m)) return 0;
        for (std::uint64_t i = 0; i < m; ++i) {
          y = f(y);
          q = (q * mp::abs(x - y)) % n;
        }
        g = mp::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = mp::gcd(mp::abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Collects prime factors (with multiplicity) of a cofactor that has no prime
// below the trial-division limit. Unsplittable composites go to `stuck`.
inline void split_cofactor(const Integer& n, RhoMeter& meter, std::vector<Integer>& primes,
                           std::vector<Integer>& stuck);

}  // namespace detail

/// Primality with a deterministic certificate below 3.317e24; above that
/// range the answer is a strong probable-prime verdict over 25 bases.
inline bool is_prime(const Natural& v) {
  if (v.fits_u64()) return detail::is_prime_u64(v.to_u64());
  const Integer& n = v.value();
  for (std::uint32_t p : detail::kWitnesses) {
    if (mpz_divisible_ui_p(n.backend().data(), p)) return false;
  }
  for (std::uint32_t p : detail::kWitnesses) {
    if (!detail::miller_rabin_big(n, p)) return false;
  }
  static const Integer kCertified("3317044064679887385961981");
  if (n < kCertified) return true;
  for (std::uint32_t p : detail::kExtraWitnesses) {
    if (!detail::miller_rabin_big(n, p)) return false;
  }
  return true;
}

namespace detail {

inline void split_cofactor(const Integer& n, RhoMeter& meter, std::vector<Integer>& primes,
                           std::vector<Integer>& stuck) {
  if (n == 1) return;
  if (is_prime(Natural::from_integer(n))) {
    primes.push_back(n);
    return;
  }
  Integer d;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    d = Integer(brent_u64(n.convert_to<std::uint64_t>(), meter));
  } else {
    d = brent_big(n, meter);
  }
  if (d == 0) {
    stuck.push_back(n);
    return;
  }
  split_cofactor(d, meter, primes, stuck);
  split_cofactor(n / d, meter, primes, stuck);
}

inline Factorization collect(std::vector<Integer> primes) {
  std::sort(primes.begin(), primes.end());
  Factorization f;
  for (const auto& p : primes) {
    if (!f.factors.empty() && f.factors.back().prime.value() == p) {
      ++f.factors.back().exponent;
    } else {
      f.factors.push_back({Natural::from_integer(p), 1});
    }
  }
  return f;
}

}  // namespace detail

inline Factorization factorize(const Natural& v, FactorBudget budget = {}) {
  if (v.is_zero()) throw undefined_input("cannot factor 0");
  std::vector<Integer> primes;

  if (v.fits_u64()) {
    std::uint64_t n = v.to_u64();
    for (std::uint32_t p : detail::small_primes()) {
      if (std::uint64_t{p} * p > n) break;
      while (n % p == 0) {
        primes.emplace_back(p);
        n /= p;
      }
    }
    if (n > 1) {
      if (n <= std::uint64_t{detail::kTrialLimit} * detail::kTrialLimit || detail::is_prime_u64(n)) {
        primes.emplace_back(n);
        n = 1;
      }
    }
    if (n == 1) return detail::collect(std::move(primes));
    std::vector<Integer> stuck;
    detail::RhoMeter meter{budget.rho_iterations};
    detail::split_cofactor(Integer(n), meter, primes, stuck);
    if (!stuck.empty()) {
      auto partial = detail::collect(std::move(primes));
      partial.complete = false;
      Integer rest = 1;
      for (const auto& s : stuck) rest *= s;
      throw budget_exceeded(std::move(partial), Natural::from_integer(rest));
    }
    return detail::collect(std::move(primes));
  }

  Integer n = v.value();
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > n) break;
    while (mpz_divisible_ui_p(n.backend().data(), p)) {
      primes.emplace_back(p);
      mpz_divexact_ui(n.backend().data(), n.backend().data(), p);
    }
  }
  std::vector<Integer> stuck;
  detail::RhoMeter meter{budget.rho_iterations};
  if (n > 1) detail::split_cofactor(n, meter, primes, stuck);
  if (!stuck.empty()) {
    auto partial = detail::collect(std::move(primes));
    partial.complete = false;
    Integer rest = 1;
    for (const auto& s : stuck) rest *= s;
    throw budget_exceeded(std::move(partial), Natural::from_integer(rest));
  }
  return detail::collect(std::move(primes));
}

/// Factorization of a product given as separate factors, merged.
inline Factorization merge_factorizations(std::span<const Factorization> parts) {
  std::map<Natural, std::uint32_t> acc;
  for (const auto& part : parts) {
    for (const auto& pp : part.factors) acc[pp.prime] += pp.exponent;
  }
  Factorization out;
  for (auto& [p, e] : acc) out.factors.push_back({p, e});
  return out;
}

inline Natural radical(const Natural& v, FactorBudget budget = {}) {
  return factorize(v, budget).radical();
}

inline bool is_squarefree(const Natural& v, FactorBudget budget = {}) {
  const auto f = factorize(v, budget);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

/// Budgeted factorizer with a memo keyed by value. Concurrent callers may
/// race to fill the same key; both compute the same result, first insert wins.
/// Values wider than `cache_max_bits` are factored but not remembered.
class Factorizer {
 public:
  explicit Factorizer(FactorBudget budget = {},
                      std::size_t cache_max_bits = std::numeric_limits<std::size_t>::max())
      : budget_(budget), cache_max_bits_(cache_max_bits) {}

  Factorizer(const Factorizer&) = delete;
  Factorizer& operator=(const Factorizer&) = delete;

  const FactorBudget& budget() const noexcept { return budget_; }

  Factorization factorize(const Natural& v) {
    if (v.bit_length() > cache_max_bits_) return gainlab::factorize(v, budget_);
    {
      std::shared_lock lock(mu_);
      if (auto it = cache_.find(v); it != cache_.end()) return it->second;
    }
    Factorization f = gainlab::factorize(v, budget_);
    std::unique_lock lock(mu_);
    return cache_.try_emplace(v, std::move(f)).first->second;
  }

  std::size_t cache_size() const {
    std::shared_lock lock(mu_);
    return cache_.size();
  }

 private:
  FactorBudget budget_;
  std::size_t cache_max_bits_;
  mutable std::shared_mutex mu_;
  std::unordered_map<Natural, Factorization> cache_;
};

}  // namespace gainlab
