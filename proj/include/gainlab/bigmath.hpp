#pragma once

// Exact natural numbers and high-precision logarithms.
//
// Natural wraps a GMP integer and keeps it nonnegative; every operation that
// could leave the naturals (subtraction, division by zero) is checked.
// Real is a fixed-precision MPFR float carrying ~70 decimal digits, of which
// kLogDigits are guaranteed for every logarithm produced here.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace gainlab {

namespace mp = boost::multiprecision;

/// Signed exact integer; used only where a value may legitimately be negative
/// (identity residuals).
using Integer = mp::mpz_int;

/// Working real type. Limbs live inline, no heap traffic per value.
using Real = mp::number<mp::mpfr_float_backend<70, mp::allocate_stack>, mp::et_off>;

/// Significant decimal digits guaranteed for every logarithm.
inline constexpr int kLogDigits = 64;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (0^0, ln 0, q_max <= 1, ...).
class undefined_input : public error {
 public:
  using error::error;
};

class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  /// Adopts a signed integer; throws undefined_input if it is negative.
  static Natural from_integer(Integer v) {
    if (v < 0) throw undefined_input("negative value is not a natural number");
    Natural r;
    r.v_ = std::move(v);
    return r;
  }

  /// Parses a plain decimal string (digits only, no sign, no whitespace).
  static Natural parse(std::string_view text) {
    if (text.empty()) throw undefined_input("empty integer literal");
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw undefined_input("not a nonnegative decimal integer: '" + std::string(text) + "'");
      }
    }
    Natural r;
    r.v_ = Integer(std::string(text));
    return r;
  }

  const Integer& value() const noexcept { return v_; }

  bool is_zero() const noexcept { return v_.is_zero(); }
  bool is_one() const noexcept { return v_ == 1; }

  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_.backend().data(), 2);
  }

  bool fits_u64() const { return bit_length() <= 64; }

  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("natural does not fit in 64 bits");
    return v_.convert_to<std::uint64_t>();
  }

  std::string str() const { return v_.str(); }

  std::size_t hash() const noexcept {
    const auto* z = v_.backend().data();
    std::size_t h = static_cast<std::size_t>(z->_mp_size);
    if (z->_mp_size != 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) * 0x9E3779B97F4A7C15ULL;
    return h;
  }

  Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
  Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }

  friend Natural operator/(const Natural& a, const Natural& b) {
    if (b.is_zero()) throw undefined_input("division by zero");
    Natural r;
    r.v_ = a.v_ / b.v_;
    return r;
  }
  friend Natural operator%(const Natural& a, const Natural& b) {
    if (b.is_zero()) throw undefined_input("division by zero");
    Natural r;
    r.v_ = a.v_ % b.v_;
    return r;
  }

  /// a - b if a >= b.
  friend std::optional<Natural> checked_sub(const Natural& a, const Natural& b) {
    if (a.v_ < b.v_) return std::nullopt;
    Natural r;
    r.v_ = a.v_ - b.v_;
    return r;
  }

  friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    int c = mpz_cmp(a.v_.backend().data(), b.v_.backend().data());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.v_; }

 private:
  Integer v_;
};

/// Logarithm value tagged with its guaranteed significant digits.
struct BigLog {
  Real value;
  int precision_digits = kLogDigits;
};

inline Natural gcd3(const Natural& a, const Natural& b, const Natural& c) {
  Integer g = mp::gcd(mp::gcd(a.value(), b.value()), c.value());
  return Natural::from_integer(std::move(g));
}

inline Natural ipow(const Natural& base, std::uint64_t exp) {
  if (base.is_zero() && exp == 0) throw undefined_input("0^0 is undefined");
  if (exp > std::numeric_limits<unsigned long>::max()) throw undefined_input("exponent too large");
  Integer r;
  mpz_pow_ui(r.backend().data(), base.value().backend().data(), static_cast<unsigned long>(exp));
  return Natural::from_integer(std::move(r));
}

/// floor(v^(1/n)): largest r with r^n <= v.
///
/// Seeds with 2^ceil(bits/n), which is never below the root, then runs the
/// integer Newton step r <- ((n-1)r + v / r^(n-1)) / n while it decreases.
inline Natural nth_root_floor(const Natural& v, std::uint64_t n) {
  if (n == 0) throw undefined_input("root index must be positive");
  if (n == 1 || v <= Natural(1)) return v;

  const std::size_t bits = v.bit_length();
  if (n >= bits) return Natural(1);  // 2^n > v

  const Integer& val = v.value();
  Integer r = Integer(1) << ((bits + n - 1) / n);
  const Integer nm1(n - 1);
  Integer t;
  for (;;) {
    Integer rp;
    mpz_pow_ui(rp.backend().data(), r.backend().data(), static_cast<unsigned long>(n - 1));
    t = (nm1 * r + val / rp) / n;
    if (t >= r) break;
    r = t;
  }
  // Exact floor condition: r^n <= v < (r+1)^n.
  Natural root = Natural::from_integer(r);
  while (ipow(root, n) > v) root = *checked_sub(root, Natural(1));
  while (ipow(root + Natural(1), n) <= v) root += Natural(1);
  return root;
}

namespace detail {

inline const Real& ln2() {
  static const Real value = mp::log(Real(2));
  return value;
}

}  // namespace detail

/// ln(v) as (shift)*ln 2 + ln(mantissa), where the mantissa keeps the top
/// working-precision bits of v.
inline BigLog ln_big(const Natural& v) {
  if (v.is_zero()) throw undefined_input("ln(0) is undefined");
  if (v.is_one()) return {Real(0)};

  constexpr std::size_t kMantissaBits = std::numeric_limits<Real>::digits + 16;
  const std::size_t bits = v.bit_length();
  if (bits <= kMantissaBits) {
    Real x;
    mpfr_set_z(x.backend().data(), v.value().backend().data(), MPFR_RNDN);
    return {mp::log(x)};
  }
  const std::size_t shift = bits - kMantissaBits;
  Integer m = v.value() >> shift;
  Real x;
  mpfr_set_z(x.backend().data(), m.backend().data(), MPFR_RNDN);
  return {mp::log(x) + Real(shift) * detail::ln2()};
}

/// Decimal rendering with `digits` significant digits, round-half-even on
/// the exact binary value.
inline std::string format_significant(const Real& x, int digits) {
  if (digits < 1) digits = 1;
  if (x.is_zero()) {
    return digits == 1 ? "0" : "0." + std::string(static_cast<std::size_t>(digits - 1), '0');
  }
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits),
                           x.backend().data(), MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);

  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  // value = 0.<s> * 10^exp10
  std::string out;
  const long e = static_cast<long>(exp10);
  const long nd = static_cast<long>(s.size());
  if (e > 0 && e <= 21) {
    if (e >= nd) {
      out = s + std::string(static_cast<std::size_t>(e - nd), '0');
    } else {
      out = s.substr(0, static_cast<std::size_t>(e)) + "." + s.substr(static_cast<std::size_t>(e));
    }
  } else if (e <= 0 && e > -6) {
    out = "0." + std::string(static_cast<std::size_t>(-e), '0') + s;
  } else {
    out = s.substr(0, 1);
    if (nd > 1) out += "." + s.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return sign + out;
}

/// Parses a decimal real literal ("1.5", "2", "1e-3") at working precision.
inline Real parse_real(std::string_view text) {
  Real r;
  std::string s(text);
  if (s.empty() || mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw undefined_input("not a real number: '" + s + "'");
  }
  return r;
}

}  // namespace gainlab

template <>
struct std::hash<gainlab::Natural> {
  std::size_t operator()(const gainlab::Natural& n) const noexcept { return n.hash(); }
};
