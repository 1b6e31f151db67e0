#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dstoch/error.hpp"

namespace dstoch {

/*
 * Exact rational number p/q with 64-bit numerator and denominator.
 *
 * Values are always kept in lowest terms with q > 0, so equality is plain
 * field comparison. Intermediate products are formed in 128 bits; any result
 * that does not fit back into 64 bits raises std::overflow_error rather than
 * wrapping silently.
 */
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type n) : num_(n), den_(1) {}  // NOLINT: implicit from integers

  Rational(int_type n, int_type d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    assign(n, d);
  }

  int_type num() const noexcept { return num_; }
  int_type den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_positive() const noexcept { return num_ > 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  Rational operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(static_cast<wide>(a.num_) + b.num_, a.den_);
    const int_type g = std::gcd(a.den_, b.den_);
    const wide bd = b.den_ / g;
    const wide ad = a.den_ / g;
    return from_wide(static_cast<wide>(a.num_) * bd + static_cast<wide>(b.num_) * ad,
                     static_cast<wide>(a.den_) * bd);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational{};
    // cross-reduce first so the 128-bit products stay small
    const int_type g1 = std::gcd(a.num_, b.den_);
    const int_type g2 = std::gcd(b.num_, a.den_);
    return from_wide(static_cast<wide>(a.num_ / g1) * (b.num_ / g2),
                     static_cast<wide>(a.den_ / g2) * (b.den_ / g1));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return a * Rational::from_wide(b.den_, b.num_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const wide lhs = static_cast<wide>(a.num_) * b.den_;
    const wide rhs = static_cast<wide>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  /// "num/den", always with both parts (integers print as "k/1").
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "p/q" or a bare integer "p".
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto parse_int = [&](std::string_view s) -> int_type {
      if (s.empty()) throw std::invalid_argument("Rational: empty component in '" + std::string(text) + "'");
      std::size_t pos = 0;
      const std::string owned(s);
      long long v = 0;
      try {
        v = std::stoll(owned, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
      }
      if (pos != owned.size()) throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
      return static_cast<int_type>(v);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const int_type d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using wide = __int128;

  static wide wide_gcd(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    constexpr wide u64 = static_cast<wide>(UINT64_MAX);
    if (a <= u64 && b <= u64) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    while (b != 0) {
      const wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(wide n, wide d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const wide g = wide_gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr wide lim = static_cast<wide>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<int_type>(n);
    r.den_ = static_cast<int_type>(d == 0 ? 1 : d);
    if (n == 0) r.den_ = 1;
    return r;
  }

  void assign(int_type n, int_type d) { *this = from_wide(n, d); }

  int_type num_ = 0;
  int_type den_ = 1;
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

/// r^k for k >= 0.
inline Rational pow(Rational r, unsigned k) {
  Rational out{1};
  while (k > 0) {
    if (k & 1U) out *= r;
    k >>= 1U;
    if (k > 0) r *= r;
  }
  return out;
}

}  // namespace dstoch
