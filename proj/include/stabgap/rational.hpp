#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "stabgap/errors.hpp"

namespace stabgap {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Arithmetic goes
/// through 128-bit intermediates and throws ValidationError on overflow,
/// so results are either exact or rejected.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  /// Parses `p`, `-p`, `p/q` or a plain decimal such as `0.125`.
  static Rational parse(std::string_view text);

  /// Canonical form: `p` when the denominator is 1, `p/q` otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ValidationError("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw ValidationError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw ValidationError("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&](const char* why) {
    throw ValidationError(std::string("cannot parse rational '") + std::string(text) + "': " + why);
  };
  if (text.empty()) fail("empty");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto read_digits = [&](std::size_t& p, __int128& value, int& count) {
    count = 0;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
      value = value * 10 + (text[p] - '0');
      if (value > static_cast<__int128>(INT64_MAX) * 1000) fail("too many digits");
      ++p;
      ++count;
    }
  };
  __int128 num = 0;
  int int_digits = 0;
  read_digits(pos, num, int_digits);
  __int128 den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    __int128 d = 0;
    int d_digits = 0;
    read_digits(pos, d, d_digits);
    if (d_digits == 0) fail("missing denominator");
    if (int_digits == 0) fail("missing numerator");
    den = d;
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int frac_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      num = num * 10 + (text[pos] - '0');
      den *= 10;
      if (den > static_cast<__int128>(INT64_MAX)) fail("too many decimal places");
      ++pos;
      ++frac_digits;
    }
    if (int_digits + frac_digits == 0) fail("no digits");
  } else if (int_digits == 0) {
    fail("no digits");
  }
  if (pos != text.size()) fail("unexpected character");
  if (negative) num = -num;
  return from_wide(num, den);
}

}  // namespace stabgap
