#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "reflow/errors.hpp"

namespace reflow {

namespace detail {

using Int128 = __int128;
using UInt128 = unsigned __int128;

inline UInt128 uabs128(Int128 v) {
  return v < 0 ? UInt128(0) - UInt128(v) : UInt128(v);
}

inline UInt128 gcd128(UInt128 a, UInt128 b) {
  while (b != 0) {
    UInt128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string u128_to_string(UInt128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {out.rbegin(), out.rend()};
}

inline std::string i128_to_string(Int128 v) {
  return v < 0 ? "-" + u128_to_string(uabs128(v)) : u128_to_string(UInt128(v));
}

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow (add)");
  return r;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow (mul)");
  return r;
}

}  // namespace detail

/// Exact rational number. Numerator and denominator are 128-bit integers kept
/// in lowest terms with a positive denominator; every operation checks for
/// overflow and throws std::overflow_error instead of wrapping.
class Rational {
 public:
  using Int = detail::Int128;

  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(unsigned long long value) : num_(static_cast<Int>(value)), den_(1) {}
  Rational(int value) : num_(value), den_(1) {}

  Rational(Int num, Int den) : num_(num), den_(den) { normalize(); }

  /// Accepts "7", "-3", "2.2", "21/20". Throws ValidationError on anything else.
  static Rational parse(std::string_view text);

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const { return Rational(-num_, den_, Raw{}); }

  Rational& operator+=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      num_ = detail::checked_add(num_, o.num_);
      return *this;
    }
    Int n = detail::checked_add(detail::checked_mul(num_, o.den_), detail::checked_mul(o.num_, den_));
    Int d = detail::checked_mul(den_, o.den_);
    num_ = n;
    den_ = d;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      num_ = detail::checked_mul(num_, o.num_);
      return *this;
    }
    num_ = detail::checked_mul(num_, o.num_);
    den_ = detail::checked_mul(den_, o.den_);
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    num_ = detail::checked_mul(num_, o.den_);
    den_ = detail::checked_mul(den_, o.num_);
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Normalized forms: a/b < c/d iff a*d < c*b. 128x128 products are checked.
    Int lhs = detail::checked_mul(a.num_, b.den_);
    Int rhs = detail::checked_mul(b.num_, a.den_);
    return lhs <=> rhs;
  }

  /// "p" when integral, otherwise "p/q".
  std::string to_string() const;
  /// Always "p/q", even for integers ("150/1").
  std::string to_fraction_string() const;
  /// Exact decimal with the minimal number of fractional digits when the
  /// denominator is of the form 2^a*5^b; fails otherwise.
  bool has_exact_decimal() const;
  std::string to_exact_decimal_string() const;
  /// Decimal rounded half away from zero to `places` fractional digits.
  std::string to_decimal_string(int places) const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  struct Raw {};
  Rational(Int num, Int den, Raw) : num_(num), den_(den) {}

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = detail::checked_mul(num_, -1);
      den_ = detail::checked_mul(den_, -1);
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    detail::UInt128 g = detail::gcd128(detail::uabs128(num_), detail::UInt128(den_));
    if (g > 1) {
      num_ /= static_cast<Int>(g);
      den_ /= static_cast<Int>(g);
    }
  }

  Int num_;
  Int den_;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw ValidationError("cannot parse rational from '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](Int& out) {
    std::size_t count = 0;
    out = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      out = detail::checked_add(detail::checked_mul(out, 10), text[pos] - '0');
      ++pos;
      ++count;
    }
    if (count == 0) fail();
  };
  Int whole = 0;
  digits(whole);
  if (pos == text.size()) return negative ? Rational(-whole, 1) : Rational(whole, 1);
  if (text[pos] == '/') {
    ++pos;
    Int den = 0;
    digits(den);
    if (pos != text.size()) fail();
    if (den == 0) fail();
    return negative ? Rational(-whole, den) : Rational(whole, den);
  }
  if (text[pos] == '.') {
    ++pos;
    std::size_t frac_begin = pos;
    Int frac = 0;
    digits(frac);
    if (pos != text.size()) fail();
    Int scale = 1;
    for (std::size_t i = frac_begin; i < pos; ++i) scale = detail::checked_mul(scale, 10);
    Int num = detail::checked_add(detail::checked_mul(whole, scale), frac);
    return negative ? Rational(-num, scale) : Rational(num, scale);
  }
  fail();
  return Rational();  // unreachable
}

inline std::string Rational::to_string() const {
  if (den_ == 1) return detail::i128_to_string(num_);
  return detail::i128_to_string(num_) + "/" + detail::i128_to_string(den_);
}

inline std::string Rational::to_fraction_string() const {
  return detail::i128_to_string(num_) + "/" + detail::i128_to_string(den_);
}

inline bool Rational::has_exact_decimal() const {
  detail::Int128 d = den_;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

inline std::string Rational::to_exact_decimal_string() const {
  detail::Int128 d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) throw std::domain_error("rational " + to_string() + " has no finite decimal form");
  int places = twos > fives ? twos : fives;
  detail::Int128 scaled = num_;
  for (int i = fives; i < places; ++i) scaled = detail::checked_mul(scaled, 5);
  for (int i = twos; i < places; ++i) scaled = detail::checked_mul(scaled, 2);
  // scaled == num * 10^places / den, exactly.
  detail::UInt128 mag = detail::uabs128(scaled);
  std::string digits = detail::u128_to_string(mag);
  std::string out = num_ < 0 ? "-" : "";
  if (places == 0) return out + digits;
  if (digits.size() <= static_cast<std::size_t>(places))
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  out += digits.substr(0, digits.size() - places);
  out += ".";
  out += digits.substr(digits.size() - places);
  return out;
}

inline std::string Rational::to_decimal_string(int places) const {
  detail::UInt128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  detail::UInt128 mag = detail::uabs128(num_);
  detail::UInt128 den = detail::UInt128(den_);
  // round(|num| * scale / den), half away from zero
  detail::UInt128 scaled = mag * scale;
  if (mag != 0 && scaled / mag != scale) throw std::overflow_error("rational overflow (decimal)");
  detail::UInt128 rounded = (scaled + den / 2) / den;
  std::string digits = detail::u128_to_string(rounded);
  std::string out = num_ < 0 ? "-" : "";
  if (places == 0) return out + digits;
  if (digits.size() <= static_cast<std::size_t>(places))
    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
  out += digits.substr(0, digits.size() - places);
  out += ".";
  out += digits.substr(digits.size() - places);
  return out;
}

}  // namespace reflow
