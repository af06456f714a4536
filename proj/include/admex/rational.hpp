#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "admex/errors.hpp"

namespace admex {

// Exact fraction: arbitrary-precision numerator over a positive denominator,
// always stored in lowest terms so equality is structural.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(static_cast<signed long>(n)) {}
  Rational(long long n) : q_(mpz_class(std::to_string(n), 10)) {}
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& n) : q_(n) {}

  // Parses "num/den" or a bare integer; throws ParseError on anything else.
  static Rational from_fraction_string(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ + b.q_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ - b.q_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ * b.q_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DomainError("Rational: division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c <=> 0;
  }

  // "num/den", denominator always shown ("0/1", "23/2", ...).
  std::string str() const;

  double to_double() const { return q_.get_d(); }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;  // canonical: den > 0, gcd(|num|, den) = 1
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// 10^e as an exact integer.
mpz_class pow10(unsigned long e);

// Exact value of a finite decimal string (optional sign, optional fraction
// part). "0.1991466" -> 1991466/10^7. Throws ParseError on malformed input.
Rational parse_decimal(std::string_view text);

// Smallest decimal with `places` fractional digits that is >= x, as a string.
// places = 0 renders a bare integer. Exact decimals render unchanged.
std::string render_ceiling(const Rational& x, int places);

// Largest decimal with `places` fractional digits that is <= x. Provided for
// lower-bound displays; derivations only ever round up.
std::string render_floor(const Rational& x, int places);

// Same roundings as exact rationals: ceil(x * 10^places) / 10^places etc.
Rational ceil_places(const Rational& x, int places);
Rational floor_places(const Rational& x, int places);

// Minimal exact decimal rendering when the denominator is of the form
// 2^a * 5^b; nullopt for non-terminating fractions.
std::optional<std::string> decimal_if_exact(const Rational& x);

// Human-oriented: exact decimal when terminating, "num/den" otherwise.
std::string compact_str(const Rational& x);

}  // namespace admex
