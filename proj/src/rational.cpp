#include "admex/rational.hpp"

#include <cctype>
#include <ostream>

namespace admex {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_fraction_string(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(s, 10));
    }
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den <= 0) throw ParseError("fraction string needs a positive denominator: " + s);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed fraction string: " + s);
  }
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  auto dot = rest.find('.');
  if (dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
    if (frac_part.empty()) throw ParseError("decimal has no digits after point: " + std::string(text));
  }
  if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw ParseError("malformed decimal: " + std::string(text));
  }
  mpz_class num(std::string(int_part) + std::string(frac_part), 10);
  if (negative) num = -num;
  return Rational(num, pow10(frac_part.size()));
}

namespace {

// Formats scaled / 10^places with the decimal point reinserted.
std::string format_scaled(const mpz_class& scaled, int places) {
  mpz_class a = ::abs(scaled);
  std::string digits = a.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  std::string out;
  if (scaled < 0) out += '-';
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
  }
  return out;
}

mpz_class scale_ceil(const Rational& x, int places) {
  mpz_class num = x.num() * pow10(places);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.den().get_mpz_t());
  return q;
}

mpz_class scale_floor(const Rational& x, int places) {
  mpz_class num = x.num() * pow10(places);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.den().get_mpz_t());
  return q;
}

}  // namespace

std::string render_ceiling(const Rational& x, int places) {
  if (places < 0) throw DomainError("render_ceiling: places must be >= 0");
  return format_scaled(scale_ceil(x, places), places);
}

std::string render_floor(const Rational& x, int places) {
  if (places < 0) throw DomainError("render_floor: places must be >= 0");
  return format_scaled(scale_floor(x, places), places);
}

Rational ceil_places(const Rational& x, int places) {
  if (places < 0) throw DomainError("ceil_places: places must be >= 0");
  return Rational(scale_ceil(x, places), pow10(places));
}

Rational floor_places(const Rational& x, int places) {
  if (places < 0) throw DomainError("floor_places: places must be >= 0");
  return Rational(scale_floor(x, places), pow10(places));
}

std::optional<std::string> decimal_if_exact(const Rational& x) {
  mpz_class d = x.den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
    ++fives;
  }
  if (d != 1) return std::nullopt;
  int places = static_cast<int>(std::max(twos, fives));
  mpz_class scaled = x.num() * pow10(places);
  mpz_divexact(scaled.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
  return format_scaled(scaled, places);
}

std::string compact_str(const Rational& x) {
  if (auto d = decimal_if_exact(x)) return *d;
  return x.str();
}

}  // namespace admex
