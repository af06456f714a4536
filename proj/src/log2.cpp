#include "admex/log2.hpp"

#include <algorithm>

namespace admex {

namespace {

mpz_class pow2(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return p;
}

}  // namespace

Log2Enclosure log2_enclosure(const Rational& x, unsigned frac_bits) {
  if (x.sign() <= 0) throw DomainError("log2: argument must be positive");

  // Normalize to y in [1, 2) exactly, collecting the integer part.
  long k = 0;
  Rational y = x;
  const Rational two(2);
  while (y >= two) {
    y /= two;
    ++k;
  }
  while (y < Rational(1)) {
    y *= two;
    --k;
  }
  if (y == Rational(1)) {
    Rational exact(k);
    return {exact, exact};
  }

  // Dyadic mantissa interval [lo, hi] / 2^prec containing y, maintained
  // through squarings with outward rounding. A fractional digit is emitted
  // only when the whole interval is on one side of 2, so every digit is a
  // true binary digit of log2(x).
  const unsigned prec = frac_bits + 64;
  const mpz_class scale = pow2(prec);
  const mpz_class two_scaled = 2 * scale;

  mpz_class lo, hi;
  {
    mpz_class num = y.num() * scale;
    mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), y.den().get_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), num.get_mpz_t(), y.den().get_mpz_t());
  }

  Rational acc(k);
  for (unsigned i = 1; i <= frac_bits; ++i) {
    mpz_class lo2 = lo * lo;
    mpz_fdiv_q_2exp(lo2.get_mpz_t(), lo2.get_mpz_t(), prec);
    mpz_class hi2 = hi * hi + scale - 1;
    mpz_fdiv_q_2exp(hi2.get_mpz_t(), hi2.get_mpz_t(), prec);

    if (lo2 >= two_scaled) {
      acc += Rational(mpz_class(1), pow2(i));
      mpz_fdiv_q_2exp(lo2.get_mpz_t(), lo2.get_mpz_t(), 1);
      hi2 += 1;
      mpz_fdiv_q_2exp(hi2.get_mpz_t(), hi2.get_mpz_t(), 1);
    } else if (hi2 >= two_scaled) {
      // Undecidable digit at this precision; the remaining fractional
      // contribution is within [0, 2^-(i-1)].
      return {acc, acc + Rational(mpz_class(1), pow2(i - 1))};
    }
    lo = lo2;
    hi = hi2;
  }
  return {acc, acc + Rational(mpz_class(1), pow2(frac_bits))};
}

Log2Enclosure log_ratio(const Rational& a, const Rational& b,
                        unsigned frac_bits) {
  if (b <= Rational(1)) throw DomainError("log_ratio: base must exceed 1");
  Log2Enclosure la = log2_enclosure(a, frac_bits);
  Log2Enclosure lb = log2_enclosure(b, frac_bits);
  if (lb.lo.sign() <= 0) throw InternalError("log_ratio: denominator enclosure touches zero");
  Rational q1 = la.lo / lb.lo;
  Rational q2 = la.lo / lb.hi;
  Rational q3 = la.hi / lb.lo;
  Rational q4 = la.hi / lb.hi;
  return {std::min(std::min(q1, q2), std::min(q3, q4)),
          std::max(std::max(q1, q2), std::max(q3, q4))};
}

std::string enclosure_decimal(const Log2Enclosure& e, int digits) {
  if (digits < 1) throw DomainError("enclosure_decimal: digits must be >= 1");
  Rational mid = e.midpoint();
  if (mid.is_zero()) return "0";

  // Significant digits -> fractional places: shift by the magnitude of the
  // leading digit (only magnitudes up to a few are ever needed here).
  Rational mag = mid.abs();
  int int_digits = 0;
  while (mag >= Rational(1)) {
    mag /= Rational(10);
    ++int_digits;
  }
  int places = std::max(0, digits - int_digits);
  // Round half away from zero at the last kept digit.
  mpz_class num = mid.num() * pow10(places) * 2 + (mid.sign() > 0 ? mid.den() : -mid.den());
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), mpz_class(mid.den() * 2).get_mpz_t());
  return render_ceiling(Rational(q, pow10(places)), places);
}

}  // namespace admex
