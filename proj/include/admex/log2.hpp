#pragma once

#include <string>

#include "admex/rational.hpp"

namespace admex {

// Certified bounds lo <= log2(x) <= hi, both dyadic rationals.
struct Log2Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool exact() const { return lo == hi; }
};

// Base-2 logarithm of a positive rational by binary digit extraction
// (repeated squaring of a dyadic mantissa with outward rounding). Every
// emitted digit is certified by an exact comparison, so the enclosure is
// rigorous; powers of two come out exact. Width <= 2^-frac_bits except in
// the (measure-zero) case where a digit cannot be decided at the working
// precision, in which case a correspondingly wider enclosure is returned.
Log2Enclosure log2_enclosure(const Rational& x, unsigned frac_bits = 64);

// Enclosure of log(a)/log(b) for a > 0, b > 1 (any log base; the ratio is
// base-free). Exact when both logs are: log_ratio(4, 2) == [2, 2].
Log2Enclosure log_ratio(const Rational& a, const Rational& b,
                        unsigned frac_bits = 64);

// Midpoint of the enclosure rendered to `digits` significant digits.
std::string enclosure_decimal(const Log2Enclosure& e, int digits);

}  // namespace admex
