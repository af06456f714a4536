#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "admex/rational.hpp"

namespace admex {

// Context: for a moment order t, an admissible exponent Delta_t bounds the
// t-th moment of the biquadratic smooth Weyl sum by P^(t-4+Delta_t). This
// module does the exact bookkeeping: which (t, Delta_t) pairs are known,
// what linear interpolation gives in between, and what the two devices that
// beat plain interpolation produce (the convexity-breaking recursion and the
// Keil-Zhao threshold).

enum class RecordKind { baseline, interpolated, recursion, keil_zhao };

std::string_view kind_name(RecordKind k);
RecordKind kind_from_name(std::string_view name);

struct Provenance {
  std::string label;
  std::vector<Rational> parents;  // moment orders of the source records
  bool feedback = false;          // produced by a feedback round of the experimental iteration
};

struct ExponentRecord {
  Rational s;      // moment order, in [4, 12]
  Rational delta;  // in [0, 8]
  RecordKind kind = RecordKind::baseline;
  // strict = true: delta is an infimum; every value strictly above it is
  // admissible, but delta itself is not claimed.
  bool strict = false;
  Provenance provenance;
};

// Validates the field ranges; throws DomainError.
ExponentRecord make_record(Rational s, Rational delta, RecordKind kind,
                           bool strict, Provenance provenance);

// Ordered set of exponent records, at most one per moment order (the smaller
// delta wins). Treated as immutable once built; derivations copy.
class ExponentTable {
 public:
  void insert(ExponentRecord rec);

  const ExponentRecord* find(const Rational& s) const;
  bool empty() const { return by_s_.empty(); }
  std::size_t size() const { return by_s_.size(); }
  std::vector<ExponentRecord> records() const;  // ascending in s
  Rational min_s() const;
  Rational max_s() const;

 private:
  std::map<Rational, ExponentRecord> by_s_;
};

// The three seed exponents at moments 8, 10 and 12.
ExponentTable baseline_table();

struct EnvelopeValue {
  Rational value;
  Rational left, right;  // chord endpoints (equal at a winning record point)
  bool at_record = false;
};

// Lower convex envelope of the record set at s: the minimum over bracketing
// record pairs of the chord value, and of the record at s itself if present.
// Moments interpolate log-convexly, so every envelope value is admissible.
// Throws DomainError outside the record span.
Rational interpolate(const ExponentTable& table, const Rational& s);
EnvelopeValue interpolate_detail(const ExponentTable& table, const Rational& s);

// Inputs of the convexity-breaking recursion at target moment 12 - u: the
// admissible exponents at moments 10 - u and 12 - 2u.
struct RecursionInputs {
  RecursionInputs(Rational u_, Rational delta_10_minus_u_,
                  Rational delta_12_minus_2u_);

  Rational u;                  // in [0, 2]
  Rational delta_10_minus_u;   // >= 0
  Rational delta_12_minus_2u;  // >= 0
};

// The recursion hypothesis:
//   2*Delta_{10-u} - 4/5 <= Delta_{12-2u} <= 2*Delta_{10-u}.
// Interpolation from the baseline always lands inside this band.
bool check_recursion_hypothesis(const RecursionInputs& in);

// Infimum produced by the recursion:
//   Delta*_{12-u} = 3*Delta_{12-2u} / (8 - 2*Delta_{10-u} + Delta_{12-2u}).
// Every Delta_{12-u} > Delta* is admissible (open condition). Throws
// HypothesisError when the hypothesis fails.
Rational recursion_infimum(const RecursionInputs& in);

// The balancing point of the two sides of the recursion's mean-value bound:
//   phi0 = (1 + Delta_{12-2u}/2 - Delta_{10-u}) / (4 + Delta_{12-2u}/2 - Delta_{10-u}).
// Under the hypothesis, 1/6 <= phi0 <= 1/4; a value outside that range
// signals an arithmetic bug and raises InternalError.
Rational phi0(const RecursionInputs& in);

struct KzThreshold {
  Rational u0;      // s + 16 * delta_s
  bool valid;       // s >= 8, delta_s < 1/8 and u0 > 10
  bool superseded;  // u0 >= 12: the known Delta_12 = 0 already covers it
};

// Keil-Zhao device: from an admissible (s, delta_s) with s >= 8 and
// delta_s < 1/8, every moment w > s + 16*delta_s has Delta_w = 0.
// Validity is reported, never enforced.
KzThreshold kz_threshold(const Rational& s, const Rational& delta_s);

}  // namespace admex
