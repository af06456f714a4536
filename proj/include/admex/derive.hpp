#pragma once

#include <optional>
#include <string>
#include <vector>

#include "admex/exponent.hpp"
#include "admex/log2.hpp"
#include "admex/rational.hpp"

namespace admex {

// paper: each derived record is rounded up in its final decimal place before
//        later steps consume it, reproducing the published table bit for bit.
// exact: records keep the exact infimum. Such values are conditional (the
//        open condition is never closed by rounding), and are labeled so.
enum class Mode { paper, exact };

std::string_view mode_name(Mode m);
Mode mode_from_name(std::string_view name);

struct DerivationConfig {
  Mode mode = Mode::paper;
  // Number of dyadic targets 12 - 2^-j, j = 0 .. dyadic_depth-1.
  int dyadic_depth = 3;
  // Paper-mode rounding applied when a derived record is inserted.
  int round_places = 7;
  // Threshold search grid; empty means default_kz_grid().
  std::vector<Rational> kz_grid;
  int workers = 1;

  void validate() const;  // throws DomainError
};

// Uniform step 1/100 over [11, 12]; the dyadic record points join at search
// time. A disclosed grid keeps the optimization reproducible.
std::vector<Rational> default_kz_grid();

// 12 - 2^-j for j = 0 .. depth-1.
std::vector<Rational> dyadic_points(int depth);

// One application of the convexity-breaking recursion at target moment
// s_target in [10, 12): u = 12 - s_target, sources interpolated at 10 - u
// and 12 - 2u. Returns the raw (unrounded) strict record; the hypothesis is
// checked and HypothesisError thrown on failure.
ExponentRecord derive_at(const ExponentTable& table, const Rational& s_target);

// Everything cmd-level tracing wants to show about one derive_at call.
struct DerivationTrace {
  Rational u;
  Rational source_low_moment;   // 10 - u
  Rational source_high_moment;  // 12 - 2u
  EnvelopeValue source_low;     // envelope at 10 - u
  EnvelopeValue source_high;    // envelope at 12 - 2u
  Rational hypothesis_lower;    // 2*low - 4/5
  Rational hypothesis_upper;    // 2*low
  bool hypothesis_ok = false;
  std::optional<Rational> phi0_value;  // present when the hypothesis holds
  std::optional<ExponentRecord> result;
};

DerivationTrace derive_at_trace(const ExponentTable& table, const Rational& s_target);

// Rounds a derived record per mode: paper mode takes the ceiling at
// round_places (closing the open condition whenever rounding moved the
// value); exact mode returns it unchanged.
ExponentRecord round_for_insert(ExponentRecord rec, const DerivationConfig& config);

// Ascending pass over the dyadic targets, each inserted result feeding the
// later steps, starting from the baseline.
ExponentTable dyadic_pass(const DerivationConfig& config);

// Best admissible bound the machinery yields at s in [10, 12]: the smaller
// of the envelope and a fresh recursion at s (when its hypothesis holds),
// the recursion branch rounded per mode.
Rational curve_value(const ExponentTable& table, const Rational& s,
                     const DerivationConfig& config);

// The one-step-direct bound at moment 10 + t versus the interpolated line.
struct DirectComparison {
  Rational direct;           // exact quotient (3*D8 - 3t*(D8 - D10)) / (8 - D8)
  Rational direct_majorant;  // its rounded-coefficient majorant line
  Rational interpolated;     // the interpolated line through moments 10 and 11
};

// t in [0, 1]. The direct route is inferior to interpolation everywhere
// except t = 1, where the two coincide to within the display rounding.
DirectComparison compare_direct(const Rational& t);

struct KzCandidate {
  Rational s;
  Rational delta;  // curve_value at s
  KzThreshold threshold;
};

struct KzOptimum {
  Rational s_star;
  Rational u_star;
  bool superseded = false;
  std::vector<KzCandidate> candidates;  // every valid grid candidate, ascending s
};

// Minimizes s + 16 * curve_value(s) over the grid joined with the table's
// record points in [10, 12]; valid candidates only. Grid evaluations are
// exact, so the result is independent of evaluation order and worker count.
// Throws DomainError when no grid point yields a valid threshold.
KzOptimum optimize_kz(const ExponentTable& table, const DerivationConfig& config);

struct FixedPointResult {
  ExponentTable table;
  int rounds = 0;
  bool converged = false;
};

// Experimental: re-runs the dyadic pass with each round's output as the next
// round's interpolation source until the envelope stops improving (probe-grid
// decrease <= 10^-12) or max_rounds is hit. Records inserted by feedback
// rounds are flagged; nothing beyond round one is claimed admissible.
FixedPointResult fixed_point(const DerivationConfig& config, int max_rounds);

// Enclosure of log(38/15)/log(2), the decay-rate constant of the recursion's
// gain near moment 12.
Log2Enclosure decay_constant_enclosure();

// The same constant as a 12-significant-digit decimal.
std::string decay_constant();

}  // namespace admex
