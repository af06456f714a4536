#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "admex/rational.hpp"

namespace admex {

// Desk-scale empirical side: exact enumeration of smooth sets, exact even
// moments of the biquadratic smooth Weyl sum via solution counting, and the
// combinatorial identities behind the difference-polynomial step. Everything
// here is exact integer arithmetic; nothing asymptotic is (or can be)
// verified at this scale.

struct LabOptions {
  // Cap on frequency-map work: |set|^k entries for a moment count.
  std::uint64_t budget = 20'000'000;
  int workers = 1;
};

struct SmoothSet {
  std::vector<std::int64_t> elements;  // ascending, no duplicates
  std::int64_t P = 0;
  std::int64_t R = 0;
};

// All n in [1, P] whose prime divisors are <= R (1 qualifies vacuously).
// Sieve-based; P is capped at 10^8 to bound memory (BudgetError beyond).
SmoothSet smooth_set(std::int64_t P, std::int64_t R);

struct RestrictedSmoothSet {
  std::vector<std::int64_t> elements;
  std::int64_t L = 0;
  std::int64_t pi = 0;
  std::int64_t R = 0;
};

// All n in (L, L*pi] that are R-smooth, divisible by the prime pi, with no
// prime factor below pi. Throws DomainError if pi is not prime or pi > R.
RestrictedSmoothSet restricted_smooth_set(std::int64_t L, std::int64_t pi,
                                          std::int64_t R);

struct MomentCount {
  std::int64_t P = 0;
  std::int64_t R = 0;
  int k = 0;
  std::uint64_t count = 0;  // exact
};

// Exact 2k-th moment of the smooth Weyl sum: the number of 2k-tuples from
// the smooth set with equal sums of fourth powers on both sides, computed
// from the frequency map of k-fold sums (sum of squared multiplicities).
// The map may be built in parallel over slices of the first coordinate; the
// merged counts are independent of the worker count.
MomentCount moment_count(std::int64_t P, std::int64_t R, int k,
                         const LabOptions& opts = {});

// Difference polynomial 8*h*z*(z^2 + h^2*m^8); for m != 0 it equals
// ((z + h*m^4)^4 - (z - h*m^4)^4) / m^4.
mpz_class psi(std::int64_t z, std::int64_t h, std::int64_t m);

// The quotient form above; throws DomainError when m = 0.
mpz_class psi_direct(std::int64_t z, std::int64_t h, std::int64_t m);

struct SubstitutionCheck {
  std::uint64_t pair_count = 0;   // pairs 1 <= y < x <= P with x == y mod u^4
  std::uint64_t image_count = 0;  // distinct images (z, h) = (x+y, (x-y)/u^4)
  bool identity_ok = false;       // ranges and the difference identity held
};

// Exhaustive check of the substitution (x, y) -> (z, h): injectivity (via
// the counts), the ranges 1 <= z <= 2P and 1 <= h <= P/u^4, and that
// 16(x^4 - y^4) = u^4 * psi(z, h, u) for every pair.
SubstitutionCheck difference_substitution_check(std::int64_t P, std::int64_t u);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  std::vector<std::int64_t> bounds;
  std::vector<std::uint64_t> counts;
};

// Least-squares slope of log(count) against log(P) over the given bounds;
// R follows the rule "equal to P" unless fixed_R is set. Needs at least
// three bounds (DomainError otherwise). This is a sanity probe of the
// growth exponent, not a verification of any admissible exponent.
SlopeFit empirical_exponent(const std::vector<std::int64_t>& P_list,
                            std::optional<std::int64_t> fixed_R, int k,
                            const LabOptions& opts = {});

struct MHQParams {
  std::int64_t P = 0;
  Rational phi;    // in [0, 1/4]
  Rational m_exp;  // M = P^phi
  Rational h_exp;  // H = P * M^-4 = P^(1 - 4*phi)
  Rational q_exp;  // Q = P * M^-1 = P^(1 - phi)
  double M = 0, H = 0, Q = 0;
};

// The scale parameters tied to a mantissa exponent phi, kept exact as
// powers of P alongside a numeric evaluation.
MHQParams mhq_params(std::int64_t P, const Rational& phi);

}  // namespace admex
