#include <doctest.h>

#include <random>

#include "admex/lab.hpp"
#include "oracles.hpp"

using namespace admex;

TEST_CASE("smooth sets by direct sieve") {
  SmoothSet s = smooth_set(10, 2);
  CHECK(s.elements == std::vector<std::int64_t>{1, 2, 4, 8});

  SmoothSet all = smooth_set(10, 10);
  CHECK(all.elements == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

  SmoothSet s205 = smooth_set(20, 5);
  CHECK(s205.elements == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 8, 9, 10, 12,
                                                   15, 16, 18, 20});
  CHECK(s205.elements.size() == 14);

  CHECK(smooth_set(1, 1).elements == std::vector<std::int64_t>{1});
  CHECK_THROWS_AS(smooth_set(0, 2), DomainError);
}

TEST_CASE("smooth sets agree with the trial-division oracle and are monotone") {
  for (std::int64_t P : {1, 2, 7, 30, 100, 250}) {
    for (std::int64_t R : {1L, 2L, 3L, 7L, 50L, static_cast<long>(P)}) {
      if (R < 1) continue;
      SmoothSet s = smooth_set(P, R);
      CHECK(s.elements == testing::smooth_oracle(P, R));
    }
  }
  // Monotone in both bounds.
  auto small = smooth_set(50, 5).elements;
  auto bigger_p = smooth_set(80, 5).elements;
  auto bigger_r = smooth_set(50, 7).elements;
  CHECK(std::includes(bigger_p.begin(), bigger_p.end(), small.begin(), small.end()));
  CHECK(std::includes(bigger_r.begin(), bigger_r.end(), small.begin(), small.end()));
}

TEST_CASE("restricted smooth sets") {
  RestrictedSmoothSet b = restricted_smooth_set(4, 2, 5);
  CHECK(b.elements == std::vector<std::int64_t>{6, 8});

  // Pinned by the oracle: only 5 survives in (3, 15].
  RestrictedSmoothSet b2 = restricted_smooth_set(3, 5, 5);
  CHECK(b2.elements == testing::restricted_smooth_oracle(3, 5, 5));
  CHECK(b2.elements == std::vector<std::int64_t>{5});

  CHECK_THROWS_AS(restricted_smooth_set(10, 11, 7), DomainError);  // pi > R
  CHECK_THROWS_AS(restricted_smooth_set(10, 4, 7), DomainError);   // pi not prime

  for (std::int64_t L : {1, 3, 8, 20}) {
    for (std::int64_t pi : {2, 3, 5, 7}) {
      for (std::int64_t R : {7, 11, 30}) {
        if (pi > R) continue;
        CHECK(restricted_smooth_set(L, pi, R).elements ==
              testing::restricted_smooth_oracle(L, pi, R));
      }
    }
  }
}

TEST_CASE("moment counts: diagonal-only regimes") {
  CHECK(moment_count(10, 10, 1).count == 10);
  CHECK(moment_count(100, 100, 2).count == 19900);  // 2n^2 - n with n = 100
  CHECK(moment_count(20, 5, 2).count == 378);       // 2*14^2 - 14
}

TEST_CASE("moment counts equal the exhaustive oracle on small instances") {
  for (std::int64_t P : {1, 4, 9, 17, 25}) {
    for (std::int64_t R : {2L, 3L, static_cast<long>(P)}) {
      if (R < 1) continue;
      for (int k : {1, 2}) {
        std::size_t n = smooth_set(P, R).elements.size();
        double tuples = std::pow(static_cast<double>(n), 2 * k);
        if (tuples > 200000) continue;
        CHECK(moment_count(P, R, k).count == testing::moment_oracle(P, R, k));
      }
    }
  }
  // Once the bound clears Euler's coincidence 59^4 + 158^4 = 133^4 + 134^4
  // (the smallest equal pair of fourth-power sums, 635318657; the next one
  // needs 239), the count exceeds the diagonal 2n^2 - n by exactly the 8
  // orderings of that single quadruple.
  auto p4 = [](std::uint64_t x) { return x * x * x * x; };
  CHECK(p4(59) + p4(158) == p4(133) + p4(134));
  MomentCount above = moment_count(160, 160, 2);
  CHECK(above.count == 2 * 160 * 160 - 160 + 8);
}

TEST_CASE("moment count is at least the ordered diagonal") {
  for (std::int64_t P : {5, 12, 31}) {
    for (int k : {1, 2, 3}) {
      std::uint64_t n = smooth_set(P, P).elements.size();
      std::uint64_t diag = 1;
      for (int j = 0; j < k; ++j) diag *= n;
      CHECK(moment_count(P, P, k).count >= diag);
    }
  }
}

TEST_CASE("moment count budget guard") {
  LabOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(moment_count(100, 100, 2, tight), BudgetError);
  CHECK_NOTHROW(moment_count(10, 10, 1, tight));
  CHECK_THROWS_AS(moment_count(4, 4, 0), DomainError);
}

TEST_CASE("moment count is worker-count invariant") {
  for (int workers : {1, 2, 3, 8}) {
    LabOptions opts;
    opts.workers = workers;
    CHECK(moment_count(50, 50, 2, opts).count == moment_count(50, 50, 2).count);
    CHECK(moment_count(30, 5, 3, opts).count == moment_count(30, 5, 3).count);
  }
}

TEST_CASE("difference polynomial identity") {
  CHECK(psi(1, 1, 1) == 16);
  CHECK(psi_direct(1, 1, 1) == 16);
  CHECK(psi(3, 2, 1) == 624);
  CHECK(psi(3, 2, 1) == mpz_class(5 * 5 * 5 * 5 - 1));
  CHECK(psi(7, 0, 3) == 0);
  CHECK(psi_direct(7, 0, 3) == 0);
  CHECK_THROWS_AS(psi_direct(1, 1, 0), DomainError);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> box(-50, 50);
  int checked = 0;
  while (checked < 12000) {
    std::int64_t z = box(rng), h = box(rng), m = box(rng);
    if (m == 0) continue;
    ++checked;
    CHECK(psi(z, h, m) == psi_direct(z, h, m));
  }
}

TEST_CASE("substitution check: pairs, injectivity, identity") {
  SubstitutionCheck c1 = difference_substitution_check(20, 1);
  CHECK(c1.pair_count == 190);  // C(20, 2)
  CHECK(c1.image_count == 190);
  CHECK(c1.identity_ok);

  SubstitutionCheck c2 = difference_substitution_check(20, 2);
  CHECK(c2.identity_ok);
  CHECK(c2.image_count == c2.pair_count);
  // Pairs congruent mod 16 within [1, 20]: x - y in {16}, so 4 pairs.
  CHECK(c2.pair_count == 4);

  SubstitutionCheck empty = difference_substitution_check(1, 1);
  CHECK(empty.pair_count == 0);
  CHECK(empty.identity_ok);

  for (std::int64_t P = 1; P <= 40; ++P) {
    for (std::int64_t u = 1; u <= 3; ++u) {
      SubstitutionCheck c = difference_substitution_check(P, u);
      CHECK(c.identity_ok);
      CHECK(c.image_count == c.pair_count);
    }
  }
}

TEST_CASE("empirical growth exponent") {
  SlopeFit unit = empirical_exponent({10, 20, 40}, std::nullopt, 1);
  CHECK(unit.slope == doctest::Approx(1.0).epsilon(1e-9));

  SlopeFit quad = empirical_exponent({20, 40, 80}, std::nullopt, 2);
  CHECK(quad.slope > 1.8);
  CHECK(quad.slope < 2.2);

  CHECK_THROWS_AS(empirical_exponent({10, 20}, std::nullopt, 2), DomainError);
  CHECK_THROWS_AS(empirical_exponent({40, 20, 10}, std::nullopt, 1), DomainError);

  SlopeFit fixed = empirical_exponent({16, 32, 64, 128}, 2, 1);
  // Powers of two only: counts 5, 6, 7, 8.
  CHECK(fixed.counts == std::vector<std::uint64_t>{5, 6, 7, 8});

  // Loose sanity floor 2k - 4 - 1/2 for the k = 3 moment at desk scale.
  SlopeFit cubic = empirical_exponent({10, 20, 40}, std::nullopt, 3);
  CHECK(cubic.slope >= 1.5);
}

TEST_CASE("scale parameters stay exact as exponents") {
  MHQParams p = mhq_params(10000, Rational(1, 5));
  CHECK(p.m_exp == Rational(1, 5));
  CHECK(p.h_exp == Rational(1, 5));
  CHECK(p.q_exp == Rational(4, 5));
  CHECK(Rational(4) * p.m_exp + p.h_exp == Rational(1));
  CHECK(p.m_exp + p.q_exp == Rational(1));
  CHECK(p.M == doctest::Approx(std::pow(10000.0, 0.2)));

  MHQParams quarter = mhq_params(256, Rational(1, 4));
  CHECK(quarter.h_exp == Rational(0));
  CHECK(quarter.H == doctest::Approx(1.0));

  CHECK_THROWS_AS(mhq_params(100, Rational(1, 3)), DomainError);
  CHECK_THROWS_AS(mhq_params(100, Rational(-1, 10)), DomainError);
}
