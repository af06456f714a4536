#include <doctest.h>

#include "admex/derive.hpp"
#include "test_util.hpp"

using namespace admex;

namespace {

DerivationConfig paper_config(int depth = 3) {
  DerivationConfig cfg;
  cfg.mode = Mode::paper;
  cfg.dyadic_depth = depth;
  return cfg;
}

DerivationConfig exact_config(int depth = 3) {
  DerivationConfig cfg = paper_config(depth);
  cfg.mode = Mode::exact;
  return cfg;
}

}  // namespace

TEST_CASE("derive_at walks the published chain") {
  ExponentTable table = baseline_table();

  ExponentRecord r11 = derive_at(table, Rational(11));
  CHECK(render_ceiling(r11.delta, 7) == "0.0806719");
  CHECK(r11.kind == RecordKind::recursion);
  CHECK(r11.strict);
  table.insert(round_for_insert(r11, paper_config()));
  CHECK(table.find(Rational(11))->delta == parse_decimal("0.0806719"));
  CHECK_FALSE(table.find(Rational(11))->strict);  // rounding closed the condition

  ExponentRecord r115 = derive_at(table, Rational(23, 2));
  CHECK(render_ceiling(r115.delta, 7) == "0.0323341");
  table.insert(round_for_insert(r115, paper_config()));

  ExponentRecord r1175 = derive_at(table, Rational(47, 4));
  CHECK(render_ceiling(r1175.delta, 7) == "0.0128731");

  CHECK_THROWS_AS(derive_at(table, Rational(9)), DomainError);
  CHECK_THROWS_AS(derive_at(table, Rational(12)), DomainError);
}

TEST_CASE("derive_at provenance names the interpolation sources") {
  ExponentTable table = baseline_table();
  ExponentRecord rec = derive_at(table, Rational(11));
  // Sources at moments 9 and 10: chord [8, 10] and the record at 10.
  REQUIRE(rec.provenance.parents.size() == 2);
  CHECK(rec.provenance.parents[0] == Rational(8));
  CHECK(rec.provenance.parents[1] == Rational(10));
  CHECK(rec.provenance.label.find("u=1") != std::string::npos);
}

TEST_CASE("dyadic pass reproduces the published table rows") {
  ExponentTable table = dyadic_pass(paper_config(3));
  CHECK(table.size() == 6);
  CHECK(render_ceiling(table.find(Rational(10))->delta, 7) == "0.1991466");
  CHECK(render_ceiling(table.find(Rational(11))->delta, 7) == "0.0806719");
  CHECK(render_ceiling(table.find(Rational(23, 2))->delta, 7) == "0.0323341");
  CHECK(render_ceiling(table.find(Rational(47, 4))->delta, 7) == "0.0128731");

  ExponentTable shallow = dyadic_pass(paper_config(1));
  CHECK(shallow.size() == 4);
  CHECK(shallow.find(Rational(11)) != nullptr);
  CHECK(shallow.find(Rational(23, 2)) == nullptr);
}

TEST_CASE("exact mode never exceeds paper mode") {
  ExponentTable paper = dyadic_pass(paper_config(6));
  ExponentTable exact = dyadic_pass(exact_config(6));
  for (const Rational& s : dyadic_points(6)) {
    CHECK(exact.find(s)->delta <= paper.find(s)->delta);
    CHECK(exact.find(s)->strict);  // exact records stay conditional
  }
}

TEST_CASE("curve_value at the published points and between them") {
  DerivationConfig cfg = paper_config(3);
  ExponentTable table = dyadic_pass(cfg);

  CHECK(curve_value(table, Rational(10), cfg) == parse_decimal("0.1991466"));
  CHECK(curve_value(table, Rational(12), cfg) == Rational(0));
  CHECK(curve_value(table, Rational(47, 4), cfg) == parse_decimal("0.0128731"));

  // Between 11 and 11.5 the machinery beats the chord and stays within a
  // whisker of the published closed-form curve at t = 1/4.
  Rational t(1, 4);
  Rational closed = (parse_decimal("0.0806719") - parse_decimal("0.0959852") * t) /
                    (Rational(1) + parse_decimal("0.0213477") * t);
  Rational v = curve_value(table, Rational(45, 4), cfg);
  CHECK(v <= closed + Rational(1, 1000000L));
  Rational chord = interpolate(table, Rational(45, 4));
  CHECK(v < chord);

  CHECK_THROWS_AS(curve_value(table, Rational(9), cfg), DomainError);
}

TEST_CASE("curve never does worse than baseline interpolation") {
  DerivationConfig cfg = paper_config(3);
  ExponentTable table = dyadic_pass(cfg);
  ExponentTable base = baseline_table();
  for (int j = 0; j <= 40; ++j) {
    Rational s = Rational(10) + Rational(j, 20);
    CHECK(curve_value(table, s, cfg) <= interpolate(base, s));
  }
}

TEST_CASE("direct one-step bound is inferior except at the far end") {
  DirectComparison at0 = compare_direct(Rational(0));
  CHECK(at0.direct < parse_decimal("0.2407002"));
  CHECK(at0.interpolated == parse_decimal("0.1991466"));
  CHECK(at0.direct - at0.interpolated > Rational(0));

  DirectComparison at1 = compare_direct(Rational(1));
  CHECK((at1.direct - at1.interpolated).abs() < Rational(1, 1000000L));
  CHECK(at1.direct_majorant == at1.interpolated);

  DirectComparison mid = compare_direct(Rational(1, 2));
  CHECK(mid.direct - mid.interpolated > Rational(0));

  // The printed majorant dominates the quotient across [0, 1] and its gap to
  // the interpolated line shrinks monotonically to zero.
  Rational prev_gap(-1);
  for (int j = 10; j >= 0; --j) {
    Rational t(j, 10);
    DirectComparison c = compare_direct(t);
    CHECK(c.direct < c.direct_majorant);
    Rational gap = c.direct_majorant - c.interpolated;
    CHECK(gap >= Rational(0));
    CHECK(gap >= prev_gap);
    prev_gap = gap;
  }
  CHECK_THROWS_AS(compare_direct(Rational(2)), DomainError);
}

TEST_CASE("threshold optimization lands on the published optimum") {
  DerivationConfig cfg = paper_config(3);
  ExponentTable table = dyadic_pass(cfg);
  KzOptimum best = optimize_kz(table, cfg);
  CHECK(best.s_star == Rational(47, 4));
  CHECK(best.u_star == parse_decimal("11.9559696"));
  CHECK_FALSE(best.superseded);
  CHECK(render_ceiling(best.u_star, 7) == "11.9559696");
  CHECK(render_ceiling(best.u_star, 5) == "11.95597");

  // The candidate at 11.5 is strictly worse.
  bool found = false;
  for (const KzCandidate& c : best.candidates) {
    if (c.s == Rational(23, 2)) {
      found = true;
      CHECK(c.threshold.u0 == parse_decimal("12.0173456"));
      CHECK(c.threshold.u0 > best.u_star);
    }
  }
  CHECK(found);
}

TEST_CASE("optimization is worker-independent") {
  DerivationConfig cfg = paper_config(4);
  ExponentTable table = dyadic_pass(cfg);
  KzOptimum one = optimize_kz(table, cfg);
  cfg.workers = 8;
  KzOptimum eight = optimize_kz(table, cfg);
  CHECK(one.s_star == eight.s_star);
  CHECK(one.u_star == eight.u_star);
  REQUIRE(one.candidates.size() == eight.candidates.size());
  for (std::size_t i = 0; i < one.candidates.size(); ++i) {
    CHECK(one.candidates[i].s == eight.candidates[i].s);
    CHECK(one.candidates[i].threshold.u0 == eight.candidates[i].threshold.u0);
  }
}

TEST_CASE("optimization on a bare endpoint table supersedes") {
  ExponentTable lone;
  lone.insert(make_record(Rational(12), Rational(0), RecordKind::baseline, false,
                          {"baseline", {}}));
  DerivationConfig cfg;
  KzOptimum best = optimize_kz(lone, cfg);
  CHECK(best.s_star == Rational(12));
  CHECK(best.u_star == Rational(12));
  CHECK(best.superseded);
}

TEST_CASE("deeper dyadic tables keep the same optimum") {
  DerivationConfig cfg = paper_config(6);
  ExponentTable table = dyadic_pass(cfg);
  KzOptimum best = optimize_kz(table, cfg);
  CHECK(best.s_star == Rational(47, 4));
  CHECK(best.u_star == parse_decimal("11.9559696"));
}

TEST_CASE("fixed point: one round equals the dyadic pass") {
  DerivationConfig cfg = paper_config(3);
  FixedPointResult fp = fixed_point(cfg, 1);
  CHECK(fp.rounds == 1);
  ExponentTable pass = dyadic_pass(cfg);
  auto a = fp.table.records();
  auto b = pass.records();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].s == b[i].s);
    CHECK(a[i].delta == b[i].delta);
  }
}

TEST_CASE("fixed point iterates monotonically and converges") {
  DerivationConfig cfg = paper_config(3);
  FixedPointResult one = fixed_point(cfg, 1);
  FixedPointResult two = fixed_point(cfg, 2);
  for (const Rational& s : dyadic_points(3)) {
    CHECK(two.table.find(s)->delta <= one.table.find(s)->delta);
  }

  FixedPointResult converged = fixed_point(cfg, 10);
  CHECK(converged.converged);
  CHECK(converged.rounds <= 10);

  // Pointwise nonincreasing chain on a probe grid, round over round.
  FixedPointResult prev = fixed_point(cfg, 1);
  for (int rounds = 2; rounds <= 4; ++rounds) {
    FixedPointResult cur = fixed_point(cfg, rounds);
    for (int j = 0; j <= 20; ++j) {
      Rational s = Rational(10) + Rational(j, 10);
      CHECK(interpolate(cur.table, s) <= interpolate(prev.table, s));
    }
    prev = std::move(cur);
  }

  FixedPointResult deep = fixed_point(exact_config(5), 6);
  CHECK(deep.converged);
}
