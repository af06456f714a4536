#include "admex/derive.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace admex {

std::string_view mode_name(Mode m) {
  return m == Mode::paper ? "paper" : "exact";
}

Mode mode_from_name(std::string_view name) {
  if (name == "paper") return Mode::paper;
  if (name == "exact") return Mode::exact;
  throw ParseError("unknown mode: " + std::string(name) + " (want paper|exact)");
}

void DerivationConfig::validate() const {
  if (dyadic_depth < 1) throw DomainError("config: dyadic_depth must be >= 1");
  if (round_places < 1) throw DomainError("config: round_places must be >= 1");
  if (workers < 1) throw DomainError("config: workers must be >= 1");
  for (const Rational& s : kz_grid) {
    if (s < Rational(8) || s > Rational(12)) {
      throw DomainError("config: kz_grid point " + compact_str(s) + " outside [8, 12]");
    }
  }
}

std::vector<Rational> default_kz_grid() {
  std::vector<Rational> grid;
  grid.reserve(101);
  for (int j = 0; j <= 100; ++j) grid.push_back(Rational(11) + Rational(j, 100));
  return grid;
}

std::vector<Rational> dyadic_points(int depth) {
  if (depth < 1) throw DomainError("dyadic_points: depth must be >= 1");
  std::vector<Rational> pts;
  pts.reserve(depth);
  long p = 1;
  for (int j = 0; j < depth; ++j) {
    pts.push_back(Rational(12) - Rational(1, p));
    p *= 2;
  }
  return pts;
}

DerivationTrace derive_at_trace(const ExponentTable& table, const Rational& s_target) {
  if (s_target < Rational(10) || s_target >= Rational(12)) {
    throw DomainError("derive_at: target moment must lie in [10, 12), got " +
                      compact_str(s_target));
  }
  DerivationTrace tr;
  tr.u = Rational(12) - s_target;
  tr.source_low_moment = Rational(10) - tr.u;
  tr.source_high_moment = Rational(12) - Rational(2) * tr.u;
  tr.source_low = interpolate_detail(table, tr.source_low_moment);
  tr.source_high = interpolate_detail(table, tr.source_high_moment);

  RecursionInputs in(tr.u, tr.source_low.value, tr.source_high.value);
  tr.hypothesis_lower = Rational(2) * in.delta_10_minus_u - Rational(4, 5);
  tr.hypothesis_upper = Rational(2) * in.delta_10_minus_u;
  tr.hypothesis_ok = check_recursion_hypothesis(in);
  if (!tr.hypothesis_ok) return tr;

  tr.phi0_value = phi0(in);
  Provenance prov;
  prov.label = "recursion(u=" + compact_str(tr.u) + ")";
  std::set<Rational> parents{tr.source_low.left, tr.source_low.right,
                             tr.source_high.left, tr.source_high.right};
  prov.parents.assign(parents.begin(), parents.end());
  tr.result = make_record(s_target, recursion_infimum(in), RecordKind::recursion,
                          true, std::move(prov));
  return tr;
}

ExponentRecord derive_at(const ExponentTable& table, const Rational& s_target) {
  DerivationTrace tr = derive_at_trace(table, s_target);
  if (!tr.result) {
    RecursionInputs in(tr.u, tr.source_low.value, tr.source_high.value);
    recursion_infimum(in);  // throws HypothesisError with the details
  }
  return *tr.result;
}

ExponentRecord round_for_insert(ExponentRecord rec, const DerivationConfig& config) {
  if (config.mode == Mode::paper) {
    Rational rounded = ceil_places(rec.delta, config.round_places);
    if (rounded != rec.delta) {
      rec.strict = false;  // rounding up lands strictly inside the open condition
      rec.delta = std::move(rounded);
    }
  }
  return rec;
}

ExponentTable dyadic_pass(const DerivationConfig& config) {
  config.validate();
  ExponentTable table = baseline_table();
  for (const Rational& s : dyadic_points(config.dyadic_depth)) {
    table.insert(round_for_insert(derive_at(table, s), config));
  }
  return table;
}

Rational curve_value(const ExponentTable& table, const Rational& s,
                     const DerivationConfig& config) {
  if (s < Rational(10) || s > Rational(12)) {
    throw DomainError("curve_value: moment must lie in [10, 12], got " + compact_str(s));
  }
  Rational best = interpolate(table, s);
  if (s < Rational(12)) {
    DerivationTrace tr = derive_at_trace(table, s);
    if (tr.result) {
      ExponentRecord rec = round_for_insert(*tr.result, config);
      best = std::min(best, rec.delta);
    }
  }
  return best;
}

DirectComparison compare_direct(const Rational& t) {
  if (t.sign() < 0 || t > Rational(1)) {
    throw DomainError("compare_direct: t must lie in [0, 1], got " + compact_str(t));
  }
  const Rational d8 = parse_decimal("0.594193");
  const Rational d10 = parse_decimal("0.1991466");
  const Rational d11 = parse_decimal("0.0806719");
  DirectComparison cmp;
  cmp.direct = (Rational(3) * d8 - Rational(3) * t * (d8 - d10)) / (Rational(8) - d8);
  cmp.direct_majorant = parse_decimal("0.2407002") - parse_decimal("0.1600283") * t;
  cmp.interpolated = (Rational(1) - t) * d10 + t * d11;
  return cmp;
}

KzOptimum optimize_kz(const ExponentTable& table, const DerivationConfig& config) {
  config.validate();

  std::set<Rational> points(config.kz_grid.begin(), config.kz_grid.end());
  if (config.kz_grid.empty()) {
    auto grid = default_kz_grid();
    points.insert(grid.begin(), grid.end());
  }
  for (const ExponentRecord& rec : table.records()) {
    if (rec.s >= Rational(10) && rec.s <= Rational(12)) points.insert(rec.s);
  }
  std::vector<Rational> grid(points.begin(), points.end());

  // One slot per grid point; workers fill disjoint slots, so the outcome is
  // identical to the sequential evaluation.
  std::vector<std::optional<KzCandidate>> slots(grid.size());
  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Rational& s = grid[i];
      if (s < Rational(10) || s > Rational(12)) continue;
      Rational delta;
      try {
        delta = curve_value(table, s, config);
      } catch (const DomainError&) {
        continue;  // grid point outside the table's span
      }
      KzThreshold th = kz_threshold(s, delta);
      if (th.valid) slots[i] = KzCandidate{s, delta, th};
    }
  };

  int workers = std::min<int>(config.workers, static_cast<int>(grid.size()));
  if (workers <= 1) {
    evaluate(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(grid.size(), begin + chunk);
      if (begin < end) pool.emplace_back(evaluate, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  KzOptimum best;
  bool have = false;
  for (const auto& slot : slots) {
    if (!slot) continue;
    best.candidates.push_back(*slot);
    bool better = !have || slot->threshold.u0 < best.u_star ||
                  (slot->threshold.u0 == best.u_star && slot->s < best.s_star);
    if (better) {
      best.s_star = slot->s;
      best.u_star = slot->threshold.u0;
      best.superseded = slot->threshold.superseded;
      have = true;
    }
  }
  if (!have) throw DomainError("optimize_kz: no valid candidate on the grid");
  return best;
}

FixedPointResult fixed_point(const DerivationConfig& config, int max_rounds) {
  if (max_rounds < 1) throw DomainError("fixed_point: max_rounds must be >= 1");
  config.validate();

  // Fixed probe grid: step 1/50 over [10, 12].
  std::vector<Rational> probes;
  for (int j = 0; j <= 100; ++j) probes.push_back(Rational(10) + Rational(j, 50));
  const Rational tolerance(mpz_class(1), pow10(12));

  FixedPointResult res;
  res.table = dyadic_pass(config);
  res.rounds = 1;

  auto sample = [&](const ExponentTable& t) {
    std::vector<Rational> vals;
    vals.reserve(probes.size());
    for (const Rational& p : probes) vals.push_back(interpolate(t, p));
    return vals;
  };
  std::vector<Rational> prev = sample(res.table);

  while (res.rounds < max_rounds) {
    ExponentTable next = res.table;
    for (const Rational& s : dyadic_points(config.dyadic_depth)) {
      ExponentRecord rec = round_for_insert(derive_at(next, s), config);
      rec.provenance.feedback = true;
      rec.provenance.label += " [feedback round " + std::to_string(res.rounds + 1) + "]";
      next.insert(std::move(rec));
    }
    ++res.rounds;
    std::vector<Rational> cur = sample(next);
    bool improved = false;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (prev[i] - cur[i] > tolerance) {
        improved = true;
        break;
      }
    }
    res.table = std::move(next);
    prev = std::move(cur);
    if (!improved) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Log2Enclosure decay_constant_enclosure() {
  return log_ratio(Rational(38, 15), Rational(2), 64);
}

std::string decay_constant() {
  return enclosure_decimal(decay_constant_enclosure(), 12);
}

}  // namespace admex
