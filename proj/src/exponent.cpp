#include "admex/exponent.hpp"

#include <algorithm>

namespace admex {

std::string_view kind_name(RecordKind k) {
  switch (k) {
    case RecordKind::baseline: return "baseline";
    case RecordKind::interpolated: return "interpolated";
    case RecordKind::recursion: return "recursion";
    case RecordKind::keil_zhao: return "keil_zhao";
  }
  throw InternalError("kind_name: bad enum value");
}

RecordKind kind_from_name(std::string_view name) {
  if (name == "baseline") return RecordKind::baseline;
  if (name == "interpolated") return RecordKind::interpolated;
  if (name == "recursion") return RecordKind::recursion;
  if (name == "keil_zhao") return RecordKind::keil_zhao;
  throw ParseError("unknown record kind: " + std::string(name));
}

ExponentRecord make_record(Rational s, Rational delta, RecordKind kind,
                           bool strict, Provenance provenance) {
  if (s < Rational(4) || s > Rational(12)) {
    throw DomainError("exponent record: moment order must lie in [4, 12], got " + s.str());
  }
  if (delta.sign() < 0 || delta > Rational(8)) {
    throw DomainError("exponent record: delta must lie in [0, 8], got " + delta.str());
  }
  return ExponentRecord{std::move(s), std::move(delta), kind, strict,
                        std::move(provenance)};
}

void ExponentTable::insert(ExponentRecord rec) {
  auto [it, inserted] = by_s_.try_emplace(rec.s, rec);
  if (!inserted && rec.delta < it->second.delta) {
    it->second = std::move(rec);
  }
}

const ExponentRecord* ExponentTable::find(const Rational& s) const {
  auto it = by_s_.find(s);
  return it == by_s_.end() ? nullptr : &it->second;
}

std::vector<ExponentRecord> ExponentTable::records() const {
  std::vector<ExponentRecord> out;
  out.reserve(by_s_.size());
  for (const auto& [s, rec] : by_s_) out.push_back(rec);
  return out;
}

Rational ExponentTable::min_s() const {
  if (by_s_.empty()) throw DomainError("exponent table is empty");
  return by_s_.begin()->first;
}

Rational ExponentTable::max_s() const {
  if (by_s_.empty()) throw DomainError("exponent table is empty");
  return by_s_.rbegin()->first;
}

ExponentTable baseline_table() {
  ExponentTable t;
  t.insert(make_record(Rational(8), parse_decimal("0.594193"),
                       RecordKind::baseline, false, {"baseline", {}}));
  t.insert(make_record(Rational(10), parse_decimal("0.1991466"),
                       RecordKind::baseline, false, {"baseline", {}}));
  t.insert(make_record(Rational(12), Rational(0), RecordKind::baseline, false,
                       {"baseline", {}}));
  return t;
}

EnvelopeValue interpolate_detail(const ExponentTable& table, const Rational& s) {
  auto recs = table.records();
  if (recs.empty() || s < recs.front().s || s > recs.back().s) {
    throw DomainError("envelope query at " + compact_str(s) +
                      " is outside the record span");
  }
  bool have = false;
  EnvelopeValue best;
  if (const ExponentRecord* at = table.find(s)) {
    best = {at->delta, s, s, true};
    have = true;
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].s > s) break;
    for (std::size_t j = recs.size(); j-- > 0 && recs[j].s >= s;) {
      if (recs[j].s == recs[i].s) continue;
      const Rational& a = recs[i].s;
      const Rational& b = recs[j].s;
      Rational chord = ((b - s) * recs[i].delta + (s - a) * recs[j].delta) / (b - a);
      if (!have || chord < best.value) {
        best = {chord, a, b, false};
        have = true;
      }
    }
  }
  return best;
}

Rational interpolate(const ExponentTable& table, const Rational& s) {
  return interpolate_detail(table, s).value;
}

RecursionInputs::RecursionInputs(Rational u_, Rational delta_10_minus_u_,
                                 Rational delta_12_minus_2u_)
    : u(std::move(u_)),
      delta_10_minus_u(std::move(delta_10_minus_u_)),
      delta_12_minus_2u(std::move(delta_12_minus_2u_)) {
  if (u.sign() < 0 || u > Rational(2)) {
    throw DomainError("recursion inputs: u must lie in [0, 2], got " + u.str());
  }
  if (delta_10_minus_u.sign() < 0 || delta_12_minus_2u.sign() < 0) {
    throw DomainError("recursion inputs: admissible exponents are nonnegative");
  }
}

bool check_recursion_hypothesis(const RecursionInputs& in) {
  Rational twice = Rational(2) * in.delta_10_minus_u;
  return twice - Rational(4, 5) <= in.delta_12_minus_2u &&
         in.delta_12_minus_2u <= twice;
}

namespace {

void require_hypothesis(const RecursionInputs& in) {
  if (!check_recursion_hypothesis(in)) {
    throw HypothesisError(
        "recursion hypothesis fails: need 2*" + in.delta_10_minus_u.str() +
        " - 4/5 <= " + in.delta_12_minus_2u.str() + " <= 2*" +
        in.delta_10_minus_u.str());
  }
}

}  // namespace

Rational recursion_infimum(const RecursionInputs& in) {
  require_hypothesis(in);
  Rational den = Rational(8) - Rational(2) * in.delta_10_minus_u + in.delta_12_minus_2u;
  // Under the hypothesis den >= 8 - 4/5 > 0.
  return Rational(3) * in.delta_12_minus_2u / den;
}

Rational phi0(const RecursionInputs& in) {
  require_hypothesis(in);
  Rational shift = in.delta_12_minus_2u / Rational(2) - in.delta_10_minus_u;
  Rational value = (Rational(1) + shift) / (Rational(4) + shift);
  if (value < Rational(1, 6) || value > Rational(1, 4)) {
    throw InternalError("phi0 fell outside [1/6, 1/4]: " + value.str());
  }
  return value;
}

KzThreshold kz_threshold(const Rational& s, const Rational& delta_s) {
  Rational u0 = s + Rational(16) * delta_s;
  bool valid = s >= Rational(8) && delta_s < Rational(1, 8) && u0 > Rational(10);
  bool superseded = valid && u0 >= Rational(12);
  return {u0, valid, superseded};
}

}  // namespace admex
