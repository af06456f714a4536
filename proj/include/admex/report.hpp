#pragma once

#include <map>
#include <string>
#include <vector>

#include "admex/derive.hpp"
#include "admex/exponent.hpp"

namespace admex {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportRow {
  Rational s;
  Rational delta;            // exact fraction
  std::string display;       // ceiling rendering of delta
  RecordKind kind = RecordKind::baseline;
  bool strict = false;
  Provenance provenance;
};

struct Report {
  std::map<std::string, std::string> metadata;
  std::vector<ReportRow> rows;
};

ReportRow row_from_record(const ExponentRecord& rec, int display_places);

// Checks that every display string is the ceiling rendering of its exact
// fraction at the given precision; throws InternalError otherwise.
void validate_report(const Report& report, int display_places);

// CSV with header "s,delta_exact,delta_display,kind,provenance"; UTF-8, LF
// line endings, no metadata block. Fractions appear as num/den so parsing an
// emitted report reproduces them exactly.
std::string to_csv(const Report& report);
Report from_csv(const std::string& text);

// One top-level object {"metadata": {...}, "rows": [...]}, fractions as
// "num/den" strings.
std::string to_json(const Report& report);
Report from_json(const std::string& text);

// Standard metadata block for a derivation run.
std::map<std::string, std::string> run_metadata(const DerivationConfig& config,
                                                int display_places);

}  // namespace admex
