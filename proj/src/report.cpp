#include "admex/report.hpp"

#include <sstream>

#include <json.hpp>

namespace admex {

namespace {

std::string provenance_cell(const Provenance& prov) {
  std::string cell = prov.label;
  if (!prov.parents.empty()) {
    cell += "<-";
    for (std::size_t i = 0; i < prov.parents.size(); ++i) {
      if (i) cell += '|';
      cell += compact_str(prov.parents[i]);
    }
  }
  return cell;
}

}  // namespace

ReportRow row_from_record(const ExponentRecord& rec, int display_places) {
  return ReportRow{rec.s, rec.delta, render_ceiling(rec.delta, display_places),
                   rec.kind, rec.strict, rec.provenance};
}

void validate_report(const Report& report, int display_places) {
  for (const ReportRow& row : report.rows) {
    if (row.display != render_ceiling(row.delta, display_places)) {
      throw InternalError("report row at s = " + compact_str(row.s) +
                          " has display '" + row.display +
                          "' inconsistent with its exact fraction");
    }
  }
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << "s,delta_exact,delta_display,kind,provenance\n";
  for (const ReportRow& row : report.rows) {
    out << compact_str(row.s) << ',' << row.delta.str() << ',' << row.display
        << ',' << kind_name(row.kind) << ',' << provenance_cell(row.provenance)
        << '\n';
  }
  return out.str();
}

Report from_csv(const std::string& text) {
  Report report;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError("CSV row needs 5 cells: " + line);

    ReportRow row;
    row.s = cells[0].find('/') != std::string::npos
                ? Rational::from_fraction_string(cells[0])
                : parse_decimal(cells[0]);
    row.delta = Rational::from_fraction_string(cells[1]);
    row.display = cells[2];
    row.kind = kind_from_name(cells[3]);
    auto arrow = cells[4].find("<-");
    row.provenance.label = cells[4].substr(0, arrow);
    if (arrow != std::string::npos) {
      std::istringstream ps(cells[4].substr(arrow + 2));
      std::string parent;
      while (std::getline(ps, parent, '|')) {
        row.provenance.parents.push_back(
            parent.find('/') != std::string::npos
                ? Rational::from_fraction_string(parent)
                : parse_decimal(parent));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["metadata"] = report.metadata;
  j["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["s"] = row.s.str();
    r["delta_exact"] = row.delta.str();
    r["delta_display"] = row.display;
    r["kind"] = std::string(kind_name(row.kind));
    r["strict"] = row.strict;
    nlohmann::ordered_json prov;
    prov["label"] = row.provenance.label;
    prov["parents"] = nlohmann::ordered_json::array();
    for (const Rational& p : row.provenance.parents) prov["parents"].push_back(p.str());
    prov["feedback"] = row.provenance.feedback;
    r["provenance"] = std::move(prov);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what());
  }
  Report report;
  if (j.contains("metadata")) {
    for (const auto& [key, value] : j.at("metadata").items()) {
      report.metadata[key] = value.get<std::string>();
    }
  }
  for (const auto& r : j.at("rows")) {
    ReportRow row;
    row.s = Rational::from_fraction_string(r.at("s").get<std::string>());
    row.delta = Rational::from_fraction_string(r.at("delta_exact").get<std::string>());
    row.display = r.at("delta_display").get<std::string>();
    row.kind = kind_from_name(r.at("kind").get<std::string>());
    row.strict = r.at("strict").get<bool>();
    const auto& prov = r.at("provenance");
    row.provenance.label = prov.at("label").get<std::string>();
    for (const auto& p : prov.at("parents")) {
      row.provenance.parents.push_back(
          Rational::from_fraction_string(p.get<std::string>()));
    }
    row.provenance.feedback = prov.at("feedback").get<bool>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::map<std::string, std::string> run_metadata(const DerivationConfig& config,
                                                int display_places) {
  std::map<std::string, std::string> md;
  md["tool"] = "admex";
  md["version"] = std::string(kToolVersion);
  md["mode"] = std::string(mode_name(config.mode));
  md["depth"] = std::to_string(config.dyadic_depth);
  md["round_places"] = std::to_string(config.round_places);
  md["places"] = std::to_string(display_places);
  md["grid"] = config.kz_grid.empty() ? "records+[11,12]/100" : "custom";
  return md;
}

}  // namespace admex
