#include "edlab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace edlab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

nlohmann::ordered_json report_json(const UncertaintyReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["mode"] = r.mode;
  j["sigma_A"] = r.sigma_a;
  j["sigma_B"] = r.sigma_b;
  j["eps_A"] = r.eps_a;
  if (r.mode == "simultaneous") {
    j["eps_B"] = r.eta_or_eps_b;
  } else {
    j["eta_B"] = r.eta_or_eps_b;
  }
  j["C_bound"] = r.c_bound;
  j["D_bound"] = r.d_bound;
  nlohmann::ordered_json margins;
  margins["ozawa"] = r.margin_ozawa;
  margins["branciard"] = r.margin_branciard;
  margins["strengthened"] = r.margin_strengthened;
  j["margins"] = margins;
  j["heisenberg_deficit"] = r.heisenberg_deficit;
  j["checked_relations"] = r.checked_relations;
  return j;
}

}  // namespace

double UncertaintyReport::margin(const std::string& relation) const {
  if (relation == "ozawa") return margin_ozawa;
  if (relation == "branciard") return margin_branciard;
  if (relation == "strengthened" || relation == "simultaneous") return margin_strengthened;
  throw ValidationError("unknown relation '" + relation + "'");
}

bool UncertaintyReport::margins_ok() const {
  for (const std::string& rel : checked_relations) {
    if (margin(rel) < -tolerance) return false;
  }
  return true;
}

std::string emit(const std::vector<UncertaintyReport>& reports, const std::string& format,
                 const SweepSummary* summary) {
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["reports"] = nlohmann::ordered_json::array();
    for (const UncertaintyReport& r : reports) doc["reports"].push_back(report_json(r));
    if (summary && summary->present) {
      nlohmann::ordered_json s;
      s["count"] = summary->count;
      s["min_margin_ozawa"] = summary->min_margin_ozawa;
      s["min_margin_branciard"] = summary->min_margin_branciard;
      s["min_margin_strengthened"] = summary->min_margin_strengthened;
      s["heisenberg_violations"] = summary->heisenberg_violations;
      s["full_algebra_cases"] = summary->full_algebra_cases;
      s["max_d_oracle_deviation"] = summary->max_d_oracle_deviation;
      doc["summary"] = s;
    }
    return doc.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "name,sigma_A,sigma_B,eps_A,eta_or_eps_B,C_bound,D_bound,"
           "margin_ozawa,margin_branciard,margin_strengthened,heisenberg_deficit\n";
    for (const UncertaintyReport& r : reports) {
      out << csv_field(r.name) << ',' << fmt(r.sigma_a) << ',' << fmt(r.sigma_b) << ','
          << fmt(r.eps_a) << ',' << fmt(r.eta_or_eps_b) << ',' << fmt(r.c_bound) << ','
          << fmt(r.d_bound) << ',' << fmt(r.margin_ozawa) << ',' << fmt(r.margin_branciard)
          << ',' << fmt(r.margin_strengthened) << ',' << fmt(r.heisenberg_deficit) << '\n';
    }
    return out.str();
  }
  if (format == "text") {
    std::ostringstream out;
    for (const UncertaintyReport& r : reports) {
      out << r.name << " [" << r.mode << "]\n";
      out << "  sigma(A) = " << fmt(r.sigma_a) << "  sigma(B) = " << fmt(r.sigma_b) << "\n";
      out << "  eps(A)   = " << fmt(r.eps_a) << "  "
          << (r.mode == "simultaneous" ? "eps(B)" : "eta(B)") << " = "
          << fmt(r.eta_or_eps_b) << "\n";
      out << "  C = " << fmt(r.c_bound) << "  D = " << fmt(r.d_bound) << "\n";
      out << "  margins: ozawa = " << fmt(r.margin_ozawa)
          << ", branciard = " << fmt(r.margin_branciard)
          << ", strengthened = " << fmt(r.margin_strengthened) << "\n";
      out << "  heisenberg deficit = " << fmt(r.heisenberg_deficit) << "\n";
    }
    if (summary && summary->present) {
      out << "summary over " << summary->count << " scenarios\n";
      out << "  min margins: ozawa = " << fmt(summary->min_margin_ozawa)
          << ", branciard = " << fmt(summary->min_margin_branciard)
          << ", strengthened = " << fmt(summary->min_margin_strengthened) << "\n";
      out << "  heisenberg product violations: " << summary->heisenberg_violations << "\n";
      out << "  full-algebra cases: " << summary->full_algebra_cases
          << ", max |D - trace oracle| = " << fmt(summary->max_d_oracle_deviation) << "\n";
    }
    return out.str();
  }
  throw ValidationError("emit: unknown format '" + format + "'");
}

}  // namespace edlab
