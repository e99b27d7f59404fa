#include "edlab.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "edlab/report.hpp"
#include "edlab/scenario.hpp"
#include "edlab/sweep.hpp"

struct edlab_report_set {
  std::vector<edlab::UncertaintyReport> reports;
  edlab::SweepSummary summary;
};

namespace {

thread_local std::string g_last_error;

edlab_status fail(edlab_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

edlab_status guard(const std::exception& e) {
  if (dynamic_cast<const edlab::ParseError*>(&e)) return fail(EDLAB_ERROR_PARSE, e.what());
  if (dynamic_cast<const edlab::ResolveError*>(&e)) return fail(EDLAB_ERROR_RESOLVE, e.what());
  if (dynamic_cast<const edlab::Error*>(&e)) {
    return fail(EDLAB_ERROR_INVALID_ARGUMENT, e.what());
  }
  return fail(EDLAB_ERROR_INTERNAL, e.what());
}

edlab_status run_scenarios(std::vector<edlab::Scenario> scenarios, double tol,
                           edlab_report_set** out) {
  auto set = new edlab_report_set;
  for (edlab::Scenario& s : scenarios) {
    if (tol > 0) s.margin_tolerance = tol;
    set->reports.push_back(edlab::run_scenario(s));
  }
  *out = set;
  return EDLAB_OK;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

edlab_status edlab_run_file(const char* path, double margin_tolerance,
                            edlab_report_set** out) {
  if (!path || !out) return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  try {
    return run_scenarios(edlab::load_scenarios(path), margin_tolerance, out);
  } catch (const std::exception& e) {
    return guard(e);
  }
}

edlab_status edlab_run_text(const char* json_text, double margin_tolerance,
                            edlab_report_set** out) {
  if (!json_text || !out) return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  try {
    return run_scenarios(edlab::parse_scenarios(json_text), margin_tolerance, out);
  } catch (const std::exception& e) {
    return guard(e);
  }
}

edlab_status edlab_run_builtin(const char* name, double margin_tolerance,
                               edlab_report_set** out) {
  if (!name || !out) return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  try {
    return run_scenarios(edlab::builtin_scenarios(name), margin_tolerance, out);
  } catch (const std::exception& e) {
    return guard(e);
  }
}

edlab_status edlab_run_sweep(const edlab_sweep_config* config, double margin_tolerance,
                             edlab_report_set** out) {
  if (!config || !out) return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  try {
    edlab::SweepConfig cfg;
    cfg.seed = config->seed;
    cfg.count = config->count;
    if (config->dim_max > 0) cfg.dim_max = config->dim_max;
    if (config->outcomes_max > 0) cfg.outcomes_max = config->outcomes_max;
    cfg.subalgebras = config->subalgebras != 0;
    cfg.simultaneous = config->simultaneous != 0;
    if (margin_tolerance > 0) cfg.margin_tolerance = margin_tolerance;
    edlab::SweepResult result = edlab::run_sweep(cfg);
    auto set = new edlab_report_set;
    set->reports = std::move(result.reports);
    set->summary = result.summary;
    *out = set;
    return EDLAB_OK;
  } catch (const std::exception& e) {
    return guard(e);
  }
}

edlab_status edlab_render(const edlab_report_set* reports, const char* format,
                          char** out_text) {
  if (!reports || !format || !out_text) {
    return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  }
  try {
    const edlab::SweepSummary* summary = reports->summary.present ? &reports->summary : nullptr;
    *out_text = copy_string(edlab::emit(reports->reports, format, summary));
    return EDLAB_OK;
  } catch (const std::exception& e) {
    return guard(e);
  }
}

int edlab_report_count(const edlab_report_set* reports) {
  return reports ? static_cast<int>(reports->reports.size()) : 0;
}

int edlab_all_margins_pass(const edlab_report_set* reports) {
  if (!reports) return 0;
  for (const edlab::UncertaintyReport& r : reports->reports) {
    if (!r.margins_ok()) return 0;
  }
  return 1;
}

void edlab_report_set_free(edlab_report_set* reports) { delete reports; }

void edlab_string_free(char* text) { delete[] text; }

edlab_status edlab_builtin_names(char** out_text) {
  if (!out_text) return fail(EDLAB_ERROR_INVALID_ARGUMENT, "null argument");
  std::string joined;
  for (const std::string& n : edlab::builtin_names()) {
    joined += n;
    joined += '\n';
  }
  *out_text = copy_string(joined);
  return EDLAB_OK;
}

const char* edlab_last_error(void) { return g_last_error.c_str(); }

const char* edlab_version(void) { return "0.1.0"; }

}  // extern "C"
