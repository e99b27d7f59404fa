#pragma once
// Per-scenario result records and their text/json/csv serializations.

#include <string>
#include <vector>

#include "edlab/matrix_ops.hpp"

namespace edlab {

struct UncertaintyReport {
  std::string name;
  std::string mode;  // "error_disturbance" or "simultaneous"
  double sigma_a = 0;
  double sigma_b = 0;
  double eps_a = 0;
  double eta_or_eps_b = 0;  // eta(B) in error-disturbance mode, eps(B) otherwise
  double c_bound = 0;
  double d_bound = 0;
  double margin_ozawa = 0;
  double margin_branciard = 0;
  double margin_strengthened = 0;
  double heisenberg_deficit = 0;
  std::vector<std::string> checked_relations;
  double tolerance = 1e-8;

  double margin(const std::string& relation) const;
  /// Every checked relation margin is >= -tolerance.
  bool margins_ok() const;
};

struct SweepSummary {
  bool present = false;
  int count = 0;
  double min_margin_ozawa = 0;
  double min_margin_branciard = 0;
  double min_margin_strengthened = 0;
  int heisenberg_violations = 0;
  int full_algebra_cases = 0;
  double max_d_oracle_deviation = 0;
};

/// Serialize reports (plus a sweep summary when present) to "text", "json" or
/// "csv". Identical inputs produce byte-identical output.
std::string emit(const std::vector<UncertaintyReport>& reports, const std::string& format,
                 const SweepSummary* summary = nullptr);

}  // namespace edlab
