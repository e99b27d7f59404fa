#pragma once
// Randomized scenario sweeps: deterministic generation from a seed, report
// aggregation, and summary statistics.

#include <cstdint>

#include "edlab/report.hpp"

namespace edlab {

struct SweepConfig {
  uint64_t seed = 1;
  int count = 10;
  int dim_max = 4;
  int outcomes_max = 5;
  int kraus_rank = 2;
  bool subalgebras = false;
  bool simultaneous = false;
  double margin_tolerance = 1e-8;
};

struct SweepResult {
  std::vector<UncertaintyReport> reports;
  SweepSummary summary;
};

/// Identical config (including seed) produces identical results.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace edlab
