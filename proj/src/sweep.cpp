#include "edlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edlab/rng.hpp"
#include "edlab/scenario.hpp"
#include "edlab/uncertainty.hpp"

namespace edlab {

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.count < 0) throw ValidationError("sweep: negative count");
  if (cfg.dim_max < 2) throw ValidationError("sweep: dim_max must be at least 2");
  if (cfg.outcomes_max < 1) throw ValidationError("sweep: outcomes_max must be at least 1");

  SweepResult result;
  result.summary.present = true;
  result.summary.count = cfg.count;
  double min_oz = std::numeric_limits<double>::infinity();
  double min_br = min_oz, min_st = min_oz;

  for (int i = 0; i < cfg.count; ++i) {
    Rng rng(derive_seed(cfg.seed, static_cast<uint64_t>(i)));
    const uint64_t s_alg = rng.engine()();
    const uint64_t s_a = rng.engine()();
    const uint64_t s_b = rng.engine()();
    const uint64_t s_rho = rng.engine()();
    const uint64_t s_instr = rng.engine()();
    const int n_out = rng.uniform_int(1, cfg.outcomes_max);

    AlgebraPtr algebra = random_algebra(s_alg, cfg.dim_max, cfg.subalgebras);
    Scenario s{"sweep-" + std::to_string(cfg.seed) + "-" + std::to_string(i),
               cfg.simultaneous ? "simultaneous" : "error_disturbance",
               algebra,
               random_state(s_rho, algebra),
               random_observable(s_a, algebra, 2.0),
               random_observable(s_b, algebra, 2.0),
               random_instrument(s_instr, algebra, n_out, cfg.kraus_rank,
                                 cfg.simultaneous ? 2 : 1),
               std::nullopt,
               {"ozawa", "branciard", "strengthened"},
               cfg.margin_tolerance};

    UncertaintyReport r = run_scenario(s);
    min_oz = std::min(min_oz, r.margin_ozawa);
    min_br = std::min(min_br, r.margin_branciard);
    min_st = std::min(min_st, r.margin_strengthened);
    if (r.heisenberg_deficit < -1e-10) result.summary.heisenberg_violations++;
    if (algebra->is_full()) {
      result.summary.full_algebra_cases++;
      const double oracle =
          d_bound_trace_oracle(s.obs_a, s.obs_b, s.state.ambient_extension());
      result.summary.max_d_oracle_deviation =
          std::max(result.summary.max_d_oracle_deviation, std::abs(r.d_bound - oracle));
    }
    result.reports.push_back(std::move(r));
  }
  if (cfg.count > 0) {
    result.summary.min_margin_ozawa = min_oz;
    result.summary.min_margin_branciard = min_br;
    result.summary.min_margin_strengthened = min_st;
  }
  return result;
}

}  // namespace edlab
