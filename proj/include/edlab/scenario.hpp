#pragma once
// Declarative scenario descriptions: JSON parsing, built-in scenarios, and
// evaluation into UncertaintyReport records.

#include <optional>
#include <string>
#include <vector>

#include "edlab/instrument.hpp"
#include "edlab/report.hpp"

namespace edlab {

struct Scenario {
  std::string name;
  std::string mode;  // "error_disturbance" or "simultaneous"
  AlgebraPtr algebra;
  NormalState state;
  AlgebraElement obs_a;
  AlgebraElement obs_b;
  KrausInstrument instrument;
  /// Present when the instrument was specified as a measuring process.
  std::optional<MeasuringProcess> process;
  std::vector<std::string> relations;
  double margin_tolerance = 1e-8;
};

/// Parse a scenario document (see README for the format). Structural problems
/// raise ParseError; semantic problems raise ResolveError naming the field.
std::vector<Scenario> parse_scenarios(const std::string& json_text);
std::vector<Scenario> load_scenarios(const std::string& path);

std::vector<std::string> builtin_names();
std::vector<Scenario> builtin_scenarios(const std::string& name);

/// Evaluate all quantities and margins for one scenario.
UncertaintyReport run_scenario(const Scenario& s);

}  // namespace edlab
