// Command-line front end over the edlab C API.
//
//   edlab run <file-or-builtin> [--format F] [--tolerance T]
//   edlab sweep --seed N --count K [--dim-max D] [--outcomes-max O]
//               [--subalgebras] [--mode M] [--format F] [--tolerance T]
//   edlab list-builtins
//
// Exit codes: 0 all requested margins hold, 1 usage or resolution error,
// 2 margin violation.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "edlab.h"

namespace {

int emit_and_finish(edlab_report_set* reports, const std::string& format) {
  char* text = nullptr;
  const edlab_status st = edlab_render(reports, format.c_str(), &text);
  if (st != EDLAB_OK) {
    std::fprintf(stderr, "edlab: %s\n", edlab_last_error());
    edlab_report_set_free(reports);
    return 1;
  }
  std::fputs(text, stdout);
  edlab_string_free(text);
  const bool ok = edlab_all_margins_pass(reports) != 0;
  edlab_report_set_free(reports);
  if (!ok) {
    std::fprintf(stderr, "edlab: margin violation detected\n");
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uncertainty-relation laboratory for block operator algebras"};
  app.require_subcommand(1);

  std::string run_target;
  std::string format = "text";
  double tolerance = 0.0;  // <= 0: library default

  CLI::App* run = app.add_subcommand("run", "evaluate scenarios from a file or builtin");
  run->add_option("target", run_target, "scenario file path or builtin name")->required();
  run->add_option("--format", format, "text | json | csv");
  run->add_option("--tolerance", tolerance, "margin tolerance (default 1e-8)");

  edlab_sweep_config cfg{};
  cfg.seed = 1;
  cfg.count = 10;
  bool subalgebras = false;
  std::string mode = "error_disturbance";
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate randomized scenarios");
  sweep->add_option("--seed", cfg.seed, "sweep seed")->required();
  sweep->add_option("--count", cfg.count, "number of scenarios")->required();
  sweep->add_option("--dim-max", cfg.dim_max, "largest ambient dimension (default 4)");
  sweep->add_option("--outcomes-max", cfg.outcomes_max, "largest outcome count (default 5)");
  sweep->add_flag("--subalgebras", subalgebras, "sample proper subalgebras");
  sweep->add_option("--mode", mode, "error_disturbance | simultaneous");
  sweep->add_option("--format", format, "text | json | csv");
  sweep->add_option("--tolerance", tolerance, "margin tolerance (default 1e-8)");

  CLI::App* list = app.add_subcommand("list-builtins", "print builtin scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list->parsed()) {
    char* names = nullptr;
    if (edlab_builtin_names(&names) != EDLAB_OK) {
      std::fprintf(stderr, "edlab: %s\n", edlab_last_error());
      return 1;
    }
    std::fputs(names, stdout);
    edlab_string_free(names);
    return 0;
  }

  if (run->parsed()) {
    edlab_report_set* reports = nullptr;
    edlab_status st;
    if (std::filesystem::exists(run_target)) {
      st = edlab_run_file(run_target.c_str(), tolerance, &reports);
    } else {
      st = edlab_run_builtin(run_target.c_str(), tolerance, &reports);
      if (st == EDLAB_ERROR_RESOLVE) {
        std::fprintf(stderr, "edlab: no such file or builtin '%s'\n", run_target.c_str());
        return 1;
      }
    }
    if (st != EDLAB_OK) {
      std::fprintf(stderr, "edlab: %s\n", edlab_last_error());
      return 1;
    }
    return emit_and_finish(reports, format);
  }

  if (sweep->parsed()) {
    if (mode != "error_disturbance" && mode != "simultaneous") {
      std::fprintf(stderr, "edlab: unknown mode '%s'\n", mode.c_str());
      return 1;
    }
    cfg.subalgebras = subalgebras ? 1 : 0;
    cfg.simultaneous = mode == "simultaneous" ? 1 : 0;
    edlab_report_set* reports = nullptr;
    if (edlab_run_sweep(&cfg, tolerance, &reports) != EDLAB_OK) {
      std::fprintf(stderr, "edlab: %s\n", edlab_last_error());
      return 1;
    }
    return emit_and_finish(reports, format);
  }

  return 1;
}
