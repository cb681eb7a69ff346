// Command-line front end: run experiments, re-analyse runs, list components.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boundary/config.hpp"
#include "boundary/distance.hpp"
#include "boundary/errors.hpp"
#include "boundary/oracles.hpp"
#include "boundary/pipeline.hpp"

namespace {

std::filesystem::path default_output_root() {
  if (const char* root = std::getenv("BOUNDARY_OUTPUT_ROOT"); root && *root) return root;
  return "runs";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary value exploration via test diversity and property switching"};
  app.set_version_flag("--version", BOUNDARY_VERSION);
  app.require_subcommand(1);

  int jobs = 0;
  bool quiet = false;
  app.add_option("-j,--jobs", jobs, "Worker threads (default: OpenMP default)")->check(CLI::PositiveNumber);
  app.add_flag("-q,--quiet", quiet, "Only print errors");

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("-o,--output", output, "Run directory (overrides config output_dir)");

  auto* analyze = app.add_subcommand("analyze", "Recompute the analysis of an existing run");
  std::string run_dir;
  std::vector<std::string> metrics;
  analyze->add_option("run_dir", run_dir, "Run directory")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("-m,--metrics", metrics, "Analysis metrics (default: the run's own)")->delimiter(',');

  auto* oracles = app.add_subcommand("oracles", "Validity oracles");
  oracles->require_subcommand(1);
  oracles->add_subcommand("list", "List oracle names");

  auto* metrics_cmd = app.add_subcommand("metrics", "Distance metrics");
  metrics_cmd->require_subcommand(1);
  metrics_cmd->add_subcommand("list", "List metric names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (jobs > 0) omp_set_num_threads(jobs);
  boundary::PipelineOptions options{quiet};

  if (*oracles) {
    for (auto name : boundary::oracle_names()) std::cout << name << "\n";
    return 0;
  }
  if (*metrics_cmd) {
    for (auto name : boundary::metric_names()) std::cout << name << "\n";
    return 0;
  }
  if (*analyze) return boundary::analyze_run_dir(run_dir, metrics, options, &std::cerr);

  boundary::RunConfig config;
  try {
    config = boundary::validate_config(config_path);
  } catch (const boundary::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (seed) config.seed = *seed;
  if (!output.empty()) {
    config.output_dir = output;
  } else if (config.output_dir.empty()) {
    config.output_dir = (default_output_root() / (std::filesystem::path(config_path).stem().string() +
                                                  "-seed" + std::to_string(config.seed)))
                            .string();
  }
  try {
    return boundary::run_pipeline(config, options, &std::cerr);
  } catch (const boundary::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
