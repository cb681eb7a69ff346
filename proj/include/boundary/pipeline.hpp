#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "boundary/analysis.hpp"
#include "boundary/config.hpp"
#include "boundary/nmcs.hpp"
#include "boundary/switchsearch.hpp"

namespace boundary {

struct PresetRun {
  std::string preset;
  std::vector<BoundaryPair> pairs;
  TestSet mvs{Role::mvs};
  TestSet mis{Role::mis};
  std::size_t oracle_evaluations = 0;
};

struct PresetAnalysis {
  std::string preset;
  std::vector<ComparisonReport> reports;  // one per analysis metric
  std::vector<BoundaryVerdict> verdicts;  // parallel to reports
};

/// In-memory result of one experiment.
struct RunResult {
  RunConfig config;
  Tset tset;
  TestSet random{Role::random};
  std::optional<TestSet> reference_invalid;
  std::vector<PresetRun> presets;
  std::vector<PresetAnalysis> analyses;

  bool all_verdicts_hold() const;
};

/// Step 1, Step 2 per preset, comparison sets, then analysis with every
/// configured analysis metric. Deterministic in (config, seed).
RunResult execute_run(const RunConfig& config);

/// Re-runs only the analysis stage over existing sets.
std::vector<PresetAnalysis> analyze_sets(const RunConfig& config, const Tset& tset,
                                         const TestSet& random,
                                         const std::optional<TestSet>& reference_invalid,
                                         const std::vector<PresetRun>& presets,
                                         const std::vector<std::string>& metric_names);

struct PipelineOptions {
  bool quiet = false;
};

/// Runs the whole pipeline and writes artifacts plus manifest.json under
/// config.output_dir. Returns 0 on success, 2 when some verdict does not
/// hold, 1 on a configuration or oracle error.
int run_pipeline(const RunConfig& config, const PipelineOptions& options = {},
                 std::ostream* log = nullptr);

/// Re-analyses a run directory. metric_names empty means the run's own list.
/// Same exit codes as run_pipeline.
int analyze_run_dir(const std::filesystem::path& run_dir, const std::vector<std::string>& metric_names,
                    const PipelineOptions& options = {}, std::ostream* log = nullptr);

/// Artifact file names inside a run directory.
std::string mvs_file(const std::string& preset);
std::string mis_file(const std::string& preset);
std::string trace_file(const std::string& preset);
std::string analysis_stem(const std::string& generation_metric, const std::string& preset,
                          const std::string& analysis_metric);

}  // namespace boundary
