#include "boundary/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "boundary/artifacts.hpp"
#include "boundary/errors.hpp"
#include "boundary/mutation.hpp"

namespace boundary {
namespace {

// Stream ids for derive_seed; fixed so runs stay reproducible.
enum Stream : std::uint64_t {
  kInitialStream = 1,
  kStep1Stream = 2,
  kRandomStream = 3,
  kReferenceStream = 4,
  kStep2Stream = 16,
};

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::vector<DistanceMetric> build_metrics(const RunConfig& config,
                                          const std::vector<std::string>& names) {
  std::vector<DistanceMetric> metrics;
  for (const auto& name : names) metrics.push_back(make_metric(name, config.distance_options));
  return metrics;
}

std::string set_contents(const TestSet& set) {
  std::ostringstream out;
  write_candidates_jsonl(out, set);
  return out.str();
}

void write_analysis(const std::filesystem::path& dir, const RunConfig& config,
                    const std::vector<PresetAnalysis>& analyses, const std::vector<PresetRun>& presets) {
  const auto analysis_dir = dir / "analysis";
  std::filesystem::create_directories(analysis_dir);
  for (std::size_t p = 0; p < analyses.size(); ++p) {
    const auto& analysis = analyses[p];
    for (std::size_t m = 0; m < analysis.reports.size(); ++m) {
      const auto& report = analysis.reports[m];
      const std::string stem = analysis_stem(config.generation_metric, analysis.preset, report.metric_name);
      std::ostringstream distances;
      write_distances_csv(distances, report, presets[p].mvs);
      write_text_file(analysis_dir / (stem + ".distances.csv"), distances.str());
      std::ostringstream summary;
      write_summary_csv(summary, report);
      write_text_file(analysis_dir / (stem + ".summary.csv"), summary.str());
      write_text_file(analysis_dir / (stem + ".verdict.json"), verdict_json(analysis.verdicts[m]) + "\n");
    }
  }
}

nlohmann::ordered_json verdicts_json(const std::vector<PresetAnalysis>& analyses) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& analysis : analyses) {
    for (std::size_t m = 0; m < analysis.reports.size(); ++m) {
      const auto& v = analysis.verdicts[m];
      nlohmann::ordered_json entry = {{"preset", analysis.preset},
                                      {"metric", analysis.reports[m].metric_name},
                                      {"holds", v.holds},
                                      {"margin", v.margin}};
      if (v.alt_mvs_farther) entry["alt_mvs_farther"] = *v.alt_mvs_farther;
      out.push_back(std::move(entry));
    }
  }
  return out;
}

void report_verdicts(std::ostream& log, const std::vector<PresetAnalysis>& analyses) {
  for (const auto& analysis : analyses) {
    for (std::size_t m = 0; m < analysis.reports.size(); ++m) {
      const auto& v = analysis.verdicts[m];
      log << "  " << analysis.preset << " / " << analysis.reports[m].metric_name << ": "
          << (v.holds ? "holds" : "does not hold") << " (margin " << v.margin << ")";
      if (v.alt_mvs_farther) log << (*v.alt_mvs_farther ? ", alt MVS farther" : ", alt MVS not farther");
      log << "\n";
    }
  }
}

}  // namespace

bool RunResult::all_verdicts_hold() const {
  for (const auto& analysis : analyses)
    for (const auto& v : analysis.verdicts)
      if (!v.holds) return false;
  return true;
}

std::string mvs_file(const std::string& preset) { return "mvs_" + preset + ".jsonl"; }
std::string mis_file(const std::string& preset) { return "mis_" + preset + ".jsonl"; }
std::string trace_file(const std::string& preset) { return "trace_" + preset + ".jsonl"; }
std::string analysis_stem(const std::string& generation_metric, const std::string& preset,
                          const std::string& analysis_metric) {
  return generation_metric + "." + preset + "." + analysis_metric;
}

std::vector<PresetAnalysis> analyze_sets(const RunConfig& config, const Tset& tset,
                                         const TestSet& random,
                                         const std::optional<TestSet>& reference_invalid,
                                         const std::vector<PresetRun>& presets,
                                         const std::vector<std::string>& metric_names) {
  const auto metrics = build_metrics(config, metric_names);
  std::vector<PresetAnalysis> out;
  for (std::size_t p = 0; p < presets.size(); ++p) {
    AnalysisSets sets;
    sets.mvs = &presets[p].mvs;
    sets.mis = &presets[p].mis;
    sets.tset = &tset.candidates;
    sets.random = &random;
    if (reference_invalid && !reference_invalid->empty()) sets.reference_invalid = &*reference_invalid;
    if (presets.size() == 2) sets.alt_mvs = &presets[1 - p].mvs;
    if (sets.mvs->empty() || sets.mis->empty())
      throw EmptySetError("preset '" + presets[p].preset + "' produced an empty " +
                          (sets.mvs->empty() ? "MVS" : "MIS"));
    if (sets.alt_mvs && sets.alt_mvs->empty()) sets.alt_mvs = nullptr;
    PresetAnalysis analysis;
    analysis.preset = presets[p].preset;
    analysis.reports = cross_metric_analysis(sets, metrics);
    for (const auto& report : analysis.reports) analysis.verdicts.push_back(verdict(report));
    out.push_back(std::move(analysis));
  }
  return out;
}

RunResult execute_run(const RunConfig& config) {
  RunResult result;
  result.config = config;
  const auto generator = make_generator(config.generator, config.generator_options);
  const auto oracle = make_oracle(config.sut, config.oracle_options());
  const DistanceMetric metric = make_metric(config.generation_metric, config.distance_options);

  Rng initial_rng(derive_seed(config.seed, kInitialStream));
  const TestSet initial = initial_test_set(*generator, config.initial_set_size, initial_rng);
  Rng step1_rng(derive_seed(config.seed, kStep1Stream));
  result.tset = nmcs_step1(*generator, initial, metric, config.tset_size, config.nmcs_budget,
                           step1_rng, config.seed);

  Rng random_rng(derive_seed(config.seed, kRandomStream));
  result.random = random_valid_set(*generator, *oracle, config.random_set_size, random_rng);
  if (config.include_reference_invalid) {
    Rng reference_rng(derive_seed(config.seed, kReferenceStream));
    result.reference_invalid = reference_invalid_dates(config.reference_invalid_size, reference_rng,
                                                       config.generator_options.date_formats);
  }

  for (std::size_t p = 0; p < config.mutator_presets.size(); ++p) {
    PresetRun run;
    run.preset = config.mutator_presets[p];
    const MutatorSet operators = MutatorSet::preset(run.preset);
    run.pairs = run_step2(result.tset.candidates, operators, *oracle, config.switch_budget,
                          derive_seed(config.seed, kStep2Stream + p));
    run.mvs = aggregate_mvs(run.pairs);
    run.mis = aggregate_mis(run.pairs);
    for (const auto& pair : run.pairs) run.oracle_evaluations += pair.oracle_evaluations;
    result.presets.push_back(std::move(run));
  }

  result.analyses = analyze_sets(config, result.tset, result.random, result.reference_invalid,
                                 result.presets, config.analysis_metrics);
  return result;
}

int run_pipeline(const RunConfig& config, const PipelineOptions& options, std::ostream* log) {
  std::ostream& out = log ? *log : std::cerr;
  if (config.output_dir.empty()) {
    out << "error: no output directory configured\n";
    return 1;
  }
  const std::filesystem::path dir(config.output_dir);
  const std::string started = utc_now();

  nlohmann::ordered_json manifest;
  manifest["tool"] = "boundary";
  manifest["tool_version"] = BOUNDARY_VERSION;
  manifest["config"] = config_to_json(config);
  manifest["started_at"] = started;

  RunResult result;
  std::string failure;
  try {
    result = execute_run(config);
  } catch (const Error& e) {
    failure = e.what();
  } catch (const std::invalid_argument& e) {
    failure = e.what();
  }

  std::filesystem::create_directories(dir);
  if (!failure.empty()) {
    manifest["finished_at"] = utc_now();
    manifest["status"] = "partial";
    manifest["error"] = failure;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    out << "error: " << failure << "\n";
    return 1;
  }

  write_text_file(dir / "tset.jsonl", set_contents(result.tset.candidates));
  write_text_file(dir / "random.jsonl", set_contents(result.random));
  if (result.reference_invalid)
    write_text_file(dir / "reference_invalid.jsonl", set_contents(*result.reference_invalid));

  nlohmann::ordered_json presets = nlohmann::ordered_json::array();
  for (const auto& run : result.presets) {
    write_text_file(dir / mvs_file(run.preset), set_contents(run.mvs));
    write_text_file(dir / mis_file(run.preset), set_contents(run.mis));
    std::ostringstream trace;
    write_trace_jsonl(trace, run.pairs);
    write_text_file(dir / trace_file(run.preset), trace.str());

    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    nlohmann::ordered_json no_switch = nlohmann::ordered_json::array();
    std::size_t switches = 0;
    for (const auto& pair : run.pairs) {
      switches += pair.switches.size();
      if (pair.outcome == SearchOutcome::no_switch_found) no_switch.push_back(pair.seed_index);
      pairs.push_back({{"seed_index", pair.seed_index},
                       {"outcome", std::string(to_string(pair.outcome))},
                       {"switches", pair.switches.size()},
                       {"oracle_evaluations", pair.oracle_evaluations},
                       {"mvs", pair.mvs.size()},
                       {"mis", pair.mis.size()}});
    }
    presets.push_back({{"preset", run.preset},
                       {"mvs", run.mvs.size()},
                       {"mis", run.mis.size()},
                       {"switches", switches},
                       {"oracle_evaluations", run.oracle_evaluations},
                       {"no_switch_found", no_switch},
                       {"pairs", pairs}});
  }

  write_analysis(dir, config, result.analyses, result.presets);

  std::size_t step1_evaluations = 0;
  for (const auto& round : result.tset.rounds) step1_evaluations += round.evaluated.size();
  manifest["finished_at"] = utc_now();
  manifest["status"] = "complete";
  manifest["counts"] = {{"tset", result.tset.candidates.size()},
                        {"step1_playouts", step1_evaluations},
                        {"random", result.random.size()},
                        {"reference_invalid", result.reference_invalid ? result.reference_invalid->size() : 0}};
  manifest["presets"] = presets;
  manifest["verdicts"] = verdicts_json(result.analyses);
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

  const bool holds = result.all_verdicts_hold();
  if (!options.quiet) {
    out << "run written to " << dir.string() << "\n";
    report_verdicts(out, result.analyses);
  }
  return holds ? 0 : 2;
}

int analyze_run_dir(const std::filesystem::path& run_dir, const std::vector<std::string>& metric_names,
                    const PipelineOptions& options, std::ostream* log) {
  std::ostream& out = log ? *log : std::cerr;
  try {
    std::ifstream in(run_dir / "manifest.json");
    if (!in) throw ConfigError("no manifest.json in '" + run_dir.string() + "'");
    const auto manifest = nlohmann::json::parse(in);
    if (manifest.value("status", "") != "complete")
      throw ConfigError("run in '" + run_dir.string() + "' is not complete");
    RunConfig config = parse_config(manifest.at("config").dump());
    config.output_dir = run_dir.string();
    const std::vector<std::string> metrics = metric_names.empty() ? config.analysis_metrics : metric_names;
    for (const auto& m : metrics) (void)make_metric(m, config.distance_options);

    Tset tset;
    tset.candidates = read_candidates_file(run_dir / "tset.jsonl", Role::tset);
    tset.metric_name = config.generation_metric;
    tset.target_size = config.tset_size;
    const TestSet random = read_candidates_file(run_dir / "random.jsonl", Role::random);
    std::optional<TestSet> reference;
    if (config.include_reference_invalid)
      reference = read_candidates_file(run_dir / "reference_invalid.jsonl", Role::reference_invalid);
    std::vector<PresetRun> presets;
    for (const auto& preset : config.mutator_presets) {
      PresetRun run;
      run.preset = preset;
      run.mvs = read_candidates_file(run_dir / mvs_file(preset), Role::mvs);
      run.mis = read_candidates_file(run_dir / mis_file(preset), Role::mis);
      presets.push_back(std::move(run));
    }
    const auto analyses = analyze_sets(config, tset, random, reference, presets, metrics);
    write_analysis(run_dir, config, analyses, presets);
    if (!options.quiet) {
      out << "analysis written to " << (run_dir / "analysis").string() << "\n";
      report_verdicts(out, analyses);
    }
    for (const auto& a : analyses)
      for (const auto& v : a.verdicts)
        if (!v.holds) return 2;
    return 0;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace boundary
