#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boundary/distance.hpp"
#include "boundary/generators.hpp"
#include "boundary/nmcs.hpp"
#include "boundary/oracles.hpp"
#include "boundary/switchsearch.hpp"

namespace boundary {

/// Everything one experiment needs; reproducible from the file alone.
struct RunConfig {
  std::string sut = "date";
  std::optional<CommandSpec> command;
  std::string generator = "date";
  GeneratorOptions generator_options;
  std::string generation_metric = "ncd";
  std::vector<std::string> analysis_metrics;
  /// One or two presets; with two, each MVS is also compared to the other's.
  std::vector<std::string> mutator_presets;
  std::size_t tset_size = 10;
  std::size_t initial_set_size = 1;
  NmcsBudget nmcs_budget;
  SwitchBudget switch_budget;
  std::uint64_t seed = 1;
  std::string output_dir;
  bool include_reference_invalid = false;
  std::size_t reference_invalid_size = 100;
  std::size_t random_set_size = 100;
  DistanceOptions distance_options;

  OracleOptions oracle_options() const;
};

/// Parses and validates configuration text (JSON). Unknown keys, wrong types
/// and out-of-range values raise ConfigError naming the line and field.
RunConfig parse_config(std::string_view text);

/// Reads and validates a configuration file.
RunConfig validate_config(const std::filesystem::path& path);

/// Full configuration with defaults filled in; parse_config accepts it back.
nlohmann::ordered_json config_to_json(const RunConfig& config);

}  // namespace boundary
