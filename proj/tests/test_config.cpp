#include <gtest/gtest.h>

#include <string>

#include "boundary/config.hpp"
#include "boundary/errors.hpp"

using namespace boundary;

namespace {

std::string config_error(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, MinimalDateConfigGetsDefaults) {
  const auto cfg = parse_config(R"({"sut": "date"})");
  EXPECT_EQ(cfg.sut, "date");
  EXPECT_EQ(cfg.generator, "date");
  EXPECT_EQ(cfg.generation_metric, "ncd");
  EXPECT_EQ(cfg.tset_size, 10u);
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.analysis_metrics, (std::vector<std::string>{"ncd", "levenshtein", "day", "msid"}));
  EXPECT_EQ(cfg.mutator_presets, (std::vector<std::string>{"int", "int_keep_size"}));
  EXPECT_TRUE(cfg.include_reference_invalid);
  EXPECT_EQ(cfg.switch_budget.target_switches, 20u);
  EXPECT_EQ(cfg.switch_budget.max_mutations_per_switch, 500u);
  EXPECT_EQ(cfg.switch_budget.max_total_mutations, 5000u);
  EXPECT_EQ(cfg.switch_budget.walk_mode, WalkMode::advance_always);
  EXPECT_EQ(cfg.nmcs_budget.choices_evaluated, 2u);
  EXPECT_EQ(cfg.distance_options.compressor.kind, Compressor::zstd);
  EXPECT_EQ(cfg.distance_options.compressor.level, 6);
  EXPECT_EQ(cfg.distance_options.incomparable_penalty, 1e6);
}

TEST(Config, WideSutDefaults) {
  const auto cfg = parse_config(R"({"sut": "json", "generator": "json"})");
  EXPECT_EQ(cfg.analysis_metrics, (std::vector<std::string>{"ncd", "levenshtein"}));
  EXPECT_EQ(cfg.mutator_presets, (std::vector<std::string>{"chars"}));
  EXPECT_FALSE(cfg.include_reference_invalid);
}

TEST(Config, GeneratorObjectAndCompressor) {
  const auto cfg = parse_config(R"({"sut": "xml",
    "generator": {"name": "xml", "max_depth": 3, "indent": 2, "max_string_length": 16},
    "compressor": "deflate", "compression_level": 6})");
  EXPECT_EQ(cfg.generator, "xml");
  EXPECT_EQ(cfg.generator_options.max_depth, 3);
  EXPECT_EQ(cfg.generator_options.indent, 2);
  EXPECT_EQ(cfg.generator_options.max_string_length, 16);
  EXPECT_EQ(cfg.distance_options.compressor.kind, Compressor::deflate);
  EXPECT_EQ(cfg.distance_options.compressor.level, 6);
}

TEST(Config, ZeroTsetSizeNamesTheField) {
  const auto message = config_error("{\"sut\": \"date\",\n \"tset_size\": 0}");
  EXPECT_NE(message.find("tset_size"), std::string::npos) << message;
  EXPECT_NE(message.find("line 2"), std::string::npos) << message;
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_NE(config_error(R"({"sut": "date", "colour": "blue"})").find("colour"), std::string::npos);
  EXPECT_NE(config_error(R"({"switch_budget": {"target": 3}})").find("switch_budget.target"),
            std::string::npos);
}

TEST(Config, InvalidValues) {
  EXPECT_FALSE(config_error(R"({"sut": "yaml"})").empty());
  EXPECT_FALSE(config_error(R"({"generation_metric": "hamming"})").empty());
  EXPECT_FALSE(config_error(R"({"analysis_metrics": ["ncd", "bogus"]})").empty());
  EXPECT_FALSE(config_error(R"({"mutator_presets": ["int", "int"]})").empty());
  EXPECT_FALSE(config_error(R"({"mutator_presets": ["int", "chars", "int_keep_size"]})").empty());
  EXPECT_FALSE(config_error(R"({"sut": "json", "generator": "json", "include_reference_invalid": true})").empty());
  EXPECT_FALSE(config_error(R"({"compression_level": 25})").empty());
  EXPECT_FALSE(config_error(R"({"sut": "command"})").empty());
  EXPECT_FALSE(config_error(R"({"seed": -1})").empty());
  EXPECT_FALSE(config_error(R"({"switch_budget": {"walk_mode": "sideways"}})").empty());
  EXPECT_FALSE(config_error("{not json").empty());
}

TEST(Config, ValueWeights) {
  const auto cfg = parse_config(R"({"sut": "json",
    "generator": {"name": "json", "value_weights": {"string": 8, "boolean": 0}}})");
  const ValueWeights expected{.string = 8, .integer = 1, .real = 1, .boolean = 0, .map = 1};
  EXPECT_EQ(cfg.generator_options.value_weights, expected);
  EXPECT_EQ(config_to_json(cfg)["generator"]["value_weights"]["string"], 8);

  EXPECT_FALSE(config_error(R"({"sut": "json", "generator": {"name": "json",
    "value_weights": {"string": 0, "integer": 0, "real": 0, "boolean": 0}}})").empty());
  EXPECT_FALSE(config_error(R"({"sut": "json", "generator": {"name": "json", "value_weights": {"text": 1}}})").empty());
  EXPECT_FALSE(config_error(R"({"sut": "json", "generator": {"name": "json", "value_weights": {"map": -2}}})").empty());
}

TEST(Config, CommandSut) {
  const auto cfg = parse_config(R"({"sut": "command", "generator": "json",
    "command": {"path": "/bin/true", "args": ["-x"], "timeout_ms": 250}})");
  ASSERT_TRUE(cfg.command);
  EXPECT_EQ(cfg.command->path, "/bin/true");
  EXPECT_EQ(cfg.command->args, std::vector<std::string>{"-x"});
  EXPECT_EQ(cfg.command->timeout_ms, 250);
}

TEST(Config, SnapshotRoundTrips) {
  const auto cfg = parse_config(R"({"sut": "json", "generator": {"name": "json", "indent": 4},
    "seed": 99, "switch_budget": {"walk_mode": "advance_on_switch"}})");
  const auto text = config_to_json(cfg).dump(2);
  const auto again = parse_config(text);
  EXPECT_EQ(config_to_json(again).dump(2), text);
  EXPECT_EQ(again.seed, 99u);
  EXPECT_EQ(again.generator_options.indent, 4);
  EXPECT_EQ(again.switch_budget.walk_mode, WalkMode::advance_on_switch);
}
