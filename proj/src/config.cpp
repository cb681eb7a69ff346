#include "boundary/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "boundary/errors.hpp"
#include "boundary/mutation.hpp"

namespace boundary {
namespace {

using Json = nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(std::string_view field, const std::string& message) const {
    std::string where;
    const std::string needle = "\"" + std::string(leaf(field)) + "\"";
    const std::size_t pos = text_.find(needle);
    if (pos != std::string_view::npos) {
      const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
      where = "line " + std::to_string(line) + ": ";
    }
    throw ConfigError(where + "field '" + std::string(field) + "': " + message);
  }

  void check_keys(const Json& object, std::string_view prefix,
                  std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : object.items()) {
      (void)value;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(join(prefix, key), "unknown key");
    }
  }

  std::string string(const Json& j, std::string_view field) const {
    if (!j.is_string()) fail(field, "expected a string");
    return j.get<std::string>();
  }

  std::uint64_t unsigned_integer(const Json& j, std::string_view field, std::uint64_t min) const {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
      fail(field, "expected a non-negative integer");
    const auto value = j.get<std::uint64_t>();
    if (value < min) fail(field, "must be >= " + std::to_string(min));
    return value;
  }

  bool boolean(const Json& j, std::string_view field) const {
    if (!j.is_boolean()) fail(field, "expected true or false");
    return j.get<bool>();
  }

  double number(const Json& j, std::string_view field) const {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
  }

  std::vector<std::string> strings(const Json& j, std::string_view field) const {
    if (!j.is_array()) fail(field, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) out.push_back(string(item, field));
    return out;
  }

  static std::string join(std::string_view prefix, std::string_view key) {
    return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
  }

 private:
  static std::string_view leaf(std::string_view field) {
    const std::size_t dot = field.rfind('.');
    return dot == std::string_view::npos ? field : field.substr(dot + 1);
  }

  std::string_view text_;
};

template <typename Range>
bool contains(const Range& range, std::string_view value) {
  return std::find(range.begin(), range.end(), value) != range.end();
}

}  // namespace

OracleOptions RunConfig::oracle_options() const {
  OracleOptions options;
  options.date_formats = generator_options.date_formats;
  options.command = command;
  return options;
}

RunConfig parse_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  const Reader r(text);
  if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
  r.check_keys(root, "",
               {"sut", "command", "generator", "date_formats", "generation_metric",
                "analysis_metrics", "mutator_presets", "tset_size", "initial_set_size",
                "nmcs_budget", "switch_budget", "seed", "output_dir", "include_reference_invalid",
                "reference_invalid_size", "random_set_size", "incomparable_penalty",
                "compressor", "compression_level"});

  RunConfig cfg;
  if (root.contains("sut")) cfg.sut = r.string(root["sut"], "sut");
  if (!contains(oracle_names(), cfg.sut)) r.fail("sut", "unknown SUT '" + cfg.sut + "'");

  if (root.contains("command")) {
    const Json& c = root["command"];
    if (!c.is_object()) r.fail("command", "expected an object");
    r.check_keys(c, "command", {"path", "args", "timeout_ms", "max_parallel_processes"});
    CommandSpec spec;
    if (!c.contains("path")) r.fail("command.path", "required");
    spec.path = r.string(c["path"], "command.path");
    if (spec.path.empty()) r.fail("command.path", "must not be empty");
    if (c.contains("args")) spec.args = r.strings(c["args"], "command.args");
    if (c.contains("timeout_ms"))
      spec.timeout_ms = static_cast<int>(r.unsigned_integer(c["timeout_ms"], "command.timeout_ms", 1));
    if (c.contains("max_parallel_processes"))
      spec.max_parallel_processes = static_cast<int>(
          r.unsigned_integer(c["max_parallel_processes"], "command.max_parallel_processes", 1));
    cfg.command = spec;
  }
  if (cfg.sut == "command" && !cfg.command) r.fail("command", "required when sut is 'command'");

  cfg.generator = cfg.sut;
  if (root.contains("generator")) {
    const Json& g = root["generator"];
    if (g.is_string()) {
      cfg.generator = g.get<std::string>();
    } else if (g.is_object()) {
      r.check_keys(g, "generator",
                   {"name", "max_depth", "max_fanout", "max_string_length", "indent", "value_weights"});
      if (g.contains("name")) cfg.generator = r.string(g["name"], "generator.name");
      auto bounded = [&](const char* key, std::uint64_t min, std::uint64_t max) {
        const std::string field = std::string("generator.") + key;
        const auto value = r.unsigned_integer(g[key], field, min);
        if (value > max) r.fail(field, "must be at most " + std::to_string(max));
        return static_cast<int>(value);
      };
      if (g.contains("max_depth")) cfg.generator_options.max_depth = bounded("max_depth", 1, 64);
      if (g.contains("max_fanout")) cfg.generator_options.max_fanout = bounded("max_fanout", 1, 64);
      if (g.contains("max_string_length"))
        cfg.generator_options.max_string_length = bounded("max_string_length", 0, 4096);
      if (g.contains("indent")) cfg.generator_options.indent = bounded("indent", 0, 16);
      if (g.contains("value_weights")) {
        const Json& w = g["value_weights"];
        if (!w.is_object()) r.fail("generator.value_weights", "expected an object");
        r.check_keys(w, "generator.value_weights", {"string", "integer", "real", "boolean", "map"});
        auto& weights = cfg.generator_options.value_weights;
        auto weight = [&](const char* key, int& slot) {
          if (!w.contains(key)) return;
          const std::string field = std::string("generator.value_weights.") + key;
          const auto value = r.unsigned_integer(w[key], field, 0);
          if (value > 1000) r.fail(field, "must be at most 1000");
          slot = static_cast<int>(value);
        };
        weight("string", weights.string);
        weight("integer", weights.integer);
        weight("real", weights.real);
        weight("boolean", weights.boolean);
        weight("map", weights.map);
        if (weights.string + weights.integer + weights.real + weights.boolean == 0)
          r.fail("generator.value_weights", "at least one leaf kind needs a positive weight");
      }
    } else {
      r.fail("generator", "expected a name or an object");
    }
  }
  if (cfg.sut == "command" && !root.contains("generator"))
    r.fail("generator", "required when sut is 'command'");
  if (!contains(generator_names(), cfg.generator))
    r.fail("generator", "unknown generator '" + cfg.generator + "'");

  if (root.contains("date_formats")) {
    cfg.generator_options.date_formats.clear();
    for (const auto& name : r.strings(root["date_formats"], "date_formats")) {
      const auto format = calendar::parse_format(name);
      if (!format) r.fail("date_formats", "unknown date format '" + name + "'");
      cfg.generator_options.date_formats.push_back(*format);
    }
    if (cfg.generator_options.date_formats.empty()) r.fail("date_formats", "must not be empty");
  }
  cfg.distance_options.date_formats = cfg.generator_options.date_formats;

  if (root.contains("generation_metric"))
    cfg.generation_metric = r.string(root["generation_metric"], "generation_metric");
  if (!contains(metric_names(), cfg.generation_metric))
    r.fail("generation_metric", "unknown metric '" + cfg.generation_metric + "'");

  if (root.contains("analysis_metrics")) {
    cfg.analysis_metrics = r.strings(root["analysis_metrics"], "analysis_metrics");
    if (cfg.analysis_metrics.empty()) r.fail("analysis_metrics", "must not be empty");
    for (const auto& m : cfg.analysis_metrics)
      if (!contains(metric_names(), m)) r.fail("analysis_metrics", "unknown metric '" + m + "'");
  } else if (cfg.sut == "date") {
    cfg.analysis_metrics = {"ncd", "levenshtein", "day", "msid"};
  } else {
    cfg.analysis_metrics = {"ncd", "levenshtein"};
  }

  if (root.contains("mutator_presets")) {
    cfg.mutator_presets = r.strings(root["mutator_presets"], "mutator_presets");
  } else {
    cfg.mutator_presets = cfg.sut == "date" ? std::vector<std::string>{"int", "int_keep_size"}
                                            : std::vector<std::string>{"chars"};
  }
  if (cfg.mutator_presets.empty() || cfg.mutator_presets.size() > 2)
    r.fail("mutator_presets", "expected one or two presets");
  for (const auto& p : cfg.mutator_presets)
    if (!contains(mutator_preset_names(), p)) r.fail("mutator_presets", "unknown preset '" + p + "'");
  if (cfg.mutator_presets.size() == 2 && cfg.mutator_presets[0] == cfg.mutator_presets[1])
    r.fail("mutator_presets", "the two presets must differ");

  if (root.contains("tset_size")) cfg.tset_size = r.unsigned_integer(root["tset_size"], "tset_size", 1);
  if (root.contains("initial_set_size"))
    cfg.initial_set_size = r.unsigned_integer(root["initial_set_size"], "initial_set_size", 1);
  if (cfg.initial_set_size > cfg.tset_size)
    r.fail("initial_set_size", "must not exceed tset_size");

  if (root.contains("nmcs_budget")) {
    const Json& b = root["nmcs_budget"];
    if (!b.is_object()) r.fail("nmcs_budget", "expected an object");
    r.check_keys(b, "nmcs_budget",
                 {"choices_evaluated", "playouts_per_choice", "max_choice_points", "stall_limit"});
    auto& n = cfg.nmcs_budget;
    if (b.contains("choices_evaluated"))
      n.choices_evaluated = r.unsigned_integer(b["choices_evaluated"], "nmcs_budget.choices_evaluated", 1);
    if (b.contains("playouts_per_choice"))
      n.playouts_per_choice =
          r.unsigned_integer(b["playouts_per_choice"], "nmcs_budget.playouts_per_choice", 1);
    if (b.contains("max_choice_points"))
      n.max_choice_points = r.unsigned_integer(b["max_choice_points"], "nmcs_budget.max_choice_points", 0);
    if (b.contains("stall_limit"))
      n.stall_limit = r.unsigned_integer(b["stall_limit"], "nmcs_budget.stall_limit", 1);
  }

  if (root.contains("switch_budget")) {
    const Json& b = root["switch_budget"];
    if (!b.is_object()) r.fail("switch_budget", "expected an object");
    r.check_keys(b, "switch_budget",
                 {"target_switches", "max_mutations_per_switch", "max_total_mutations", "walk_mode"});
    auto& s = cfg.switch_budget;
    if (b.contains("target_switches"))
      s.target_switches = r.unsigned_integer(b["target_switches"], "switch_budget.target_switches", 1);
    if (b.contains("max_mutations_per_switch"))
      s.max_mutations_per_switch =
          r.unsigned_integer(b["max_mutations_per_switch"], "switch_budget.max_mutations_per_switch", 1);
    if (b.contains("max_total_mutations"))
      s.max_total_mutations =
          r.unsigned_integer(b["max_total_mutations"], "switch_budget.max_total_mutations", 1);
    if (b.contains("walk_mode")) {
      const auto mode = parse_walk_mode(r.string(b["walk_mode"], "switch_budget.walk_mode"));
      if (!mode) r.fail("switch_budget.walk_mode", "expected advance_always or advance_on_switch");
      s.walk_mode = *mode;
    }
  }

  if (root.contains("seed")) cfg.seed = r.unsigned_integer(root["seed"], "seed", 0);
  if (root.contains("output_dir")) cfg.output_dir = r.string(root["output_dir"], "output_dir");

  cfg.include_reference_invalid = cfg.sut == "date";
  if (root.contains("include_reference_invalid"))
    cfg.include_reference_invalid = r.boolean(root["include_reference_invalid"], "include_reference_invalid");
  if (cfg.include_reference_invalid && cfg.sut != "date")
    r.fail("include_reference_invalid", "only available for the date SUT");
  if (root.contains("reference_invalid_size"))
    cfg.reference_invalid_size = r.unsigned_integer(root["reference_invalid_size"], "reference_invalid_size", 1);
  if (root.contains("random_set_size"))
    cfg.random_set_size = r.unsigned_integer(root["random_set_size"], "random_set_size", 1);

  if (root.contains("incomparable_penalty")) {
    cfg.distance_options.incomparable_penalty = r.number(root["incomparable_penalty"], "incomparable_penalty");
    if (!(cfg.distance_options.incomparable_penalty >= 0))
      r.fail("incomparable_penalty", "must be non-negative");
  }
  if (root.contains("compressor")) {
    const std::string name = r.string(root["compressor"], "compressor");
    const auto kind = parse_compressor(name);
    if (!kind) r.fail("compressor", "unknown compressor '" + name + "' (expected zstd or deflate)");
    cfg.distance_options.compressor = {*kind, default_level(*kind)};
  }
  if (root.contains("compression_level")) {
    const auto level = r.unsigned_integer(root["compression_level"], "compression_level", 0);
    cfg.distance_options.compressor.level = static_cast<int>(std::min<std::uint64_t>(level, 1000));
    try {
      check_compressor(cfg.distance_options.compressor);
    } catch (const ConfigError& e) {
      r.fail("compression_level", e.what());
    }
  }
  return cfg;
}

RunConfig validate_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read configuration file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["sut"] = cfg.sut;
  if (cfg.command) {
    j["command"] = {{"path", cfg.command->path},
                    {"args", cfg.command->args},
                    {"timeout_ms", cfg.command->timeout_ms},
                    {"max_parallel_processes", cfg.command->max_parallel_processes}};
  }
  j["generator"] = {{"name", cfg.generator},
                    {"max_depth", cfg.generator_options.max_depth},
                    {"max_fanout", cfg.generator_options.max_fanout},
                    {"max_string_length", cfg.generator_options.max_string_length},
                    {"indent", cfg.generator_options.indent}};
  const auto& weights = cfg.generator_options.value_weights;
  j["generator"]["value_weights"] = {{"string", weights.string},
                                     {"integer", weights.integer},
                                     {"real", weights.real},
                                     {"boolean", weights.boolean},
                                     {"map", weights.map}};
  std::vector<std::string> formats;
  for (auto f : cfg.generator_options.date_formats) formats.emplace_back(calendar::to_string(f));
  j["date_formats"] = formats;
  j["generation_metric"] = cfg.generation_metric;
  j["analysis_metrics"] = cfg.analysis_metrics;
  j["mutator_presets"] = cfg.mutator_presets;
  j["tset_size"] = cfg.tset_size;
  j["initial_set_size"] = cfg.initial_set_size;
  j["nmcs_budget"] = {{"choices_evaluated", cfg.nmcs_budget.choices_evaluated},
                      {"playouts_per_choice", cfg.nmcs_budget.playouts_per_choice},
                      {"max_choice_points", cfg.nmcs_budget.max_choice_points},
                      {"stall_limit", cfg.nmcs_budget.stall_limit}};
  j["switch_budget"] = {{"target_switches", cfg.switch_budget.target_switches},
                        {"max_mutations_per_switch", cfg.switch_budget.max_mutations_per_switch},
                        {"max_total_mutations", cfg.switch_budget.max_total_mutations},
                        {"walk_mode", std::string(to_string(cfg.switch_budget.walk_mode))}};
  j["seed"] = cfg.seed;
  if (!cfg.output_dir.empty()) j["output_dir"] = cfg.output_dir;
  j["include_reference_invalid"] = cfg.include_reference_invalid;
  j["reference_invalid_size"] = cfg.reference_invalid_size;
  j["random_set_size"] = cfg.random_set_size;
  j["incomparable_penalty"] = cfg.distance_options.incomparable_penalty;
  j["compressor"] = std::string(to_string(cfg.distance_options.compressor.kind));
  j["compression_level"] = cfg.distance_options.compressor.level;
  return j;
}

}  // namespace boundary
