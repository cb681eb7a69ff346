#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundary/calendar.hpp"
#include "boundary/rng.hpp"

namespace boundary {

/// One resolved choice point.
struct Decision {
  std::uint32_t point = 0;  // generator-specific choice point id
  std::size_t index = 0;
  std::size_t arity = 0;
  friend bool operator==(const Decision&, const Decision&) = default;
};

/// The decisions behind one generated string. Replaying them through the same
/// generator reproduces the string byte for byte.
struct ChoiceTrace {
  std::vector<Decision> decisions;
  std::uint64_t seed = 0;
};

class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;
  /// An index in [0, arity); arity >= 1.
  virtual std::size_t choose(std::uint32_t point, std::size_t arity) = 0;
};

/// Answers from `prefix` first, then uniformly from `rng`. Records every
/// answer. With a null rng, running past the prefix throws std::logic_error.
class RecordingChoices final : public ChoiceSource {
 public:
  explicit RecordingChoices(Rng* rng, std::span<const Decision> prefix = {})
      : rng_(rng), prefix_(prefix) {}

  std::size_t choose(std::uint32_t point, std::size_t arity) override;

  const std::vector<Decision>& decisions() const { return decisions_; }
  std::vector<Decision> take() { return std::move(decisions_); }

 private:
  Rng* rng_;
  std::span<const Decision> prefix_;
  std::vector<Decision> decisions_;
};

/// Relative odds of each value kind in generated structures. A map is only
/// drawn while the depth bound allows nesting.
struct ValueWeights {
  int string = 1;
  int integer = 1;
  int real = 1;
  int boolean = 1;
  int map = 1;
  friend bool operator==(const ValueWeights&, const ValueWeights&) = default;
};

struct GeneratorOptions {
  /// Nesting bound: map levels for structures, group depth for regexes.
  int max_depth = 6;
  /// Upper bound on entries per map and on alternatives/pieces in a regex.
  int max_fanout = 5;
  /// Longest string leaf in generated structures.
  int max_string_length = 8;
  /// Spaces per nesting level in JSON and XML output; 0 is compact.
  int indent = 0;
  ValueWeights value_weights;
  std::vector<calendar::DateFormat> date_formats = calendar::default_formats();
};

/// Stochastic generator of valid inputs for one SUT, driven entirely by a
/// ChoiceSource so that search can steer it.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string_view name() const = 0;
  virtual std::string generate(ChoiceSource& choices) const = 0;
};

struct Generated {
  std::string text;
  ChoiceTrace trace;
};

Generated sample(const Generator& generator, Rng& rng);
std::string replay(const Generator& generator, const ChoiceTrace& trace);

class DateGenerator final : public Generator {
 public:
  explicit DateGenerator(GeneratorOptions options = {});
  std::string_view name() const override { return "date"; }
  std::string generate(ChoiceSource& choices) const override;

 private:
  GeneratorOptions options_;
};

/// Random structure, serialized as JSON.
class JsonGenerator final : public Generator {
 public:
  explicit JsonGenerator(GeneratorOptions options = {}) : options_(std::move(options)) {}
  std::string_view name() const override { return "json"; }
  std::string generate(ChoiceSource& choices) const override;

 private:
  GeneratorOptions options_;
};

/// Random structure, serialized as XML.
class XmlGenerator final : public Generator {
 public:
  explicit XmlGenerator(GeneratorOptions options = {}) : options_(std::move(options)) {}
  std::string_view name() const override { return "xml"; }
  std::string generate(ChoiceSource& choices) const override;

 private:
  GeneratorOptions options_;
};

class RegexGenerator final : public Generator {
 public:
  explicit RegexGenerator(GeneratorOptions options = {}) : options_(std::move(options)) {}
  std::string_view name() const override { return "regex"; }
  std::string generate(ChoiceSource& choices) const override;

 private:
  GeneratorOptions options_;
};

std::string generate_date(Rng& rng, const GeneratorOptions& options = {});
std::string generate_regex(Rng& rng, const GeneratorOptions& options = {});

std::span<const std::string_view> generator_names();

/// Throws ConfigError for an unknown name.
std::unique_ptr<Generator> make_generator(std::string_view name, const GeneratorOptions& options = {});

}  // namespace boundary
