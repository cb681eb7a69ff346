#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundary/calendar.hpp"
#include "boundary/rng.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

class Generator;

struct OracleVerdict {
  bool valid = false;
  /// Parser diagnostic; present only for invalid verdicts.
  std::optional<std::string> detail;

  static OracleVerdict accept() { return {true, std::nullopt}; }
  static OracleVerdict reject(std::string why) { return {false, std::move(why)}; }
};

/// Maps an input string to valid/invalid by attempting the SUT's parse.
///
/// check() is total: parse failures of any kind become invalid verdicts.
/// Only OracleError (the SUT could not be run at all) escapes. Inputs that
/// are not well-formed UTF-8 are decoded with U+FFFD replacement first.
class ValidityOracle {
 public:
  explicit ValidityOracle(std::string name) : name_(std::move(name)) {}
  virtual ~ValidityOracle() = default;
  ValidityOracle(const ValidityOracle&) = delete;
  ValidityOracle& operator=(const ValidityOracle&) = delete;

  const std::string& name() const { return name_; }

  OracleVerdict check(std::string_view input) const;
  bool is_valid(std::string_view input) const { return check(input).valid; }

  std::uint64_t evaluation_count() const { return count_.load(std::memory_order_relaxed); }

 protected:
  virtual OracleVerdict evaluate(std::string_view text) const = 0;

 private:
  std::string name_;
  mutable std::atomic<std::uint64_t> count_{0};
};

class DateOracle final : public ValidityOracle {
 public:
  explicit DateOracle(std::vector<calendar::DateFormat> formats = calendar::default_formats());
  std::span<const calendar::DateFormat> formats() const { return formats_; }

 protected:
  OracleVerdict evaluate(std::string_view text) const override;

 private:
  std::vector<calendar::DateFormat> formats_;
};

class JsonOracle final : public ValidityOracle {
 public:
  JsonOracle() : ValidityOracle("json") {}

 protected:
  OracleVerdict evaluate(std::string_view text) const override;
};

class XmlOracle final : public ValidityOracle {
 public:
  XmlOracle() : ValidityOracle("xml") {}

 protected:
  OracleVerdict evaluate(std::string_view text) const override;
};

/// Perl-syntax regular expression compilation.
class RegexOracle final : public ValidityOracle {
 public:
  RegexOracle() : ValidityOracle("regex") {}

 protected:
  OracleVerdict evaluate(std::string_view text) const override;
};

struct CommandSpec {
  std::string path;
  std::vector<std::string> args;
  int timeout_ms = 5000;
  int max_parallel_processes = 1;
};

/// Runs an external SUT with the input on stdin. Exit status 0 is valid;
/// nonzero exit, death by signal, or timeout is invalid.
class CommandOracle final : public ValidityOracle {
 public:
  explicit CommandOracle(CommandSpec spec);

 protected:
  OracleVerdict evaluate(std::string_view text) const override;

 private:
  CommandSpec spec_;
  mutable std::mutex mutex_;
  mutable std::condition_variable slot_free_;
  mutable int running_ = 0;
};

OracleVerdict date_oracle(std::string_view text);
OracleVerdict json_oracle(std::string_view text);
OracleVerdict xml_oracle(std::string_view text);
OracleVerdict regex_oracle(std::string_view text);

std::span<const std::string_view> oracle_names();

struct OracleOptions {
  std::vector<calendar::DateFormat> date_formats = calendar::default_formats();
  std::optional<CommandSpec> command;
};

/// Throws ConfigError for an unknown name or a command SUT without a command.
std::unique_ptr<ValidityOracle> make_oracle(std::string_view name, const OracleOptions& options = {});

/// `count` date-shaped strings that the date oracle rejects, each a real date
/// pushed just past a calendar limit (month 13 or 00, day one past the month
/// end, Feb 29 of a common year).
TestSet reference_invalid_dates(std::size_t count, Rng& rng,
                                std::span<const calendar::DateFormat> formats =
                                    calendar::default_formats());

/// `count` distinct, oracle-verified valid samples from unoptimized generation.
/// Throws GenerationStall when duplicates or rejects exhaust the retry bound.
TestSet random_valid_set(const Generator& generator, const ValidityOracle& oracle,
                         std::size_t count, Rng& rng);

}  // namespace boundary
