#include "boundary/generators.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "boundary/errors.hpp"
#include "boundary/structure.hpp"

namespace boundary {
namespace {

constexpr std::array<std::string_view, 4> kGeneratorNames = {"date", "json", "xml", "regex"};

enum DatePoint : std::uint32_t { kDateFormat = 1, kYear, kMonth, kDay };

enum RegexPoint : std::uint32_t {
  kAlternatives = 200,
  kPieces,
  kAtom,
  kLiteral,
  kClassNegated,
  kClassItems,
  kClassItem,
  kEscape,
  kGroupKind,
  kQuantifier,
  kRepeatMin,
  kRepeatSpan,
};

constexpr std::string_view kAlnum =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::array<std::string_view, 13> kEscapedMeta = {
    "\\.", "\\*", "\\+", "\\?", "\\(", "\\)", "\\[", "\\]", "\\{", "\\}", "\\|", "\\^", "\\$"};
constexpr std::array<std::string_view, 6> kClassRanges = {"a-z", "A-Z", "0-9", "a-f", "k-p", "2-7"};
constexpr std::array<std::string_view, 6> kShorthands = {"\\d", "\\w", "\\s", "\\D", "\\W", "\\S"};

class RegexBuilder {
 public:
  RegexBuilder(ChoiceSource& choices, const GeneratorOptions& options)
      : choices_(choices),
        max_depth_(std::max(options.max_depth, 0)),
        fanout_(static_cast<std::size_t>(std::max(options.max_fanout, 1))) {}

  std::string alternation(int depth) {
    const std::size_t count = 1 + choices_.choose(kAlternatives, std::min<std::size_t>(2, fanout_));
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) out += '|';
      out += concatenation(depth);
    }
    return out;
  }

 private:
  std::string concatenation(int depth) {
    const std::size_t count = 1 + choices_.choose(kPieces, fanout_);
    std::string out;
    for (std::size_t i = 0; i < count; ++i) out += piece(depth);
    return out;
  }

  std::string piece(int depth) { return atom(depth) + quantifier(); }

  std::string atom(int depth) {
    const bool can_group = depth < max_depth_;
    switch (choices_.choose(kAtom, can_group ? 8 : 7)) {
      case 0:
      case 1:
      case 2:
      case 3: {
        const std::size_t pick = choices_.choose(kLiteral, kAlnum.size() + kEscapedMeta.size());
        if (pick < kAlnum.size()) return std::string(1, kAlnum[pick]);
        return std::string(kEscapedMeta[pick - kAlnum.size()]);
      }
      case 4: {
        std::string out = "[";
        if (choices_.choose(kClassNegated, 4) == 0) out += '^';
        const std::size_t items = 1 + choices_.choose(kClassItems, 3);
        for (std::size_t i = 0; i < items; ++i) {
          const std::size_t pick = choices_.choose(kClassItem, kClassRanges.size() + kAlnum.size());
          if (pick < kClassRanges.size()) out += kClassRanges[pick];
          else out += kAlnum[pick - kClassRanges.size()];
        }
        return out + "]";
      }
      case 5:
        return ".";
      case 6:
        return std::string(kShorthands[choices_.choose(kEscape, kShorthands.size())]);
      default: {
        const bool capturing = choices_.choose(kGroupKind, 2) == 0;
        return (capturing ? "(" : "(?:") + alternation(depth + 1) + ")";
      }
    }
  }

  std::string quantifier() {
    switch (choices_.choose(kQuantifier, 9)) {
      case 0:
      case 1:
      case 2:
        return "";
      case 3: return "*";
      case 4: return "+";
      case 5: return "?";
      case 6: return "{" + std::to_string(choices_.choose(kRepeatMin, 6)) + "}";
      case 7: {
        const std::size_t low = choices_.choose(kRepeatMin, 6);
        const std::size_t high = low + choices_.choose(kRepeatSpan, 5);
        return "{" + std::to_string(low) + "," + std::to_string(high) + "}";
      }
      default:
        return "{" + std::to_string(choices_.choose(kRepeatMin, 6)) + ",}";
    }
  }

  ChoiceSource& choices_;
  int max_depth_;
  std::size_t fanout_;
};

}  // namespace

std::size_t RecordingChoices::choose(std::uint32_t point, std::size_t arity) {
  if (arity == 0) throw std::logic_error("choice point with arity 0");
  std::size_t index = 0;
  const std::size_t position = decisions_.size();
  if (position < prefix_.size()) {
    const Decision& forced = prefix_[position];
    if (forced.point != point || forced.arity != arity)
      throw std::logic_error("choice trace does not match the generator's choice points");
    index = forced.index;
  } else if (rng_ != nullptr) {
    index = rng_->below(arity);
  } else {
    throw std::logic_error("replay ran past the end of the choice trace");
  }
  decisions_.push_back({point, index, arity});
  return index;
}

Generated sample(const Generator& generator, Rng& rng) {
  RecordingChoices choices(&rng);
  Generated out;
  out.text = generator.generate(choices);
  out.trace.decisions = choices.take();
  return out;
}

std::string replay(const Generator& generator, const ChoiceTrace& trace) {
  RecordingChoices choices(nullptr, trace.decisions);
  return generator.generate(choices);
}

DateGenerator::DateGenerator(GeneratorOptions options) : options_(std::move(options)) {
  if (options_.date_formats.empty()) throw ConfigError("date generator needs at least one format");
}

std::string DateGenerator::generate(ChoiceSource& choices) const {
  const auto& formats = options_.date_formats;
  const calendar::DateFormat format =
      formats.size() == 1 ? formats.front() : formats[choices.choose(kDateFormat, formats.size())];
  calendar::DateFields fields;
  fields.year = static_cast<std::int64_t>(choices.choose(kYear, 10000));
  fields.month = static_cast<std::int64_t>(choices.choose(kMonth, 12)) + 1;
  fields.day = static_cast<std::int64_t>(choices.choose(
                   kDay, static_cast<std::size_t>(calendar::days_in_month(fields.year, fields.month)))) +
               1;
  return calendar::format(fields, format);
}

std::string JsonGenerator::generate(ChoiceSource& choices) const {
  return serialize_json(generate_structure(choices, options_), options_.indent);
}

std::string XmlGenerator::generate(ChoiceSource& choices) const {
  return serialize_xml(generate_structure(choices, options_), options_.indent);
}

std::string RegexGenerator::generate(ChoiceSource& choices) const {
  return RegexBuilder(choices, options_).alternation(0);
}

std::string generate_date(Rng& rng, const GeneratorOptions& options) {
  return sample(DateGenerator(options), rng).text;
}

std::string generate_regex(Rng& rng, const GeneratorOptions& options) {
  return sample(RegexGenerator(options), rng).text;
}

std::span<const std::string_view> generator_names() { return kGeneratorNames; }

std::unique_ptr<Generator> make_generator(std::string_view name, const GeneratorOptions& options) {
  if (options.max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (options.max_fanout < 1) throw ConfigError("max_fanout must be >= 1");
  const auto& w = options.value_weights;
  if (w.string < 0 || w.integer < 0 || w.real < 0 || w.boolean < 0 || w.map < 0 ||
      w.string + w.integer + w.real + w.boolean == 0)
    throw ConfigError("value weights must be non-negative with at least one positive leaf kind");
  if (name == "date") return std::make_unique<DateGenerator>(options);
  if (name == "json") return std::make_unique<JsonGenerator>(options);
  if (name == "xml") return std::make_unique<XmlGenerator>(options);
  if (name == "regex") return std::make_unique<RegexGenerator>(options);
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

}  // namespace boundary
