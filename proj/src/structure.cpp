#include "boundary/structure.hpp"

#include <algorithm>
#include <array>
#include <json.hpp>

#include "boundary/errors.hpp"
#include "boundary/xml.hpp"

namespace boundary {
namespace {

enum Point : std::uint32_t {
  kFanout = 100,
  kKeyLength,
  kKeyHead,
  kKeyTail,
  kKind,
  kStringLength,
  kStringChar,
  kInteger,
  kReal,
  kBoolean,
};

constexpr std::string_view kKeyHeadChars = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kKeyTailChars = "abcdefghijklmnopqrstuvwxyz0123456789_";
constexpr std::string_view kTextChars =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ";

constexpr std::size_t kMaxKeyLength = 6;

class StructureBuilder {
 public:
  StructureBuilder(ChoiceSource& choices, const GeneratorOptions& options)
      : choices_(choices), options_(options) {}

  StructuredValue map(int level) {
    StructuredValue::Map entries;
    const std::size_t count =
        choices_.choose(kFanout, static_cast<std::size_t>(std::max(options_.max_fanout, 0)) + 1);
    for (std::size_t i = 0; i < count; ++i) {
      std::string k = key();
      StructuredValue v = value(level);
      const bool duplicate = std::any_of(entries.begin(), entries.end(),
                                         [&](const auto& entry) { return entry.first == k; });
      if (!duplicate) entries.emplace_back(std::move(k), std::move(v));
    }
    return StructuredValue{std::move(entries)};
  }

 private:
  std::string key() {
    const std::size_t length = 1 + choices_.choose(kKeyLength, kMaxKeyLength);
    std::string out;
    out += kKeyHeadChars[choices_.choose(kKeyHead, kKeyHeadChars.size())];
    while (out.size() < length) out += kKeyTailChars[choices_.choose(kKeyTail, kKeyTailChars.size())];
    return out;
  }

  StructuredValue value(int level) {
    const auto& w = options_.value_weights;
    const std::array<int, 5> weights = {w.string, w.integer, w.real, w.boolean,
                                        level < options_.max_depth ? w.map : 0};
    std::size_t total = 0;
    for (int x : weights) total += static_cast<std::size_t>(x);
    std::size_t pick = choices_.choose(kKind, total);
    std::size_t kind = 0;
    while (pick >= static_cast<std::size_t>(weights[kind])) pick -= static_cast<std::size_t>(weights[kind++]);
    switch (kind) {
      case 0: {
        const std::size_t length =
            choices_.choose(kStringLength, static_cast<std::size_t>(std::max(options_.max_string_length, 0)) + 1);
        std::string text;
        for (std::size_t i = 0; i < length; ++i)
          text += kTextChars[choices_.choose(kStringChar, kTextChars.size())];
        return StructuredValue{std::move(text)};
      }
      case 1:
        return StructuredValue{static_cast<std::int64_t>(choices_.choose(kInteger, 2001)) - 1000};
      case 2:
        return StructuredValue{
            (static_cast<double>(choices_.choose(kReal, 200001)) - 100000.0) / 100.0};
      case 3:
        return StructuredValue{choices_.choose(kBoolean, 2) == 1};
      default:
        return map(level + 1);
    }
  }

  ChoiceSource& choices_;
  const GeneratorOptions& options_;
};

nlohmann::ordered_json to_json(const StructuredValue& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StructuredValue::Map>) {
          nlohmann::ordered_json object = nlohmann::ordered_json::object();
          for (const auto& [k, child] : v) object[k] = to_json(child);
          return object;
        } else {
          return nlohmann::ordered_json(v);
        }
      },
      value.data);
}

bool valid_element_name(std::string_view name) {
  if (name.empty() || !xml::is_name_start(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80 && xml::is_name_char(c);
  });
}

// Children of a non-empty map go on their own lines when indent > 0; leaf
// text is never padded, so the parsed values do not change.
void append_xml(std::string& out, const StructuredValue& value, int indent, int level) {
  if (!value.is_map()) {
    out += xml::escape(leaf_text(value));
    return;
  }
  const auto& entries = value.map();
  const auto newline = [&](int at) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * at), ' ');
  };
  for (const auto& [k, child] : entries) {
    if (!valid_element_name(k)) throw SerializationError("key '" + k + "' is not an XML element name");
    newline(level + 1);
    out += '<';
    out += k;
    out += '>';
    append_xml(out, child, indent, level + 1);
    if (child.is_map() && !child.map().empty()) newline(level + 1);
    out += "</";
    out += k;
    out += '>';
  }
}

}  // namespace

int depth(const StructuredValue& value) {
  if (!value.is_map()) return 0;
  int deepest = 0;
  for (const auto& entry : value.map()) deepest = std::max(deepest, depth(entry.second));
  return deepest + 1;
}

StructuredValue generate_structure(ChoiceSource& choices, const GeneratorOptions& options) {
  return StructureBuilder(choices, options).map(1);
}

StructuredValue generate_structure(Rng& rng, const GeneratorOptions& options) {
  RecordingChoices choices(&rng);
  return generate_structure(choices, options);
}

std::string serialize_json(const StructuredValue& value, int indent) {
  return to_json(value).dump(indent > 0 ? indent : -1);
}

std::string serialize_xml(const StructuredValue& value, int indent) {
  std::string out = "<root>";
  append_xml(out, value, indent, 0);
  if (indent > 0 && value.is_map() && !value.map().empty()) out += '\n';
  out += "</root>";
  return out;
}

std::string leaf_text(const StructuredValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, StructuredValue::Map>) {
          throw SerializationError("leaf_text called on a map");
        } else {
          return nlohmann::json(v).dump();
        }
      },
      value.data);
}

}  // namespace boundary
