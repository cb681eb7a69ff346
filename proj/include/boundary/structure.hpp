#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "boundary/generators.hpp"
#include "boundary/rng.hpp"

namespace boundary {

/// Nested key-value tree with string keys and scalar leaves.
struct StructuredValue {
  using Map = std::vector<std::pair<std::string, StructuredValue>>;
  std::variant<std::string, std::int64_t, double, bool, Map> data;

  bool is_map() const { return std::holds_alternative<Map>(data); }
  const Map& map() const { return std::get<Map>(data); }

  friend bool operator==(const StructuredValue&, const StructuredValue&) = default;
};

/// Map levels, counting the root map as 1. Leaves count 0.
int depth(const StructuredValue& value);

/// Root is always a map. Keys are unique within a map and match
/// [a-z][a-z0-9_]*, so they are valid XML element names.
StructuredValue generate_structure(ChoiceSource& choices, const GeneratorOptions& options = {});
StructuredValue generate_structure(Rng& rng, const GeneratorOptions& options = {});

/// JSON text; compact when indent is 0, otherwise one member per line.
std::string serialize_json(const StructuredValue& value, int indent = 0);

/// XML with a <root> element; each key becomes an element, leaves become text.
/// Throws SerializationError for a key that is not a valid element name.
/// With indent > 0, child elements start on their own indented lines.
std::string serialize_xml(const StructuredValue& value, int indent = 0);

/// Text form used for leaves in XML output.
std::string leaf_text(const StructuredValue& value);

}  // namespace boundary
