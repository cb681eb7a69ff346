#include <gtest/gtest.h>

#include <json.hpp>
#include <set>
#include <string>

#include "boundary/errors.hpp"
#include "boundary/generators.hpp"
#include "boundary/oracles.hpp"
#include "boundary/rng.hpp"
#include "boundary/structure.hpp"
#include "boundary/xml.hpp"

using namespace boundary;

namespace {

// Rebuilds a tree from the XML parser's element form. Leaves become strings,
// which is enough to compare shapes and leaf text.
StructuredValue from_xml(const xml::Element& e) {
  if (e.children.empty() && !e.text.empty()) return {e.text};
  StructuredValue::Map map;
  for (const auto& child : e.children) map.emplace_back(child.name, from_xml(child));
  return {map};
}

// An empty string leaf and an empty map both serialize to <k></k>.
StructuredValue leaves_as_text(const StructuredValue& v) {
  if (!v.is_map()) {
    auto text = leaf_text(v);
    if (text.empty()) return {StructuredValue::Map{}};
    return {text};
  }
  StructuredValue::Map map;
  for (const auto& [k, child] : v.map()) map.emplace_back(k, leaves_as_text(child));
  return {map};
}

nlohmann::ordered_json to_json(const StructuredValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, StructuredValue::Map>) {
          auto o = nlohmann::ordered_json::object();
          for (const auto& [k, child] : x) o[k] = to_json(child);
          return o;
        } else {
          return x;
        }
      },
      v.data);
}

}  // namespace

TEST(Generators, EveryOutputIsAcceptedByItsOracle) {
  for (auto name : generator_names()) {
    const auto generator = make_generator(name);
    const auto oracle = make_oracle(name);
    Rng rng(201);
    for (int i = 0; i < 10000; ++i) {
      const auto text = sample(*generator, rng).text;
      ASSERT_TRUE(oracle->is_valid(text)) << name << ": " << text << " / "
                                          << oracle->check(text).detail.value_or("");
    }
  }
}

TEST(Generators, IndentedStructuresStayValid) {
  GeneratorOptions options;
  options.indent = 2;
  options.max_string_length = 32;
  for (auto name : {"json", "xml"}) {
    const auto generator = make_generator(name, options);
    const auto oracle = make_oracle(name);
    Rng rng(202);
    for (int i = 0; i < 2000; ++i) {
      const auto text = sample(*generator, rng).text;
      ASSERT_TRUE(oracle->is_valid(text)) << name << ": " << text;
    }
  }
}

TEST(Generators, ReplayReproducesOutput) {
  for (auto name : generator_names()) {
    const auto generator = make_generator(name);
    Rng rng(203);
    for (int i = 0; i < 500; ++i) {
      const auto g = sample(*generator, rng);
      ASSERT_EQ(replay(*generator, g.trace), g.text) << name;
      for (const auto& d : g.trace.decisions) ASSERT_LT(d.index, d.arity);
    }
  }
}

TEST(Generators, ReplayPastTraceThrows) {
  const auto generator = make_generator("date");
  Rng rng(204);
  auto g = sample(*generator, rng);
  g.trace.decisions.pop_back();
  EXPECT_THROW(replay(*generator, g.trace), std::logic_error);
}

TEST(Generators, DeterministicUnderSeed) {
  for (auto name : generator_names()) {
    const auto generator = make_generator(name);
    Rng a(205);
    Rng b(205);
    for (int i = 0; i < 200; ++i) ASSERT_EQ(sample(*generator, a).text, sample(*generator, b).text);
  }
}

TEST(Generators, RegressionPins) {
  Rng date_rng(1);
  EXPECT_EQ(generate_date(date_rng), "1528-07-04");

  Rng structure_rng(7);
  const auto tree = generate_structure(structure_rng);
  EXPECT_EQ(serialize_json(tree), R"({"o":-573,"d":true,"c8r":{}})");
  EXPECT_EQ(serialize_xml(tree), "<root><o>-573</o><d>true</d><c8r></c8r></root>");

  Rng regex_rng(3);
  EXPECT_EQ(generate_regex(regex_rng), R"(.+[W]\d|\}*)");
}

TEST(Generators, UnknownNameAndBadBounds) {
  EXPECT_THROW(make_generator("yaml"), ConfigError);
  GeneratorOptions zero_depth;
  zero_depth.max_depth = 0;
  EXPECT_THROW(make_generator("json", zero_depth), ConfigError);
}

TEST(Structure, DepthBoundHolds) {
  for (int bound = 1; bound <= 4; ++bound) {
    GeneratorOptions options;
    options.max_depth = bound;
    Rng rng(206);
    int deepest = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto tree = generate_structure(rng, options);
      ASSERT_TRUE(tree.is_map());
      ASSERT_LE(depth(tree), bound);
      deepest = std::max(deepest, depth(tree));
    }
    EXPECT_EQ(deepest, bound);
  }
}

TEST(Structure, DepthOneIsFlat) {
  GeneratorOptions options;
  options.max_depth = 1;
  Rng rng(207);
  for (int i = 0; i < 500; ++i) {
    const auto tree = generate_structure(rng, options);
    for (const auto& [key, child] : tree.map()) ASSERT_FALSE(child.is_map()) << key;
  }
}

namespace {
bool only_integer_leaves(const StructuredValue& v) {
  if (!v.is_map()) return std::holds_alternative<std::int64_t>(v.data);
  for (const auto& [key, child] : v.map())
    if (!only_integer_leaves(child)) return false;
  return true;
}
}  // namespace

TEST(Structure, ValueWeightsSelectLeafKinds) {
  GeneratorOptions options;
  options.value_weights = {.string = 0, .integer = 1, .real = 0, .boolean = 0, .map = 1};
  Rng rng(209);
  for (int i = 0; i < 500; ++i) ASSERT_TRUE(only_integer_leaves(generate_structure(rng, options)));

  options.value_weights.map = 0;
  for (int i = 0; i < 200; ++i) ASSERT_LE(depth(generate_structure(rng, options)), 1);
}

TEST(Structure, ValueWeightsRejectedWhenNoLeafKindRemains) {
  GeneratorOptions options;
  options.value_weights = {.string = 0, .integer = 0, .real = 0, .boolean = 0, .map = 3};
  EXPECT_THROW(make_generator("json", options), ConfigError);
  options.value_weights = {.string = -1};
  EXPECT_THROW(make_generator("xml", options), ConfigError);
}

TEST(Structure, KeysAreUniqueElementNames) {
  Rng rng(208);
  for (int i = 0; i < 500; ++i) {
    const auto tree = generate_structure(rng);
    std::function<void(const StructuredValue&)> walk = [&](const StructuredValue& v) {
      if (!v.is_map()) return;
      std::set<std::string> seen;
      for (const auto& [k, child] : v.map()) {
        ASSERT_TRUE(seen.insert(k).second) << k;
        ASSERT_TRUE(k[0] >= 'a' && k[0] <= 'z') << k;
        for (char c : k) ASSERT_TRUE(xml::is_name_char(c)) << k;
        walk(child);
      }
    };
    walk(tree);
  }
}

TEST(Serializers, Examples) {
  const StructuredValue empty{StructuredValue::Map{}};
  EXPECT_EQ(serialize_json(empty), "{}");
  EXPECT_EQ(serialize_xml(empty), "<root></root>");
  const StructuredValue one{StructuredValue::Map{{"a", StructuredValue{std::int64_t{1}}}}};
  EXPECT_EQ(serialize_json(one), R"({"a":1})");
  EXPECT_EQ(serialize_xml(one), "<root><a>1</a></root>");
  EXPECT_EQ(serialize_json(one, 2), "{\n  \"a\": 1\n}");
}

TEST(Serializers, InvalidElementNameThrows) {
  const StructuredValue bad{StructuredValue::Map{{"1x", StructuredValue{true}}}};
  EXPECT_THROW(serialize_xml(bad), SerializationError);
}

TEST(Serializers, RoundTripThroughParsers) {
  Rng rng(209);
  for (int i = 0; i < 1000; ++i) {
    const auto tree = generate_structure(rng);
    for (int indent : {0, 2}) {
      const auto parsed = nlohmann::ordered_json::parse(serialize_json(tree, indent));
      ASSERT_EQ(parsed, to_json(tree));
      const auto doc = xml::parse(serialize_xml(tree, indent));
      ASSERT_TRUE(doc.ok) << doc.error;
      ASSERT_EQ(doc.root.name, "root");
      ASSERT_TRUE(from_xml(doc.root) == leaves_as_text(tree)) << serialize_xml(tree, indent);
    }
  }
}

TEST(DateGenerator, EmitsOnlyConfiguredFormats) {
  GeneratorOptions options;
  options.date_formats = {calendar::DateFormat::month_day_year};
  const auto generator = make_generator("date", options);
  Rng rng(210);
  for (int i = 0; i < 500; ++i) {
    const auto text = sample(*generator, rng).text;
    ASSERT_NE(text.find('/'), std::string::npos) << text;
    ASSERT_TRUE(calendar::lex(text, options.date_formats)) << text;
  }
}
