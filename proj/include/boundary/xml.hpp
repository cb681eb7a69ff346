#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace boundary::xml {

/// Element tree produced by the well-formedness parser. Attributes, comments
/// and processing instructions are checked but not kept.
struct Element {
  std::string name;
  std::string text;  // concatenated character data, entities decoded
  std::vector<Element> children;
};

struct ParseResult {
  bool ok = false;
  Element root;
  std::string error;  // "line L col C: message" when !ok
};

/// Strict XML 1.0 well-formedness check: optional prolog and misc, exactly
/// one root element, matched tags, quoted unique attributes, the five
/// predefined entities plus numeric character references, CDATA, comments,
/// processing instructions. DTDs are rejected.
ParseResult parse(std::string_view text);

bool is_name_start(char c);
bool is_name_char(char c);

/// Escapes &, <, >, " and ' for use as character data.
std::string escape(std::string_view text);

}  // namespace boundary::xml
