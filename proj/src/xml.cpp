#include "boundary/xml.hpp"

#include <cstdint>
#include <set>

#include "boundary/utf8.hpp"

namespace boundary::xml {
namespace {

struct Failure {
  std::size_t pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Element document() {
    if (starts_with("\xEF\xBB\xBF")) pos_ += 3;
    if (starts_with("<?xml")) {
      const std::size_t after = pos_ + 5;
      if (after < text_.size() && is_space(text_[after])) processing_instruction(true);
    }
    misc();
    if (!starts_with("<") || starts_with("</")) fail("expected root element");
    Element root = element(0);
    misc();
    if (pos_ != text_.size()) fail("content after root element");
    return root;
  }

  [[noreturn]] void fail(std::string message) { throw Failure{pos_, std::move(message)}; }

 private:
  static constexpr std::size_t kMaxDepth = 512;

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

  bool starts_with(std::string_view prefix) const {
    return text_.substr(pos_, prefix.size()) == prefix;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }

  void misc() {
    for (;;) {
      skip_space();
      if (starts_with("<!--")) {
        comment();
      } else if (starts_with("<?")) {
        processing_instruction(false);
      } else if (starts_with("<!DOCTYPE")) {
        fail("DTD not supported");
      } else {
        return;
      }
    }
  }

  std::string name() {
    if (at_end() || !is_name_start(text_[pos_])) fail("expected name");
    const std::size_t start = pos_;
    while (!at_end() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void comment() {
    pos_ += 4;
    const std::size_t end = text_.find("--", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    if (end + 2 >= text_.size() || text_[end + 2] != '>') {
      pos_ = end;
      fail("'--' inside comment");
    }
    pos_ = end + 3;
  }

  void processing_instruction(bool declaration) {
    pos_ += 2;
    const std::string target = name();
    if (!declaration && (target == "xml" || target == "XML")) fail("misplaced XML declaration");
    const std::size_t end = text_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated processing instruction");
    if (end != pos_ && !is_space(text_[pos_])) fail("malformed processing instruction");
    pos_ = end + 2;
  }

  void append_reference(std::string& out) {
    ++pos_;  // '&'
    const std::size_t end = text_.find(';', pos_);
    if (end == std::string_view::npos || end - pos_ > 12) fail("malformed entity reference");
    const std::string_view ref = text_.substr(pos_, end - pos_);
    if (ref == "amp") out += '&';
    else if (ref == "lt") out += '<';
    else if (ref == "gt") out += '>';
    else if (ref == "quot") out += '"';
    else if (ref == "apos") out += '\'';
    else if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ref[1] == 'x';
      const std::string_view digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else fail("bad digit in character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      const bool allowed = cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
                           (cp >= 0xE000 && cp <= 0xFFFD) || cp >= 0x10000;
      if (!allowed) fail("character reference to a forbidden character");
      out += utf8::encode(std::u32string(1, static_cast<char32_t>(cp)));
    } else {
      fail("unknown entity");
    }
    pos_ = end + 1;
  }

  std::string attribute_value() {
    if (at_end() || (text_[pos_] != '"' && text_[pos_] != '\'')) fail("expected quoted value");
    const char quote = text_[pos_++];
    std::string value;
    while (!at_end() && text_[pos_] != quote) {
      if (text_[pos_] == '<') fail("'<' in attribute value");
      if (text_[pos_] == '&') {
        append_reference(value);
      } else {
        value += text_[pos_++];
      }
    }
    if (at_end()) fail("unterminated attribute value");
    ++pos_;
    return value;
  }

  void check_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x20 && c != '\t' && c != '\n' && c != '\r') fail("forbidden control character");
  }

  Element element(std::size_t depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    ++pos_;  // '<'
    Element element;
    element.name = name();
    std::set<std::string> attributes;
    for (;;) {
      const std::size_t before = pos_;
      skip_space();
      if (starts_with("/>")) {
        pos_ += 2;
        return element;
      }
      if (starts_with(">")) {
        ++pos_;
        break;
      }
      if (pos_ == before) fail("expected whitespace before attribute");
      std::string attribute = name();
      skip_space();
      if (!starts_with("=")) fail("expected '='");
      ++pos_;
      skip_space();
      attribute_value();
      if (!attributes.insert(attribute).second) fail("duplicate attribute '" + attribute + "'");
    }
    // content
    for (;;) {
      if (at_end()) fail("unclosed element <" + element.name + ">");
      const char c = text_[pos_];
      if (c == '<') {
        if (starts_with("</")) {
          pos_ += 2;
          const std::string closing = name();
          if (closing != element.name)
            fail("mismatched </" + closing + "> for <" + element.name + ">");
          skip_space();
          if (!starts_with(">")) fail("expected '>'");
          ++pos_;
          return element;
        }
        if (starts_with("<!--")) {
          comment();
        } else if (starts_with("<![CDATA[")) {
          pos_ += 9;
          const std::size_t end = text_.find("]]>", pos_);
          if (end == std::string_view::npos) fail("unterminated CDATA");
          element.text.append(text_.substr(pos_, end - pos_));
          pos_ = end + 3;
        } else if (starts_with("<?")) {
          processing_instruction(false);
        } else if (starts_with("<!")) {
          fail("markup declaration inside element");
        } else {
          element.children.push_back(this->element(depth + 1));
        }
      } else if (c == '&') {
        append_reference(element.text);
      } else {
        if (starts_with("]]>")) fail("']]>' in character data");
        check_char(c);
        element.text += c;
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string locate(std::string_view text, std::size_t pos) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + " col " + std::to_string(col);
}

}  // namespace

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

ParseResult parse(std::string_view text) {
  ParseResult result;
  try {
    Parser parser(text);
    result.root = parser.document();
    result.ok = true;
  } catch (const Failure& failure) {
    result.error = locate(text, failure.pos) + ": " + failure.message;
  }
  return result;
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace boundary::xml
