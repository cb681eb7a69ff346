#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace boundary::utf8 {

/// Decodes to Unicode scalar values. Ill-formed sequences become U+FFFD, one
/// per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

/// Re-encodes `text` with every ill-formed byte replaced by U+FFFD.
std::string sanitize(std::string_view text);

/// Byte offsets where each scalar value starts, followed by text.size().
/// Ill-formed bytes count as one unit each.
std::vector<std::size_t> boundaries(std::string_view text);

std::size_t length(std::string_view text);

}  // namespace boundary::utf8
