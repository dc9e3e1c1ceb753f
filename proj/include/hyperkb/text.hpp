#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hyperkb {

/// Canonical form used for every keyword and parameter-name comparison:
/// surrounding whitespace trimmed, inner whitespace runs collapsed to a single
/// space, ASCII letters lowercased. Non-ASCII bytes pass through unchanged.
std::string canonicalize(std::string_view text);

/// Number of UTF-8 code points in `text` (continuation bytes are not counted).
std::size_t utf8_length(std::string_view text);

/// Length of the canonical form, in code points. Used for the 2-character rule.
inline std::size_t canonical_length(std::string_view text) {
    return utf8_length(canonicalize(text));
}

}  // namespace hyperkb
