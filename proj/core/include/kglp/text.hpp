#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kglp {

/// Lowercases ASCII letters and splits text into surface tokens.
///
/// Rules, applied deterministically:
///  - a maximal run of alphanumeric bytes (or bytes >= 0x80, so UTF-8
///    sequences stay intact) forms one token, lowercased;
///  - every other non-whitespace byte is a single-character token;
///  - whitespace only separates.
///
/// "UC, Irvine" -> {"uc", ",", "irvine"}. Total on any input.
std::vector<std::string> split_text(std::string_view text);

/// Joins surface tokens with single spaces. split_text(join_tokens(t)) == t
/// for any t produced by split_text.
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace kglp
