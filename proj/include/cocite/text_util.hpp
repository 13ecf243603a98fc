#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

inline bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

/// Byte length of the UTF-8 sequence introduced by `lead` (1 for stray
/// continuation bytes so that callers always make progress).
std::size_t utf8_sequence_length(char lead);

bool is_valid_utf8(std::string_view text);

/// Throws DataError when `text` is not valid UTF-8.
void require_utf8(std::string_view text);

/// Code point ending right before byte offset `pos` (pos > 0, on a boundary).
char32_t previous_code_point(std::string_view text, std::size_t pos);

/// Unicode letter, digit or underscore.
bool is_word_char(char32_t cp);

/// Lowercased runs of Unicode letters and digits, in order.
std::vector<std::string> tokenize(std::string_view text);

/// Byte offset reached by moving `count` code points backwards (clipped at 0).
std::size_t back_code_points(std::string_view text, std::size_t pos, std::size_t count);

/// Byte offset reached by moving `count` code points forwards (clipped at size).
std::size_t forward_code_points(std::string_view text, std::size_t pos, std::size_t count);

} // namespace cocite
