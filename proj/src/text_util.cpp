#include "cocite/text_util.hpp"

#include "cocite/errors.hpp"

#include <cstdint>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace cocite {

std::size_t utf8_sequence_length(char lead)
{
    auto b = static_cast<unsigned char>(lead);
    if (b < 0x80) {
        return 1;
    }
    if ((b >> 5) == 0x6) {
        return 2;
    }
    if ((b >> 4) == 0xE) {
        return 3;
    }
    if ((b >> 3) == 0x1E) {
        return 4;
    }
    return 1;
}

bool is_valid_utf8(std::string_view text)
{
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    auto length = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

void require_utf8(std::string_view text)
{
    if (!is_valid_utf8(text)) {
        throw DataError("input text is not valid UTF-8");
    }
}

char32_t previous_code_point(std::string_view text, std::size_t pos)
{
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    auto i = static_cast<std::int32_t>(pos);
    UChar32 c = 0;
    U8_PREV(s, 0, i, c);
    return c < 0 ? 0xFFFD : static_cast<char32_t>(c);
}

bool is_word_char(char32_t cp)
{
    return cp == U'_' || u_isalnum(static_cast<UChar32>(cp));
}

std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> tokens;
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    auto length = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    std::string current;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        if (c >= 0 && u_isalnum(c)) {
            UChar32 lower = u_tolower(c);
            char buf[U8_MAX_LENGTH];
            std::int32_t n = 0;
            U8_APPEND_UNSAFE(reinterpret_cast<std::uint8_t*>(buf), n, lower);
            current.append(buf, static_cast<std::size_t>(n));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

std::size_t back_code_points(std::string_view text, std::size_t pos, std::size_t count)
{
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    auto i = static_cast<std::int32_t>(pos);
    for (std::size_t k = 0; k < count && i > 0; ++k) {
        U8_BACK_1(s, 0, i);
    }
    return static_cast<std::size_t>(i);
}

std::size_t forward_code_points(std::string_view text, std::size_t pos, std::size_t count)
{
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    auto i = static_cast<std::int32_t>(pos);
    auto length = static_cast<std::int32_t>(text.size());
    for (std::size_t k = 0; k < count && i < length; ++k) {
        U8_FWD_1(s, i, length);
    }
    return static_cast<std::size_t>(i);
}

} // namespace cocite
