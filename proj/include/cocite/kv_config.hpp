#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

/// One value in a key/value config: either a scalar or a flat array.
/// Scalars keep their source text; typed accessors convert on demand.
struct KvValue {
    std::vector<std::string> items;
    bool is_array = false;
    std::size_t line = 0;

    const std::string& as_string() const;
    std::int64_t as_int() const;
    double as_double() const;
    bool as_bool() const;
    const std::vector<std::string>& as_list() const { return items; }
};

struct KvSection {
    std::string name; ///< empty for keys that precede any header
    std::size_t line = 0;
    std::map<std::string, KvValue> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    const KvValue* find(const std::string& key) const;
};

/// Parses a small TOML subset:
///
///     # comment
///     top_level = 1
///     [codex]
///     id = "civ"
///     abbrev = ['ЦК', "Цивільного\\s+кодексу"]
///
/// Basic ("...") strings understand \\ \" \n \t escapes, literal ('...')
/// strings are taken verbatim. Arrays may span lines. Repeated headers
/// produce repeated sections, in file order. Throws ParseError.
std::vector<KvSection> parse_kv_config(std::string_view text);

} // namespace cocite
