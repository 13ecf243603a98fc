#include "cocite/kv_config.hpp"

#include "cocite/errors.hpp"

#include <cctype>
#include <charconv>

namespace cocite {

namespace {

class Cursor {
  public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    char get()
    {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
        }
        return c;
    }
    std::size_t line() const { return line_; }

    void skip_inline_space()
    {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
            get();
        }
    }

    // Skips whitespace, newlines and comments.
    void skip_all_space()
    {
        for (;;) {
            skip_inline_space();
            if (peek() == '#') {
                skip_to_eol();
            } else if (peek() == '\n') {
                get();
            } else {
                return;
            }
        }
    }

    void skip_to_eol()
    {
        while (!done() && peek() != '\n') {
            get();
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

    std::string read_key()
    {
        std::string key;
        while (!done()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
                key.push_back(get());
            } else {
                break;
            }
        }
        if (key.empty()) {
            fail("expected a key");
        }
        return key;
    }

    std::string read_scalar()
    {
        char c = peek();
        if (c == '"') {
            return read_basic_string();
        }
        if (c == '\'') {
            return read_literal_string();
        }
        std::string bare;
        while (!done()) {
            char ch = peek();
            if (ch == ',' || ch == ']' || ch == '\n' || ch == '#' || ch == ' ' || ch == '\t' ||
                ch == '\r') {
                break;
            }
            bare.push_back(get());
        }
        if (bare.empty()) {
            fail("expected a value");
        }
        return bare;
    }

  private:
    std::string read_basic_string()
    {
        get();
        std::string out;
        for (;;) {
            if (done() || peek() == '\n') {
                fail("unterminated string");
            }
            char c = get();
            if (c == '"') {
                return out;
            }
            if (c != '\\') {
                out.push_back(c);
                continue;
            }
            if (done()) {
                fail("unterminated escape");
            }
            char e = get();
            switch (e) {
            case '\\': out.push_back('\\'); break;
            case '"': out.push_back('"'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            default: fail(std::string("unknown escape \\") + e);
            }
        }
    }

    std::string read_literal_string()
    {
        get();
        std::string out;
        for (;;) {
            if (done() || peek() == '\n') {
                fail("unterminated string");
            }
            char c = get();
            if (c == '\'') {
                return out;
            }
            out.push_back(c);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

} // namespace

const std::string& KvValue::as_string() const
{
    if (is_array || items.size() != 1) {
        throw ParseError(line, "expected a scalar value");
    }
    return items.front();
}

std::int64_t KvValue::as_int() const
{
    const auto& s = as_string();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "expected an integer, got '" + s + "'");
    }
    return v;
}

double KvValue::as_double() const
{
    const auto& s = as_string();
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ParseError(line, "expected a number, got '" + s + "'");
}

bool KvValue::as_bool() const
{
    const auto& s = as_string();
    if (s == "true" || s == "1") {
        return true;
    }
    if (s == "false" || s == "0") {
        return false;
    }
    throw ParseError(line, "expected true/false, got '" + s + "'");
}

const KvValue* KvSection::find(const std::string& key) const
{
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
}

std::vector<KvSection> parse_kv_config(std::string_view text)
{
    std::vector<KvSection> sections;
    sections.push_back(KvSection{"", 1, {}});
    Cursor cur(text);

    for (;;) {
        cur.skip_all_space();
        if (cur.done()) {
            break;
        }
        if (cur.peek() == '[') {
            cur.get();
            cur.skip_inline_space();
            std::string name = cur.read_key();
            cur.skip_inline_space();
            if (cur.peek() != ']') {
                cur.fail("expected ']' after section name");
            }
            cur.get();
            sections.push_back(KvSection{name, cur.line(), {}});
        } else {
            std::size_t line = cur.line();
            std::string key = cur.read_key();
            cur.skip_inline_space();
            if (cur.peek() != '=') {
                cur.fail("expected '=' after key '" + key + "'");
            }
            cur.get();
            cur.skip_inline_space();
            KvValue value;
            value.line = line;
            if (cur.peek() == '[') {
                cur.get();
                value.is_array = true;
                for (;;) {
                    cur.skip_all_space();
                    if (cur.peek() == ']') {
                        cur.get();
                        break;
                    }
                    if (cur.done()) {
                        cur.fail("unterminated array");
                    }
                    value.items.push_back(cur.read_scalar());
                    cur.skip_all_space();
                    if (cur.peek() == ',') {
                        cur.get();
                    } else if (cur.peek() != ']') {
                        cur.fail("expected ',' or ']' in array");
                    }
                }
            } else {
                value.items.push_back(cur.read_scalar());
            }
            auto& target = sections.back();
            if (!target.values.emplace(key, std::move(value)).second) {
                throw ParseError(line, "duplicate key '" + key + "'");
            }
        }
        cur.skip_inline_space();
        if (cur.peek() == '#') {
            cur.skip_to_eol();
        }
        if (!cur.done() && cur.peek() != '\n') {
            cur.fail("unexpected trailing characters");
        }
    }
    return sections;
}

} // namespace cocite
