#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cocite {

inline constexpr std::string_view kToolVersion = "0.3.1";

/// Provenance stamped into every data file as leading `#` comment lines.
struct OutputMeta {
    std::uint64_t seed = 0;
    std::string config_digest;
    std::map<std::string, std::string> extra; ///< additional key=value notes

    std::string header() const;
};

std::string csv_escape(std::string_view field);

/// Accumulates CSV text; write() publishes it atomically.
class CsvWriter {
  public:
    CsvWriter(const OutputMeta* meta, const std::vector<std::string>& columns);

    template <typename... Fields>
    void row(const Fields&... fields)
    {
        std::size_t i = 0;
        ((append_field(format_field(fields), i++)), ...);
        text_ += '\n';
    }

    void row_strings(const std::vector<std::string>& fields);
    const std::string& text() const { return text_; }
    void write(const std::filesystem::path& path) const;

  private:
    static std::string format_field(const std::string& v) { return v; }
    static std::string format_field(std::string_view v) { return std::string(v); }
    static std::string format_field(const char* v) { return v; }
    static std::string format_field(double v);
    template <typename T>
    static std::string format_field(const T& v)
        requires std::is_integral_v<T>
    {
        return std::to_string(v);
    }
    void append_field(const std::string& field, std::size_t index);

    std::string text_;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Reads a CSV file with a header row; `#` comment lines are skipped.
class CsvTable {
  public:
    static CsvTable read(const std::filesystem::path& path);
    static CsvTable parse(std::string_view text, const std::string& origin = "<memory>");

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    bool has_column(std::string_view name) const;
    /// Throws DataError when the column is missing.
    std::size_t column(std::string_view name) const;

  private:
    std::string origin_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> parse_csv_line(std::string_view line);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Calls `fn(record, line_number)` for each non-blank line. Throws DataError
/// naming the line on malformed JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

std::int64_t parse_int(std::string_view s, std::string_view what);
double parse_double(std::string_view s, std::string_view what);

} // namespace cocite
