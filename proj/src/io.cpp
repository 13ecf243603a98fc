#include "cocite/io.hpp"

#include "cocite/errors.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cocite {

namespace fs = std::filesystem;

std::string OutputMeta::header() const
{
    std::string out = "# cocite " + std::string(kToolVersion) + " seed=" + std::to_string(seed) +
                      " config=" + (config_digest.empty() ? "none" : config_digest) + "\n";
    for (const auto& [k, v] : extra) {
        out += "# " + k + "=" + v + "\n";
    }
    return out;
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const OutputMeta* meta, const std::vector<std::string>& columns)
{
    if (meta) {
        text_ = meta->header();
    }
    row_strings(columns);
}

std::string CsvWriter::format_field(double v) { return format_double(v); }

void CsvWriter::append_field(const std::string& field, std::size_t index)
{
    if (index) {
        text_ += ',';
    }
    text_ += csv_escape(field);
}

void CsvWriter::row_strings(const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        append_field(fields[i], i);
    }
    text_ += '\n';
}

void CsvWriter::write(const fs::path& path) const { write_file_atomic(path, text_); }

std::vector<std::string> parse_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

CsvTable CsvTable::parse(std::string_view text, const std::string& origin)
{
    CsvTable table;
    table.origin_ = origin;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty() || line == "\r" || line.front() == '#') {
            continue;
        }
        auto fields = parse_csv_line(line);
        if (!have_header) {
            table.columns_ = std::move(fields);
            have_header = true;
        } else {
            if (fields.size() != table.columns_.size()) {
                throw DataError(origin + ": row has " + std::to_string(fields.size()) +
                                " fields, header has " + std::to_string(table.columns_.size()));
            }
            table.rows_.push_back(std::move(fields));
        }
    }
    if (!have_header) {
        throw DataError(origin + ": missing CSV header");
    }
    return table;
}

CsvTable CsvTable::read(const fs::path& path) { return parse(read_file(path), path.string()); }

bool CsvTable::has_column(std::string_view name) const
{
    for (const auto& c : columns_) {
        if (c == name) {
            return true;
        }
    }
    return false;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) {
            return i;
        }
    }
    throw DataError(origin_ + ": missing column '" + std::string(name) + "'");
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw DataError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

void for_each_jsonl(const fs::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        try {
            fn(record, line_no);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

std::int64_t parse_int(std::string_view s, std::string_view what)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("invalid integer for " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s, std::string_view what)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError("invalid number for " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

} // namespace cocite
