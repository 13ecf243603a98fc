#pragma once

#include "cocite/types.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cocite {

/// Half-open byte range [start, end) into a UTF-8 source text.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const Span&) const = default;
    std::size_t size() const { return end - start; }
};

struct CodexPatterns {
    std::string id;
    std::string name;
    std::vector<std::string> abbreviations;
    std::vector<std::string> article_markers;
};

/// Compiled per-codex citation patterns. Immutable once loaded; copies share
/// the compiled state and may be used from any number of threads.
///
/// A codex-article citation is recognised as
///
///     <article marker> <number list> <abbreviation>
///
/// where the number list is one or more article numbers or ranges
/// ("5", "10-12", "16, 203 та 215") and the abbreviation must end at a word
/// boundary. Both marker and abbreviation patterns are ICU regular
/// expressions (case-insensitive, Unicode-aware).
class CodexPatternTable {
  public:
    CodexPatternTable();

    /// Parses a `[codex]` block config. Throws ParseError, PatternError,
    /// DuplicateIdError; nothing is returned unless every pattern compiles.
    static CodexPatternTable load(std::string_view config_text);
    static CodexPatternTable from_entries(std::vector<CodexPatterns> entries);

    /// Entries sorted by codex id.
    const std::vector<CodexPatterns>& entries() const;
    std::size_t size() const { return entries().size(); }
    bool contains(std::string_view codex_id) const;
    const CodexPatterns* find(std::string_view codex_id) const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    explicit CodexPatternTable(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

inline CodexPatternTable load_pattern_table(std::string_view config_text)
{
    return CodexPatternTable::load(config_text);
}

/// Pattern config for the thirteen major Ukrainian codices.
std::string_view ukrainian_pattern_config();

struct CitationRef {
    std::string codex_id;
    std::int32_t article = 0;
    Span span;

    bool operator==(const CitationRef&) const = default;
    ArticleId id() const { return {codex_id, article}; }
};

enum class RecordKind : std::uint8_t { codex_article, case_reference, constitutional, law_by_number };

std::string_view record_kind_name(RecordKind kind);

struct RawExtractionRecord {
    RecordKind kind = RecordKind::codex_article;
    std::string payload;
    Span span;
};

/// Largest accepted (end - start) of an article range.
inline constexpr std::int32_t kMaxRangeSpan = 50;

/// [start..end] when start <= end and the span is at most kMaxRangeSpan,
/// otherwise just [start].
std::vector<std::int32_t> expand_range(std::int32_t start, std::int32_t end);

/// All records found in `text`: codex-article citations from the table plus
/// constitutional, law-by-number and case references from built-in patterns.
/// Sorted by span start.
std::vector<RawExtractionRecord> extract_raw(std::string_view text, const CodexPatternTable& table);

/// Well-formed codex-article citations in document order, ranges expanded.
std::vector<CitationRef> extract_citations(std::string_view text, const CodexPatternTable& table);

/// Replaces every citation span with a single space. Repeats until no
/// citation remains so that extraction on the result is always empty.
std::string strip_citations(std::string_view text, const CodexPatternTable& table);

} // namespace cocite
