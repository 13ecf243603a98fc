#pragma once

#include "cocite/citation_parser.hpp"
#include "cocite/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cocite {

/// A citation of an article inside one decision text.
struct CitationOccurrence {
    std::string doc_id;
    Span span;
    auto operator<=>(const CitationOccurrence& o) const
    {
        if (auto c = doc_id <=> o.doc_id; c != 0) {
            return c;
        }
        if (auto c = span.start <=> o.span.start; c != 0) {
            return c;
        }
        return span.end <=> o.span.end;
    }
    bool operator==(const CitationOccurrence&) const = default;
};

struct Snippet {
    std::string doc_id;
    std::string text;
};

struct SnippetSet {
    ArticleId article;
    std::int32_t year = 0;
    std::vector<Snippet> snippets;
};

inline constexpr std::size_t kSnippetsPerYear = 50;
inline constexpr std::size_t kSnippetWindow = 500;

/// Draws up to `n` occurrences uniformly without replacement and cuts
/// `window` code points on both sides of each span, clipped to the text.
/// The order of `occurrences` does not matter. Throws NoOccurrences.
SnippetSet sample_snippets(const std::unordered_map<std::string, std::string>& corpus_texts,
                           std::span<const CitationOccurrence> occurrences, const ArticleId& article,
                           std::int32_t year, std::size_t n = kSnippetsPerYear,
                           std::size_t window = kSnippetWindow, std::uint64_t seed = 0);

/// Appends one `{"codex", "article", "year", "doc_id", "text"}` line per snippet.
std::string snippets_jsonl(std::span<const SnippetSet> sets);

struct EmbeddingBatch {
    ArticleId article;
    std::int32_t year = 0;
    std::vector<std::vector<double>> vectors;
};

using BatchKey = std::pair<ArticleId, std::int32_t>;

/// Reads `{"codex", "article", "year", "vector"}` JSONL grouped by
/// (article, year). Throws DataError on non-finite values, vectors shorter
/// than 2, or dimensions that differ across the file.
std::map<BatchKey, EmbeddingBatch> load_embeddings(const std::filesystem::path& path);

/// Mean vector. Throws EmptyBatch, DimensionMismatch, ZeroCentroid.
std::vector<double> centroid(const EmbeddingBatch& batch);

struct DriftRecord {
    ArticleId article;
    std::int32_t year_a = 0;
    std::int32_t year_b = 0;
    double drift = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;

    bool operator==(const DriftRecord&) const = default;
};

/// 1 - cos(centroid_a, centroid_b). Throws DimensionMismatch, ZeroCentroid.
DriftRecord drift(const EmbeddingBatch& batch_a, const EmbeddingBatch& batch_b);

/// Drift for every article with batches in both years, optionally limited to
/// `articles`. Parallel over articles; output sorted by article.
std::vector<DriftRecord> drift_between(const std::map<BatchKey, EmbeddingBatch>& batches,
                                       std::int32_t year_a, std::int32_t year_b,
                                       const std::vector<ArticleId>* articles = nullptr,
                                       unsigned jobs = 1);

struct DriftGroup {
    std::string label;
    std::size_t articles = 0;
    double mean_drift = 0.0;
};

struct DriftSummary {
    std::vector<DriftGroup> groups; ///< sorted by label
    std::size_t articles = 0;
    double mean_drift = 0.0;
};

/// Mean drift per group and overall. Records whose article is missing from
/// `group_of` are grouped by codex id. Throws EmptyInput.
DriftSummary aggregate_drift(std::span<const DriftRecord> records,
                             const std::map<ArticleId, std::string>& group_of = {});

} // namespace cocite
