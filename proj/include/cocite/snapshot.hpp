#pragma once

#include "cocite/citation_parser.hpp"
#include "cocite/io.hpp"
#include "cocite/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cocite {

/// One cited article within a decision and how many times it was cited.
struct Citation {
    ArticleId id;
    std::uint32_t occurrences = 1;

    bool operator==(const Citation&) const = default;
};

struct DecisionRecord {
    std::string doc_id;
    std::int32_t year = 0;
    std::vector<Citation> citations; ///< sorted by id, one entry per article

    /// Collapses repeated references into per-article occurrence counts.
    static DecisionRecord from_refs(std::string doc_id, std::int32_t year,
                                    std::span<const CitationRef> refs);
    static DecisionRecord from_ids(std::string doc_id, std::int32_t year,
                                   std::span<const ArticleId> ids);
};

/// Compressed sparse row binary matrix; column indices within a row are
/// strictly increasing.
class SparseBinaryMatrix {
  public:
    SparseBinaryMatrix() = default;
    SparseBinaryMatrix(std::size_t cols, std::vector<std::size_t> row_ptr,
                       std::vector<ArticleIndex> col_idx);

    std::size_t rows() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return col_idx_.size(); }

    std::span<const ArticleIndex> row(std::size_t r) const
    {
        return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    /// Rows [first, last) as a new matrix with the same column space.
    SparseBinaryMatrix slice_rows(std::size_t first, std::size_t last) const;

    /// Per-column nonzero counts.
    std::vector<std::uint32_t> column_sums() const;

    bool operator==(const SparseBinaryMatrix&) const = default;

  private:
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<ArticleIndex> col_idx_;
};

struct SnapshotFilters {
    std::uint64_t min_citations = 50;
    std::size_t vocab_cap = 5000;
    std::size_t case_min = 3;
    std::size_t case_max = 200;
};

/// One evaluation year: article vocabulary, retained cases and their
/// binary incidence matrix (cases x articles).
struct Snapshot {
    std::int32_t year = 0;
    std::vector<ArticleId> articles;            ///< sorted
    std::vector<std::string> cases;             ///< sorted doc ids
    SparseBinaryMatrix incidence;               ///< |cases| x |articles|
    std::vector<std::uint64_t> citation_counts; ///< raw yearly totals per article

    std::optional<ArticleIndex> index_of(const ArticleId& id) const;
    std::optional<CaseIndex> case_index_of(std::string_view doc_id) const;
    std::span<const ArticleIndex> case_articles(CaseIndex c) const { return incidence.row(c); }

    bool operator==(const Snapshot&) const = default;
};

/// Builds the snapshot for `year`. Article counts are taken over every
/// decision before case filtering; cases are then filtered once against
/// the fixed vocabulary. Throws EmptySnapshot when no case survives.
Snapshot build_snapshot(std::span<const DecisionRecord> decisions, std::int32_t year,
                        const SnapshotFilters& filters = {});

std::map<std::int32_t, std::vector<DecisionRecord>>
partition_by_year(std::vector<DecisionRecord> corpus);

/// Writes articles.csv, cases.csv and incidence.csv into `dir`.
void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& dir,
                   const OutputMeta& meta);
Snapshot load_snapshot(const std::filesystem::path& dir, std::int32_t year);

} // namespace cocite
