#include "cocite/snapshot.hpp"

#include "cocite/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace cocite {

namespace fs = std::filesystem;

DecisionRecord DecisionRecord::from_refs(std::string doc_id, std::int32_t year,
                                         std::span<const CitationRef> refs)
{
    std::vector<ArticleId> ids;
    ids.reserve(refs.size());
    for (const auto& r : refs) {
        ids.push_back(r.id());
    }
    return from_ids(std::move(doc_id), year, ids);
}

DecisionRecord DecisionRecord::from_ids(std::string doc_id, std::int32_t year,
                                        std::span<const ArticleId> ids)
{
    std::vector<ArticleId> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    DecisionRecord rec{std::move(doc_id), year, {}};
    for (auto& id : sorted) {
        if (!rec.citations.empty() && rec.citations.back().id == id) {
            ++rec.citations.back().occurrences;
        } else {
            rec.citations.push_back({std::move(id), 1});
        }
    }
    return rec;
}

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t cols, std::vector<std::size_t> row_ptr,
                                       std::vector<ArticleIndex> col_idx)
    : cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx))
{
    if (row_ptr_.empty() || row_ptr_.front() != 0 || row_ptr_.back() != col_idx_.size()) {
        throw InvariantError("malformed CSR row pointer");
    }
    for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
        if (row_ptr_[r] > row_ptr_[r + 1]) {
            throw InvariantError("CSR row pointer decreases");
        }
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            if (col_idx_[k] >= cols_ || (k > row_ptr_[r] && col_idx_[k] <= col_idx_[k - 1])) {
                throw InvariantError("CSR column indices out of range or unsorted");
            }
        }
    }
}

SparseBinaryMatrix SparseBinaryMatrix::slice_rows(std::size_t first, std::size_t last) const
{
    std::vector<std::size_t> ptr;
    ptr.reserve(last - first + 1);
    std::size_t base = row_ptr_[first];
    for (std::size_t r = first; r <= last; ++r) {
        ptr.push_back(row_ptr_[r] - base);
    }
    std::vector<ArticleIndex> idx(col_idx_.begin() + static_cast<std::ptrdiff_t>(base),
                                  col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[last]));
    return SparseBinaryMatrix(cols_, std::move(ptr), std::move(idx));
}

std::vector<std::uint32_t> SparseBinaryMatrix::column_sums() const
{
    std::vector<std::uint32_t> sums(cols_, 0);
    for (auto c : col_idx_) {
        ++sums[c];
    }
    return sums;
}

std::optional<ArticleIndex> Snapshot::index_of(const ArticleId& id) const
{
    auto it = std::lower_bound(articles.begin(), articles.end(), id);
    if (it == articles.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<ArticleIndex>(it - articles.begin());
}

std::optional<CaseIndex> Snapshot::case_index_of(std::string_view doc_id) const
{
    auto it = std::lower_bound(cases.begin(), cases.end(), doc_id);
    if (it == cases.end() || *it != doc_id) {
        return std::nullopt;
    }
    return static_cast<CaseIndex>(it - cases.begin());
}

Snapshot build_snapshot(std::span<const DecisionRecord> decisions, std::int32_t year,
                        const SnapshotFilters& filters)
{
    std::unordered_map<ArticleId, std::uint64_t, ArticleIdHash> counts;
    for (const auto& d : decisions) {
        if (d.year != year) {
            throw DataError("decision " + d.doc_id + " has year " + std::to_string(d.year) +
                            ", expected " + std::to_string(year));
        }
        for (const auto& c : d.citations) {
            counts[c.id] += c.occurrences;
        }
    }

    std::vector<std::pair<ArticleId, std::uint64_t>> frequent;
    for (const auto& [id, n] : counts) {
        if (n >= filters.min_citations) {
            frequent.emplace_back(id, n);
        }
    }
    std::sort(frequent.begin(), frequent.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (frequent.size() > filters.vocab_cap) {
        frequent.resize(filters.vocab_cap);
    }
    std::sort(frequent.begin(), frequent.end());

    Snapshot snap;
    snap.year = year;
    for (auto& [id, n] : frequent) {
        snap.articles.push_back(id);
        snap.citation_counts.push_back(n);
    }

    struct Row {
        const std::string* doc_id;
        std::vector<ArticleIndex> cols;
    };
    std::vector<Row> rows;
    for (const auto& d : decisions) {
        std::vector<ArticleIndex> cols;
        for (const auto& c : d.citations) {
            if (auto idx = snap.index_of(c.id)) {
                cols.push_back(*idx);
            }
        }
        if (cols.size() >= filters.case_min && cols.size() <= filters.case_max) {
            std::sort(cols.begin(), cols.end());
            cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
            rows.push_back({&d.doc_id, std::move(cols)});
        }
    }
    if (rows.empty()) {
        throw EmptySnapshot("no case survives the filters for year " + std::to_string(year));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return *a.doc_id < *b.doc_id; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (*rows[i].doc_id == *rows[i - 1].doc_id) {
            throw DataError("duplicate doc_id " + *rows[i].doc_id + " in year " + std::to_string(year));
        }
    }

    std::vector<std::size_t> ptr{0};
    std::vector<ArticleIndex> idx;
    for (auto& r : rows) {
        snap.cases.push_back(*r.doc_id);
        idx.insert(idx.end(), r.cols.begin(), r.cols.end());
        ptr.push_back(idx.size());
    }
    snap.incidence = SparseBinaryMatrix(snap.articles.size(), std::move(ptr), std::move(idx));
    return snap;
}

std::map<std::int32_t, std::vector<DecisionRecord>> partition_by_year(std::vector<DecisionRecord> corpus)
{
    std::map<std::int32_t, std::vector<DecisionRecord>> parts;
    for (auto& d : corpus) {
        auto year = d.year;
        parts[year].push_back(std::move(d));
    }
    return parts;
}

void save_snapshot(const Snapshot& snapshot, const fs::path& dir, const OutputMeta& meta)
{
    CsvWriter articles(&meta, {"codex", "article", "citation_count"});
    for (std::size_t i = 0; i < snapshot.articles.size(); ++i) {
        articles.row(snapshot.articles[i].codex, snapshot.articles[i].article,
                     snapshot.citation_counts[i]);
    }
    CsvWriter cases(&meta, {"doc_id"});
    for (const auto& c : snapshot.cases) {
        cases.row(c);
    }
    CsvWriter incidence(&meta, {"case_index", "article_index"});
    for (std::size_t r = 0; r < snapshot.incidence.rows(); ++r) {
        for (auto col : snapshot.incidence.row(r)) {
            incidence.row(r, col);
        }
    }
    articles.write(dir / "articles.csv");
    cases.write(dir / "cases.csv");
    incidence.write(dir / "incidence.csv");
}

Snapshot load_snapshot(const fs::path& dir, std::int32_t year)
{
    Snapshot snap;
    snap.year = year;

    auto articles = CsvTable::read(dir / "articles.csv");
    auto ci = articles.column("codex");
    auto ai = articles.column("article");
    auto ni = articles.column("citation_count");
    for (const auto& row : articles.rows()) {
        snap.articles.push_back({row[ci], static_cast<std::int32_t>(parse_int(row[ai], "article"))});
        snap.citation_counts.push_back(static_cast<std::uint64_t>(parse_int(row[ni], "citation_count")));
    }
    if (!std::is_sorted(snap.articles.begin(), snap.articles.end())) {
        throw DataError(dir.string() + ": articles.csv is not sorted");
    }

    auto cases = CsvTable::read(dir / "cases.csv");
    auto di = cases.column("doc_id");
    for (const auto& row : cases.rows()) {
        snap.cases.push_back(row[di]);
    }

    auto incidence = CsvTable::read(dir / "incidence.csv");
    auto ri = incidence.column("case_index");
    auto cj = incidence.column("article_index");
    std::vector<std::vector<ArticleIndex>> rows(snap.cases.size());
    for (const auto& row : incidence.rows()) {
        auto r = parse_int(row[ri], "case_index");
        auto c = parse_int(row[cj], "article_index");
        if (r < 0 || static_cast<std::size_t>(r) >= rows.size() || c < 0 ||
            static_cast<std::size_t>(c) >= snap.articles.size()) {
            throw DataError(dir.string() + ": incidence entry out of range");
        }
        rows[static_cast<std::size_t>(r)].push_back(static_cast<ArticleIndex>(c));
    }
    std::vector<std::size_t> ptr{0};
    std::vector<ArticleIndex> idx;
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        idx.insert(idx.end(), r.begin(), r.end());
        ptr.push_back(idx.size());
    }
    try {
        snap.incidence = SparseBinaryMatrix(snap.articles.size(), std::move(ptr), std::move(idx));
    } catch (const InvariantError& e) {
        throw DataError(dir.string() + ": " + e.what());
    }
    return snap;
}

} // namespace cocite
