#include "cocite/reporting.hpp"

#include "cocite/errors.hpp"

#include <algorithm>
#include <map>

namespace cocite {

namespace {

const std::vector<std::string> kMetricColumns{"hit1", "hit5", "hit10", "hit20", "mrr"};

std::vector<std::string> with_metrics(std::vector<std::string> lead)
{
    lead.insert(lead.end(), kMetricColumns.begin(), kMetricColumns.end());
    return lead;
}

} // namespace

std::string join_years(std::span<const std::int32_t> years)
{
    std::string out;
    for (auto y : years) {
        if (!out.empty()) {
            out += ';';
        }
        out += std::to_string(y);
    }
    return out;
}

std::string temporal_metrics_csv(std::span<const YearMethodReport> rows, const OutputMeta& meta)
{
    if (rows.empty()) {
        throw NoReports("no metrics reports to emit");
    }
    CsvWriter out(&meta, {"year", "method", "n", "mrr", "hit1", "hit5", "hit10", "hit20", "ci_low", "ci_high"});
    for (const auto& r : rows) {
        const auto& m = r.report;
        out.row(r.year, method_name(r.method), m.n_predictions, m.mrr, m.hit_at[0], m.hit_at[1], m.hit_at[2],
                m.hit_at[3], m.ci_low, m.ci_high);
    }
    return out.text();
}

std::string predictions_csv(std::span<const PredictionRecord> records, const Snapshot& snapshot,
                            const OutputMeta& meta)
{
    CsvWriter out(&meta, {"doc_id", "target_codex", "target_article", "method", "rank", "score"});
    for (const auto& r : records) {
        const auto& t = snapshot.articles[r.target];
        out.row(snapshot.cases[r.case_index], t.codex, t.article, method_name(r.method), r.rank, r.target_score);
    }
    return out.text();
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path, const Snapshot& snapshot)
{
    const auto table = CsvTable::read(path);
    const auto c_doc = table.column("doc_id");
    const auto c_codex = table.column("target_codex");
    const auto c_article = table.column("target_article");
    const auto c_method = table.column("method");
    const auto c_rank = table.column("rank");
    const auto c_score = table.column("score");
    std::vector<PredictionRecord> out;
    out.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        auto c = snapshot.case_index_of(row[c_doc]);
        if (!c) {
            throw DataError(path.string() + ": case '" + row[c_doc] + "' is not in the " +
                            std::to_string(snapshot.year) + " snapshot");
        }
        ArticleId id{row[c_codex], static_cast<std::int32_t>(parse_int(row[c_article], "target_article"))};
        auto t = snapshot.index_of(id);
        if (!t) {
            throw DataError(path.string() + ": article " + id.str() + " is not in the snapshot vocabulary");
        }
        auto m = parse_method(row[c_method]);
        if (!m) {
            throw DataError(path.string() + ": unknown method '" + row[c_method] + "'");
        }
        PredictionRecord r;
        r.case_index = *c;
        r.target = *t;
        r.context_size = static_cast<std::uint32_t>(snapshot.case_articles(*c).size() - 1);
        r.method = *m;
        r.rank = parse_double(row[c_rank], "rank");
        r.target_score = parse_double(row[c_score], "score");
        out.push_back(r);
    }
    return out;
}

namespace {

std::string group_csv(std::string_view label_column, std::span<const YearGroupReport> rows, const OutputMeta& meta)
{
    CsvWriter out(&meta, with_metrics({std::string(label_column), "year", "method", "articles", "predictions"}));
    for (const auto& r : rows) {
        const auto& m = r.group.report;
        out.row(r.group.label, r.year, method_name(r.method), r.group.articles, m.n_predictions, m.hit_at[0],
                m.hit_at[1], m.hit_at[2], m.hit_at[3], m.mrr);
    }
    return out.text();
}

} // namespace

std::string difficulty_stratification_csv(std::span<const YearGroupReport> rows, const OutputMeta& meta)
{
    return group_csv("bin", rows, meta);
}

std::string per_codex_csv(std::span<const YearGroupReport> rows, const OutputMeta& meta)
{
    return group_csv("codex", rows, meta);
}

std::vector<ArticlePerformance> article_performance(std::span<const PredictionRecord> records)
{
    std::map<ArticleIndex, std::vector<double>> ranks;
    for (const auto& r : records) {
        ranks[r.target].push_back(r.rank);
    }
    std::vector<ArticlePerformance> out;
    for (const auto& [a, rs] : ranks) {
        out.push_back({a, compute_metrics_from_ranks(rs)});
    }
    return out;
}

CsvWriter article_performance_writer(const OutputMeta& meta)
{
    return CsvWriter(&meta, with_metrics({"year", "method", "codex", "article", "citation_count", "n"}));
}

void append_article_performance(CsvWriter& out, std::int32_t year, Method method,
                                std::span<const ArticlePerformance> rows, const Snapshot& snapshot)
{
    for (const auto& r : rows) {
        const auto& id = snapshot.articles[r.article];
        const auto& m = r.report;
        out.row(year, method_name(method), id.codex, id.article, snapshot.citation_counts[r.article],
                m.n_predictions, m.hit_at[0], m.hit_at[1], m.hit_at[2], m.hit_at[3], m.mrr);
    }
}

std::vector<ArticleIndex> top_degree_articles(const CoCitationMatrix& cc, std::size_t top_n)
{
    std::vector<ArticleIndex> order(cc.size());
    for (ArticleIndex i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    const auto& d = cc.degrees();
    std::stable_sort(order.begin(), order.end(), [&](ArticleIndex a, ArticleIndex b) { return d[a] > d[b]; });
    order.resize(std::min(top_n, order.size()));
    return order;
}

std::vector<JaccardEntry> cocitation_jaccard(const CoCitationMatrix& cc, std::span<const ArticleIndex> articles)
{
    const auto& d = cc.degrees();
    std::vector<JaccardEntry> out;
    for (auto i : articles) {
        for (auto j : articles) {
            if (i == j) {
                continue;
            }
            const auto c = cc.at(i, j);
            const double uni = static_cast<double>(d[i]) + static_cast<double>(d[j]) - static_cast<double>(c);
            out.push_back({i, j, c, uni > 0.0 ? static_cast<double>(c) / uni : 0.0});
        }
    }
    return out;
}

CsvWriter jaccard_writer(const OutputMeta& meta)
{
    return CsvWriter(&meta, {"year", "codex_i", "article_i", "codex_j", "article_j", "cocitations", "jaccard"});
}

void append_jaccard(CsvWriter& out, std::int32_t year, std::span<const JaccardEntry> rows, const Snapshot& snapshot)
{
    for (const auto& e : rows) {
        const auto& a = snapshot.articles[e.i];
        const auto& b = snapshot.articles[e.j];
        out.row(year, a.codex, a.article, b.codex, b.article, e.cocitations, e.jaccard);
    }
}

std::string changepoints_csv(std::span<const ChangepointRow> rows, const OutputMeta& meta)
{
    CsvWriter out(&meta, {"variant", "method", "metric", "penalty", "breakpoints", "n_segments", "cost", "note"});
    for (const auto& r : rows) {
        out.row(r.variant, method_name(r.method), r.metric, r.result.penalty, join_years(r.result.breakpoints),
                r.result.segments.size(), r.result.cost, r.note);
    }
    return out.text();
}

std::string changepoint_segments_csv(std::span<const ChangepointRow> rows, const OutputMeta& meta)
{
    CsvWriter out(&meta, {"variant", "method", "metric", "penalty", "segment", "first_year", "last_year", "mean",
                          "variance"});
    for (const auto& r : rows) {
        for (std::size_t s = 0; s < r.result.segments.size(); ++s) {
            const auto& seg = r.result.segments[s];
            out.row(r.variant, method_name(r.method), r.metric, r.result.penalty, s, seg.first_year,
                    seg.last_year, seg.mean, seg.variance);
        }
    }
    return out.text();
}

std::string drift_records_csv(std::span<const DriftRecord> records, const OutputMeta& meta)
{
    CsvWriter out(&meta, {"codex", "article", "year_a", "year_b", "n_a", "n_b", "drift"});
    for (const auto& r : records) {
        out.row(r.article.codex, r.article.article, r.year_a, r.year_b, r.n_a, r.n_b, r.drift);
    }
    return out.text();
}

std::string drift_summary_csv(const DriftSummary& summary, std::int32_t year_a, std::int32_t year_b,
                              const OutputMeta& meta)
{
    CsvWriter out(&meta, {"group", "year_a", "year_b", "articles", "mean_drift"});
    for (const auto& g : summary.groups) {
        out.row(g.label, year_a, year_b, g.articles, g.mean_drift);
    }
    out.row("ALL", year_a, year_b, summary.articles, summary.mean_drift);
    return out.text();
}

} // namespace cocite
