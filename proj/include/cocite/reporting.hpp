#pragma once

#include "cocite/ablation.hpp"
#include "cocite/changepoint.hpp"
#include "cocite/cocitation.hpp"
#include "cocite/drift.hpp"
#include "cocite/io.hpp"
#include "cocite/loo_evaluator.hpp"
#include "cocite/snapshot.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cocite {

struct YearMethodReport {
    std::int32_t year = 0;
    Method method = Method::AA;
    MetricsReport report;
};

/// Columns year, method, n, mrr, hit1, hit5, hit10, hit20, ci_low, ci_high.
/// Throws NoReports.
std::string temporal_metrics_csv(std::span<const YearMethodReport> rows, const OutputMeta& meta);

/// Columns doc_id, target_codex, target_article, method, rank, score.
std::string predictions_csv(std::span<const PredictionRecord> records, const Snapshot& snapshot,
                            const OutputMeta& meta);

/// Reads predictions_csv output back against the snapshot it was made from.
/// context_size is recomputed from the case row.
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path, const Snapshot& snapshot);

struct YearGroupReport {
    std::int32_t year = 0;
    Method method = Method::AA;
    GroupReport group;
};

/// Columns bin, year, method, articles, predictions, hit1, hit5, hit10, hit20, mrr.
std::string difficulty_stratification_csv(std::span<const YearGroupReport> rows, const OutputMeta& meta);

/// Columns codex, year, method, articles, predictions, hit1, hit5, hit10, hit20, mrr.
std::string per_codex_csv(std::span<const YearGroupReport> rows, const OutputMeta& meta);

struct ArticlePerformance {
    ArticleIndex article = 0;
    MetricsReport report;
};

/// Per-target metrics over single-method records, in article order.
std::vector<ArticlePerformance> article_performance(std::span<const PredictionRecord> records);

/// Columns year, method, codex, article, citation_count, n, hit1, hit5, hit10, hit20, mrr.
void append_article_performance(CsvWriter& out, std::int32_t year, Method method,
                                std::span<const ArticlePerformance> rows, const Snapshot& snapshot);
CsvWriter article_performance_writer(const OutputMeta& meta);

struct JaccardEntry {
    ArticleIndex i = 0;
    ArticleIndex j = 0;
    std::uint32_t cocitations = 0;
    double jaccard = 0.0;
};

/// The `top_n` articles by degree (ties by index), in that order.
std::vector<ArticleIndex> top_degree_articles(const CoCitationMatrix& cc, std::size_t top_n);

/// J(i, j) = C[i][j] / (d[i] + d[j] - C[i][j]) for every ordered pair of
/// distinct articles in `articles`; 0 when both degrees are 0.
std::vector<JaccardEntry> cocitation_jaccard(const CoCitationMatrix& cc, std::span<const ArticleIndex> articles);

/// Columns year, codex_i, article_i, codex_j, article_j, cocitations, jaccard.
void append_jaccard(CsvWriter& out, std::int32_t year, std::span<const JaccardEntry> rows, const Snapshot& snapshot);
CsvWriter jaccard_writer(const OutputMeta& meta);

struct ChangepointRow {
    std::string variant; ///< e.g. "all_years" or "without_2009"
    Method method = Method::AA;
    std::string metric;
    ChangepointResult result;
    std::string note;
};

/// Columns variant, method, metric, penalty, breakpoints, n_segments, cost, note.
std::string changepoints_csv(std::span<const ChangepointRow> rows, const OutputMeta& meta);
/// Columns variant, method, metric, penalty, segment, first_year, last_year, mean, variance.
std::string changepoint_segments_csv(std::span<const ChangepointRow> rows, const OutputMeta& meta);

/// Columns codex, article, year_a, year_b, n_a, n_b, drift.
std::string drift_records_csv(std::span<const DriftRecord> records, const OutputMeta& meta);
/// Columns group, articles, mean_drift; the last row is the overall mean.
std::string drift_summary_csv(const DriftSummary& summary, std::int32_t year_a, std::int32_t year_b,
                              const OutputMeta& meta);

std::string join_years(std::span<const std::int32_t> years);

} // namespace cocite
