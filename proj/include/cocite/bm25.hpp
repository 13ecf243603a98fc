#pragma once

#include "cocite/ablation.hpp"
#include "cocite/citation_parser.hpp"
#include "cocite/loo_evaluator.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cocite {

/// Statutory article texts keyed by article.
class ArticleTextStore {
  public:
    /// Throws DataError for empty texts.
    void add(ArticleId id, std::string text);
    /// Reads `{"codex", "article", "text"}` JSONL.
    static ArticleTextStore load_jsonl(const std::filesystem::path& path);

    const std::map<ArticleId, std::string>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(const ArticleId& id) const { return entries_.count(id) != 0; }

  private:
    std::map<ArticleId, std::string> entries_;
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

struct Posting {
    std::uint32_t doc = 0; ///< index into Bm25Index::docs()
    std::uint32_t term_freq = 0;
};

/// Inverted index over article texts using the tokenizer from text_util.
class Bm25Index {
  public:
    /// Throws EmptyStore.
    static Bm25Index build(const ArticleTextStore& store, const Bm25Params& params = {});

    const std::vector<ArticleId>& docs() const { return docs_; }
    std::size_t doc_count() const { return docs_.size(); }
    std::uint32_t doc_len(std::size_t doc) const { return doc_len_[doc]; }
    double avg_len() const { return avg_len_; }
    const Bm25Params& params() const { return params_; }

    std::uint32_t doc_freq(const std::string& token) const;
    std::span<const Posting> postings(const std::string& token) const;

    /// ln(1 + (N - df + 0.5) / (df + 0.5)).
    double idf(const std::string& token) const;

    /// Score of every document; each query token occurrence contributes.
    std::vector<double> score(std::span<const std::string> query_tokens) const;
    std::vector<double> score(std::string_view query_text) const;

    std::optional<std::size_t> doc_index(const ArticleId& id) const;

  private:
    Bm25Params params_;
    std::vector<ArticleId> docs_;
    std::vector<std::uint32_t> doc_len_;
    double avg_len_ = 0.0;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

struct RankedArticle {
    ArticleId id;
    double score = 0.0;
    double rank = 1.0; ///< tie-averaged rank among the candidates
};

/// Candidates ranked by BM25 score, best first (ties by ArticleId).
/// Candidates missing from the index score 0.
std::vector<RankedArticle> bm25_rank(std::string_view query_text, const Bm25Index& index,
                                     std::span<const ArticleId> candidates);

struct Bm25EvalOptions {
    std::size_t sample_n = 200000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    Bm25Params params;
    BootstrapOptions bootstrap;
};

struct Bm25Result {
    std::vector<ArticleId> intersection;   ///< vocabulary ∩ text store
    std::vector<PredictionRecord> bm25;    ///< method = BM25
    std::vector<PredictionRecord> aa;      ///< AA on the same (case, target) keys
    MetricsReport bm25_report;
    MetricsReport aa_report;
};

/// For each sampled case with text: query = masked case text, targets = its
/// cited articles in the intersection, candidates = the intersection minus
/// the case's other cited articles. AA is restricted to the same targets and
/// candidate universe. Throws NoTextOverlap.
Bm25Result evaluate_bm25(const Snapshot& snapshot, const ArticleTextStore& store,
                         const std::unordered_map<std::string, std::string>& corpus_texts,
                         const CodexPatternTable& table, const Bm25EvalOptions& options);

} // namespace cocite
