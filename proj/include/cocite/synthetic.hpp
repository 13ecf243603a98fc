#pragma once

#include "cocite/snapshot.hpp"
#include "cocite/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cocite {

/// Template-mixture citation model. Each case draws one template (a small
/// set of articles that tend to be cited together) and cites a subset of it.
/// In year index y every cited article is replaced by a popularity-weighted
/// random article with probability 1 - (1 - epsilon)^y. Cases in the second
/// half of a year draw a `shift` fraction of templates from a redrawn set.
struct SyntheticParams {
    std::size_t articles = 400;
    std::size_t codices = 4; ///< taken from the built-in Ukrainian table
    std::size_t templates = 80;
    std::size_t template_min = 6;
    std::size_t template_max = 12;
    std::size_t cases_per_year = 2000;
    std::size_t case_min = 3;
    std::size_t case_max = 8;
    double zipf = 1.0;          ///< article popularity exponent
    double home_codex = 0.85;   ///< share of template articles from its codex
    double epsilon = 0.0;
    double shift = 0.0;
    std::int32_t first_year = 2015;
    std::size_t years = 1;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    SyntheticParams params;
    std::vector<ArticleId> articles;                  ///< sorted
    std::vector<std::vector<ArticleIndex>> templates; ///< base then redrawn set
    std::vector<DecisionRecord> decisions;            ///< by year, then doc id
    std::vector<std::uint32_t> case_template;         ///< parallel to decisions
};

/// Codex ids used by the generator, in table order.
const std::vector<std::string>& synthetic_codices();

SyntheticCorpus generate_corpus(const SyntheticParams& params);

/// doc_id -> decision text. Every citation is spelled with the built-in
/// codex abbreviations so that extraction recovers the decision records.
std::unordered_map<std::string, std::string> render_texts(const SyntheticCorpus& corpus);

/// One text per article, built from the topic words of the templates that
/// contain it.
std::vector<std::pair<ArticleId, std::string>> render_article_texts(const SyntheticCorpus& corpus);

/// Snippet embeddings with planted geometry: each article has a random base
/// direction; year_b vectors are rotated by the angle assigned to its codex
/// (radians, default 0). Output is `{"codex", "article", "year", "vector"}`
/// JSONL with `per_year` lines per (article, year).
std::string synthetic_embeddings_jsonl(const std::vector<ArticleId>& articles, std::int32_t year_a,
                                       std::int32_t year_b, const std::map<std::string, double>& angle,
                                       std::size_t per_year = 8, std::size_t dim = 16,
                                       double noise = 0.05, std::uint64_t seed = 0);

} // namespace cocite
