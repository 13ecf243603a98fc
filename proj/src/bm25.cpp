#include "cocite/bm25.hpp"

#include "cocite/errors.hpp"
#include "cocite/io.hpp"
#include "cocite/parallel.hpp"
#include "cocite/text_util.hpp"

#include <algorithm>
#include <cmath>

namespace cocite {

void ArticleTextStore::add(ArticleId id, std::string text)
{
    if (text.empty()) {
        throw DataError("empty article text for " + id.str());
    }
    entries_[std::move(id)] = std::move(text);
}

ArticleTextStore ArticleTextStore::load_jsonl(const std::filesystem::path& path)
{
    ArticleTextStore store;
    for_each_jsonl(path, [&](const nlohmann::json& rec, std::size_t) {
        store.add({rec.at("codex").get<std::string>(), rec.at("article").get<std::int32_t>()},
                  rec.at("text").get<std::string>());
    });
    return store;
}

Bm25Index Bm25Index::build(const ArticleTextStore& store, const Bm25Params& params)
{
    if (store.size() == 0) {
        throw EmptyStore("BM25 index needs at least one article text");
    }
    Bm25Index index;
    index.params_ = params;
    std::uint64_t total_len = 0;
    for (const auto& [id, text] : store.entries()) {
        const auto doc = static_cast<std::uint32_t>(index.docs_.size());
        index.docs_.push_back(id);
        auto tokens = tokenize(text);
        index.doc_len_.push_back(static_cast<std::uint32_t>(tokens.size()));
        total_len += tokens.size();
        std::sort(tokens.begin(), tokens.end());
        for (std::size_t i = 0; i < tokens.size();) {
            std::size_t j = i;
            while (j < tokens.size() && tokens[j] == tokens[i]) {
                ++j;
            }
            index.postings_[tokens[i]].push_back({doc, static_cast<std::uint32_t>(j - i)});
            i = j;
        }
    }
    index.avg_len_ = static_cast<double>(total_len) / static_cast<double>(index.docs_.size());
    return index;
}

std::uint32_t Bm25Index::doc_freq(const std::string& token) const
{
    return static_cast<std::uint32_t>(postings(token).size());
}

std::span<const Posting> Bm25Index::postings(const std::string& token) const
{
    auto it = postings_.find(token);
    if (it == postings_.end()) {
        return {};
    }
    return it->second;
}

double Bm25Index::idf(const std::string& token) const
{
    const auto n = static_cast<double>(docs_.size());
    const auto df = static_cast<double>(doc_freq(token));
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<double> Bm25Index::score(std::span<const std::string> query_tokens) const
{
    std::vector<double> scores(docs_.size(), 0.0);
    const double k1 = params_.k1;
    const double b = params_.b;
    for (const auto& token : query_tokens) {
        auto plist = postings(token);
        if (plist.empty()) {
            continue;
        }
        const double w = idf(token);
        for (const auto& p : plist) {
            const auto tf = static_cast<double>(p.term_freq);
            const double norm = 1.0 - b + b * static_cast<double>(doc_len_[p.doc]) / avg_len_;
            scores[p.doc] += w * tf * (k1 + 1.0) / (tf + k1 * norm);
        }
    }
    return scores;
}

std::vector<double> Bm25Index::score(std::string_view query_text) const
{
    auto tokens = tokenize(query_text);
    return score(tokens);
}

std::optional<std::size_t> Bm25Index::doc_index(const ArticleId& id) const
{
    auto it = std::lower_bound(docs_.begin(), docs_.end(), id);
    if (it == docs_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - docs_.begin());
}

std::vector<RankedArticle> bm25_rank(std::string_view query_text, const Bm25Index& index,
                                     std::span<const ArticleId> candidates)
{
    auto scores = index.score(query_text);
    std::vector<RankedArticle> out;
    out.reserve(candidates.size());
    for (const auto& id : candidates) {
        auto doc = index.doc_index(id);
        out.push_back({id, doc ? scores[*doc] : 0.0, 1.0});
    }
    std::sort(out.begin(), out.end(), [](const RankedArticle& a, const RankedArticle& b) {
        return a.score != b.score ? a.score > b.score : a.id < b.id;
    });
    // Equal scores are contiguous after sorting; each group shares its
    // averaged position.
    for (std::size_t i = 0; i < out.size();) {
        std::size_t j = i;
        while (j < out.size() && out[j].score == out[i].score) {
            ++j;
        }
        const double rank = 1.0 + static_cast<double>(i) + 0.5 * static_cast<double>(j - i - 1);
        for (std::size_t k = i; k < j; ++k) {
            out[k].rank = rank;
        }
        i = j;
    }
    return out;
}

Bm25Result evaluate_bm25(const Snapshot& snapshot, const ArticleTextStore& store,
                         const std::unordered_map<std::string, std::string>& corpus_texts,
                         const CodexPatternTable& table, const Bm25EvalOptions& options)
{
    const std::size_t n_articles = snapshot.articles.size();
    Bm25Result result;
    std::vector<std::uint8_t> in_intersection(n_articles, 0);
    for (std::size_t a = 0; a < n_articles; ++a) {
        if (store.contains(snapshot.articles[a])) {
            in_intersection[a] = 1;
            result.intersection.push_back(snapshot.articles[a]);
        }
    }
    if (result.intersection.empty()) {
        throw NoTextOverlap("no snapshot article has a text in the article store");
    }

    const auto index = Bm25Index::build(store, options.params);
    std::vector<std::size_t> doc_of(n_articles, 0);
    for (std::size_t a = 0; a < n_articles; ++a) {
        if (in_intersection[a]) {
            doc_of[a] = *index.doc_index(snapshot.articles[a]);
        }
    }

    std::vector<CaseIndex> cases;
    for (auto c : sample_cases(snapshot, options.sample_n, options.seed)) {
        if (corpus_texts.count(snapshot.cases[c]) == 0) {
            continue;
        }
        auto row = snapshot.case_articles(c);
        if (std::any_of(row.begin(), row.end(), [&](ArticleIndex a) { return in_intersection[a] != 0; })) {
            cases.push_back(c);
        }
    }
    if (cases.empty()) {
        throw NoTextOverlap("no sampled case has text and an intersection target");
    }

    std::vector<std::vector<PredictionRecord>> parts(std::max(1u, options.jobs));
    parallel_chunks(cases.size(), options.jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        std::vector<std::uint8_t> cited(n_articles, 0);
        for (std::size_t i = begin; i < end; ++i) {
            const CaseIndex c = cases[i];
            auto row = snapshot.case_articles(c);
            const auto query = strip_citations(corpus_texts.at(snapshot.cases[c]), table);
            const auto scores = index.score(query);
            for (auto a : row) {
                cited[a] = 1;
            }
            for (auto target : row) {
                if (!in_intersection[target]) {
                    continue;
                }
                const double ts = scores[doc_of[target]];
                std::size_t greater = 0;
                std::size_t equal = 0;
                for (std::size_t a = 0; a < n_articles; ++a) {
                    if (!in_intersection[a] || cited[a]) {
                        continue;
                    }
                    const double s = scores[doc_of[a]];
                    greater += s > ts;
                    equal += s == ts;
                }
                const double rank = 1.0 + static_cast<double>(greater) + 0.5 * static_cast<double>(equal);
                parts[w].push_back({c, target, static_cast<std::uint32_t>(row.size() - 1), Method::BM25,
                                    rank, ts});
            }
            for (auto a : row) {
                cited[a] = 0;
            }
        }
    });
    for (auto& p : parts) {
        result.bm25.insert(result.bm25.end(), p.begin(), p.end());
    }

    EvalOptions aa;
    aa.methods = {Method::AA};
    aa.seed = options.seed;
    aa.jobs = options.jobs;
    aa.target_filter = in_intersection;
    aa.candidate_universe = in_intersection;
    auto cc = build_cocitation(snapshot.incidence);
    result.aa = evaluate_cases(cases, snapshot, cc, aa);

    auto summary = [&](const std::vector<PredictionRecord>& recs) {
        return options.bootstrap.replicates == 0 ? compute_metrics(recs) : summarize(recs, options.bootstrap);
    };
    result.bm25_report = summary(result.bm25);
    result.aa_report = summary(result.aa);
    return result;
}

} // namespace cocite
