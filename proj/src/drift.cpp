#include "cocite/drift.hpp"

#include "cocite/cocitation.hpp"
#include "cocite/errors.hpp"
#include "cocite/io.hpp"
#include "cocite/loo_evaluator.hpp"
#include "cocite/parallel.hpp"
#include "cocite/text_util.hpp"

#include <algorithm>
#include <cmath>

namespace cocite {

namespace {

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return h;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace

SnippetSet sample_snippets(const std::unordered_map<std::string, std::string>& corpus_texts,
                           std::span<const CitationOccurrence> occurrences, const ArticleId& article,
                           std::int32_t year, std::size_t n, std::size_t window, std::uint64_t seed)
{
    if (occurrences.empty()) {
        throw NoOccurrences("article " + article.str() + " is not cited in " + std::to_string(year));
    }
    std::vector<CitationOccurrence> sorted(occurrences.begin(), occurrences.end());
    std::sort(sorted.begin(), sorted.end());

    SnippetSet set{article, year, {}};
    const auto picks = n == 0 ? std::vector<CaseIndex>{}
                              : sample_indices(sorted.size(), n, mix_seed(seed, fnv1a(article.str()),
                                                                          static_cast<std::uint64_t>(year)));
    for (auto i : picks) {
        const auto& occ = sorted[i];
        auto it = corpus_texts.find(occ.doc_id);
        if (it == corpus_texts.end()) {
            throw DataError("no text for decision '" + occ.doc_id + "'");
        }
        const std::string_view text = it->second;
        if (occ.span.end > text.size() || occ.span.start > occ.span.end) {
            throw DataError("citation span outside decision '" + occ.doc_id + "'");
        }
        const auto begin = back_code_points(text, occ.span.start, window);
        const auto end = forward_code_points(text, occ.span.end, window);
        set.snippets.push_back({occ.doc_id, std::string(text.substr(begin, end - begin))});
    }
    return set;
}

std::string snippets_jsonl(std::span<const SnippetSet> sets)
{
    std::string out;
    for (const auto& set : sets) {
        for (const auto& s : set.snippets) {
            nlohmann::ordered_json rec;
            rec["codex"] = set.article.codex;
            rec["article"] = set.article.article;
            rec["year"] = set.year;
            rec["doc_id"] = s.doc_id;
            rec["text"] = s.text;
            out += rec.dump();
            out += '\n';
        }
    }
    return out;
}

std::map<BatchKey, EmbeddingBatch> load_embeddings(const std::filesystem::path& path)
{
    std::map<BatchKey, EmbeddingBatch> out;
    std::size_t dim = 0;
    for_each_jsonl(path, [&](const nlohmann::json& rec, std::size_t line) {
        ArticleId id{rec.at("codex").get<std::string>(), rec.at("article").get<std::int32_t>()};
        const auto year = rec.at("year").get<std::int32_t>();
        auto v = rec.at("vector").get<std::vector<double>>();
        const auto where = path.string() + ":" + std::to_string(line);
        if (v.size() < 2) {
            throw DataError(where + ": vector dimension must be at least 2");
        }
        if (dim == 0) {
            dim = v.size();
        } else if (v.size() != dim) {
            throw DimensionMismatch(where + ": vector dimension " + std::to_string(v.size()) +
                                    " differs from " + std::to_string(dim));
        }
        if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); })) {
            throw DataError(where + ": non-finite vector component");
        }
        auto& batch = out[{id, year}];
        batch.article = id;
        batch.year = year;
        batch.vectors.push_back(std::move(v));
    });
    return out;
}

std::vector<double> centroid(const EmbeddingBatch& batch)
{
    if (batch.vectors.empty()) {
        throw EmptyBatch("no vectors for " + batch.article.str() + " in " + std::to_string(batch.year));
    }
    const std::size_t dim = batch.vectors.front().size();
    std::vector<double> c(dim, 0.0);
    for (const auto& v : batch.vectors) {
        if (v.size() != dim) {
            throw DimensionMismatch("mixed vector dimensions for " + batch.article.str());
        }
        for (std::size_t i = 0; i < dim; ++i) {
            c[i] += v[i];
        }
    }
    const auto n = static_cast<double>(batch.vectors.size());
    for (auto& x : c) {
        x /= n;
    }
    if (std::sqrt(dot(c, c)) < 1e-12) {
        throw ZeroCentroid("centroid of " + batch.article.str() + " in " + std::to_string(batch.year) +
                           " is zero");
    }
    return c;
}

DriftRecord drift(const EmbeddingBatch& batch_a, const EmbeddingBatch& batch_b)
{
    const auto ca = centroid(batch_a);
    const auto cb = centroid(batch_b);
    if (ca.size() != cb.size()) {
        throw DimensionMismatch("batches have dimensions " + std::to_string(ca.size()) + " and " +
                                std::to_string(cb.size()));
    }
    const double cosine = dot(ca, cb) / (std::sqrt(dot(ca, ca)) * std::sqrt(dot(cb, cb)));
    DriftRecord r;
    r.article = batch_a.article;
    r.year_a = batch_a.year;
    r.year_b = batch_b.year;
    r.drift = std::clamp(1.0 - cosine, 0.0, 2.0);
    r.n_a = batch_a.vectors.size();
    r.n_b = batch_b.vectors.size();
    return r;
}

std::vector<DriftRecord> drift_between(const std::map<BatchKey, EmbeddingBatch>& batches,
                                       std::int32_t year_a, std::int32_t year_b,
                                       const std::vector<ArticleId>* articles, unsigned jobs)
{
    std::vector<std::pair<const EmbeddingBatch*, const EmbeddingBatch*>> pairs;
    for (const auto& [key, batch] : batches) {
        if (key.second != year_a) {
            continue;
        }
        if (articles && !std::binary_search(articles->begin(), articles->end(), key.first)) {
            continue;
        }
        if (auto it = batches.find({key.first, year_b}); it != batches.end()) {
            pairs.emplace_back(&batch, &it->second);
        }
    }
    std::vector<DriftRecord> out(pairs.size());
    parallel_chunks(pairs.size(), jobs, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = drift(*pairs[i].first, *pairs[i].second);
        }
    });
    return out;
}

DriftSummary aggregate_drift(std::span<const DriftRecord> records,
                             const std::map<ArticleId, std::string>& group_of)
{
    if (records.empty()) {
        throw EmptyInput("no drift records to aggregate");
    }
    std::map<std::string, std::pair<std::size_t, double>> acc;
    DriftSummary out;
    double total = 0.0;
    for (const auto& r : records) {
        auto it = group_of.find(r.article);
        auto& slot = acc[it == group_of.end() ? r.article.codex : it->second];
        ++slot.first;
        slot.second += r.drift;
        total += r.drift;
    }
    for (const auto& [label, s] : acc) {
        out.groups.push_back({label, s.first, s.second / static_cast<double>(s.first)});
    }
    out.articles = records.size();
    out.mean_drift = total / static_cast<double>(records.size());
    return out;
}

} // namespace cocite
