#include "cocite/cocitation.hpp"

#include "cocite/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cocite {

CoCitationMatrix build_cocitation(const SparseBinaryMatrix& incidence)
{
    const std::size_t n_articles = incidence.cols();
    CoCitationMatrix cc;
    cc.degrees_ = incidence.column_sums();

    // Column-major view of M: for each article, the cases citing it.
    std::vector<std::size_t> col_ptr(n_articles + 1, 0);
    for (std::size_t a = 0; a < n_articles; ++a) {
        col_ptr[a + 1] = col_ptr[a] + cc.degrees_[a];
    }
    std::vector<CaseIndex> col_cases(incidence.nnz());
    {
        std::vector<std::size_t> fill(col_ptr.begin(), col_ptr.end() - 1);
        for (std::size_t r = 0; r < incidence.rows(); ++r) {
            for (auto a : incidence.row(r)) {
                col_cases[fill[a]++] = static_cast<CaseIndex>(r);
            }
        }
    }

    std::vector<std::uint32_t> acc(n_articles, 0);
    std::vector<ArticleIndex> touched;
    cc.ptr_.assign(1, 0);
    cc.ptr_.reserve(n_articles + 1);
    for (std::size_t i = 0; i < n_articles; ++i) {
        touched.clear();
        for (std::size_t k = col_ptr[i]; k < col_ptr[i + 1]; ++k) {
            for (auto j : incidence.row(col_cases[k])) {
                if (j == i) {
                    continue;
                }
                if (acc[j]++ == 0) {
                    touched.push_back(j);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto j : touched) {
            cc.cols_.push_back(j);
            cc.vals_.push_back(acc[j]);
            acc[j] = 0;
        }
        cc.ptr_.push_back(cc.cols_.size());
    }
    return cc;
}

std::uint32_t CoCitationMatrix::at(ArticleIndex i, ArticleIndex j) const
{
    auto row = neighbors(i);
    auto it = std::lower_bound(row.begin(), row.end(), j);
    if (it == row.end() || *it != j) {
        return 0;
    }
    return counts(i)[static_cast<std::size_t>(it - row.begin())];
}

std::uint64_t CoCitationMatrix::total() const
{
    return std::accumulate(vals_.begin(), vals_.end(), std::uint64_t{0});
}

void accumulate_scores(Method method, std::span<const ArticleIndex> context,
                       const CoCitationMatrix& cc, std::span<double> acc)
{
    if (method != Method::CN && method != Method::AA) {
        throw InvariantError("accumulate_scores supports CN and AA only");
    }
    const auto& d = cc.degrees();
    for (auto s : context) {
        auto cols = cc.neighbors(s);
        auto vals = cc.counts(s);
        if (method == Method::CN) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                acc[cols[k]] += static_cast<double>(vals[k]);
            }
        } else {
            const double div = aa_divisor(d[s]);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                acc[cols[k]] += static_cast<double>(vals[k]) / div;
            }
        }
    }
}

ScoreVector score_cn(std::span<const ArticleIndex> context, const CoCitationMatrix& cc)
{
    if (context.empty()) {
        throw InvalidCase("score_cn needs a non-empty context");
    }
    ScoreVector out{std::vector<double>(cc.size(), 0.0), Method::CN};
    accumulate_scores(Method::CN, context, cc, out.scores);
    return out;
}

ScoreVector score_aa(std::span<const ArticleIndex> context, const CoCitationMatrix& cc)
{
    if (context.empty()) {
        throw InvalidCase("score_aa needs a non-empty context");
    }
    ScoreVector out{std::vector<double>(cc.size(), 0.0), Method::AA};
    accumulate_scores(Method::AA, context, cc, out.scores);
    return out;
}

ScoreVector score_degree(const CoCitationMatrix& cc)
{
    ScoreVector out{{}, Method::Degree};
    out.scores.assign(cc.degrees().begin(), cc.degrees().end());
    return out;
}

void fill_random_scores(std::uint64_t seed, std::span<double> out)
{
    // SplitMix64 sequence: element i is the finaliser of base + i * golden.
    const std::uint64_t base = mix_seed(seed);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(mix_seed(base + i * 0x9E3779B97F4A7C15ull) >> 11) * 0x1.0p-53;
    }
}

ScoreVector score_random(std::size_t v_count, std::uint64_t seed)
{
    if (v_count == 0) {
        throw InvalidCase("score_random needs at least one article");
    }
    ScoreVector out{std::vector<double>(v_count), Method::Random};
    fill_random_scores(seed, out.scores);
    return out;
}

void write_cocitation_csv(const CoCitationMatrix& cc, const Snapshot& snapshot,
                          const std::filesystem::path& path, const OutputMeta& meta)
{
    CsvWriter out(&meta, {"i", "j", "codex_i", "article_i", "codex_j", "article_j", "count"});
    for (ArticleIndex i = 0; i < cc.size(); ++i) {
        auto cols = cc.neighbors(i);
        auto vals = cc.counts(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] <= i) {
                continue;
            }
            const auto& a = snapshot.articles[i];
            const auto& b = snapshot.articles[cols[k]];
            out.row(i, cols[k], a.codex, a.article, b.codex, b.article, vals[k]);
        }
    }
    out.write(path);
}

} // namespace cocite
