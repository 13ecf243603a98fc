#include "cocite/loo_evaluator.hpp"

#include "cocite/errors.hpp"
#include "cocite/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace cocite {

namespace {

double quantile_sorted(const std::vector<double>& xs, double p)
{
    double h = p * static_cast<double>(xs.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

} // namespace

double MetricsReport::hit(int k) const
{
    for (std::size_t i = 0; i < kHitCutoffs.size(); ++i) {
        if (kHitCutoffs[i] == k) {
            return hit_at[i];
        }
    }
    throw InvariantError("unsupported Hit@k cutoff " + std::to_string(k));
}

double tie_averaged_rank(double target_score, std::span<const double> others)
{
    std::size_t greater = 0;
    std::size_t equal = 0;
    for (double s : others) {
        greater += s > target_score;
        equal += s == target_score;
    }
    return 1.0 + static_cast<double>(greater) + 0.5 * static_cast<double>(equal);
}

std::vector<CaseIndex> sample_indices(std::size_t total, std::size_t n, std::uint64_t seed)
{
    if (n == 0) {
        throw DataError("sample size must be at least 1");
    }
    std::vector<CaseIndex> all(total);
    std::iota(all.begin(), all.end(), CaseIndex{0});
    if (n >= all.size()) {
        return all;
    }
    std::vector<CaseIndex> out;
    out.reserve(n);
    std::mt19937_64 gen(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(out), n, gen);
    return out;
}

std::vector<CaseIndex> sample_cases(const Snapshot& snapshot, std::size_t n, std::uint64_t seed)
{
    return sample_indices(snapshot.cases.size(), n, seed);
}

CaseEvaluator::CaseEvaluator(const Snapshot& snapshot, const CoCitationMatrix& cc,
                             const EvalOptions& options)
    : snapshot_(snapshot), cc_(cc), options_(options)
{
    const std::size_t n = snapshot.articles.size();
    if (cc.size() != n) {
        throw InvariantError("co-citation matrix and snapshot vocabulary differ in size");
    }
    if (!options.candidate_universe.empty() && options.candidate_universe.size() != n) {
        throw InvariantError("candidate universe has the wrong size");
    }
    if (!options.target_filter.empty() && options.target_filter.size() != n) {
        throw InvariantError("target filter has the wrong size");
    }
    degree_scores_.assign(cc.degrees().begin(), cc.degrees().end());
    scores_.assign(n, 0.0);
    excluded_.assign(n, 0);
    if (!options.candidate_universe.empty()) {
        for (std::size_t v = 0; v < n; ++v) {
            excluded_[v] = options.candidate_universe[v] ? 0 : 1;
        }
    }
}

double CaseEvaluator::rank_of(ArticleIndex target, std::span<const double> scores) const
{
    // excluded_ marks every article of the case (target included) and any
    // article outside the candidate universe.
    const double ts = scores[target];
    const std::size_t n = scores.size();
    std::size_t greater = 0;
    std::size_t equal = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t keep = excluded_[v] ^ 1u;
        greater += keep & static_cast<std::size_t>(scores[v] > ts);
        equal += keep & static_cast<std::size_t>(scores[v] == ts);
    }
    return 1.0 + static_cast<double>(greater) + 0.5 * static_cast<double>(equal);
}

void CaseEvaluator::evaluate(CaseIndex case_index, std::vector<PredictionRecord>& out)
{
    auto row = snapshot_.case_articles(case_index);
    if (row.size() < 3) {
        throw InvalidCase("case " + snapshot_.cases[case_index] + " cites " +
                          std::to_string(row.size()) + " vocabulary articles, need at least 3");
    }
    std::vector<std::uint8_t> saved(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        saved[i] = excluded_[row[i]];
        excluded_[row[i]] = 1;
    }

    const auto context_size = static_cast<std::uint32_t>(row.size() - 1);
    for (std::size_t ti = 0; ti < row.size(); ++ti) {
        const ArticleIndex target = row[ti];
        if (!options_.target_filter.empty() && !options_.target_filter[target]) {
            continue;
        }
        context_.clear();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != ti) {
                context_.push_back(row[i]);
            }
        }
        for (Method m : options_.methods) {
            std::span<const double> scores;
            switch (m) {
            case Method::CN:
            case Method::AA:
                std::fill(scores_.begin(), scores_.end(), 0.0);
                accumulate_scores(m, context_, cc_, scores_);
                scores = scores_;
                break;
            case Method::Degree:
                scores = degree_scores_;
                break;
            case Method::Random:
                fill_random_scores(mix_seed(options_.seed, case_index, target), scores_);
                scores = scores_;
                break;
            default:
                throw InvariantError("the LOO evaluator does not score " + std::string(method_name(m)));
            }
            out.push_back({case_index, target, context_size, m, rank_of(target, scores), scores[target]});
        }
    }

    for (std::size_t i = 0; i < row.size(); ++i) {
        excluded_[row[i]] = saved[i];
    }
}

std::vector<PredictionRecord> evaluate_case(CaseIndex case_index, const Snapshot& snapshot,
                                            const CoCitationMatrix& cc,
                                            std::span<const Method> methods, std::uint64_t seed)
{
    EvalOptions options;
    options.methods.assign(methods.begin(), methods.end());
    options.seed = seed;
    CaseEvaluator evaluator(snapshot, cc, options);
    std::vector<PredictionRecord> out;
    evaluator.evaluate(case_index, out);
    return out;
}

std::vector<PredictionRecord> evaluate_cases(std::span<const CaseIndex> cases,
                                             const Snapshot& snapshot, const CoCitationMatrix& cc,
                                             const EvalOptions& options)
{
    unsigned jobs = std::max(1u, options.jobs);
    std::vector<std::vector<PredictionRecord>> parts(jobs);
    parallel_chunks(cases.size(), jobs, [&](unsigned w, std::size_t begin, std::size_t end) {
        CaseEvaluator evaluator(snapshot, cc, options);
        auto& part = parts[w];
        part.reserve((end - begin) * 8 * options.methods.size());
        for (std::size_t i = begin; i < end; ++i) {
            evaluator.evaluate(cases[i], part);
        }
    });
    std::vector<PredictionRecord> out;
    std::size_t total = 0;
    for (const auto& p : parts) {
        total += p.size();
    }
    out.reserve(total);
    for (auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

std::vector<PredictionRecord> select_method(std::span<const PredictionRecord> records, Method m)
{
    std::vector<PredictionRecord> out;
    for (const auto& r : records) {
        if (r.method == m) {
            out.push_back(r);
        }
    }
    return out;
}

MetricsReport compute_metrics_from_ranks(std::span<const double> ranks)
{
    if (ranks.empty()) {
        throw EmptyInput("no predictions to summarise");
    }
    MetricsReport report;
    report.n_predictions = ranks.size();
    std::array<std::size_t, 4> hits{};
    double rr = 0.0;
    for (double r : ranks) {
        for (std::size_t i = 0; i < kHitCutoffs.size(); ++i) {
            hits[i] += r <= kHitCutoffs[i];
        }
        rr += 1.0 / r;
    }
    const auto n = static_cast<double>(ranks.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        report.hit_at[i] = static_cast<double>(hits[i]) / n;
    }
    report.mrr = rr / n;
    report.ci_low = report.ci_high = report.mrr;
    return report;
}

MetricsReport compute_metrics(std::span<const PredictionRecord> records)
{
    if (records.empty()) {
        throw EmptyInput("no predictions to summarise");
    }
    std::vector<double> ranks;
    ranks.reserve(records.size());
    for (const auto& r : records) {
        if (r.method != records.front().method) {
            throw DataError("compute_metrics expects records of a single method");
        }
        ranks.push_back(r.rank);
    }
    return compute_metrics_from_ranks(ranks);
}

std::pair<double, double> bootstrap_ci_ranks(std::span<const double> ranks,
                                             const BootstrapOptions& options)
{
    if (ranks.empty()) {
        throw EmptyInput("no predictions to bootstrap");
    }
    if (options.replicates == 0 || !(options.level > 0.0 && options.level < 1.0)) {
        throw ConfigError("bootstrap needs replicates >= 1 and 0 < level < 1");
    }
    std::vector<double> reciprocal(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        reciprocal[i] = 1.0 / ranks[i];
    }
    std::vector<double> replicate_mrr(options.replicates);
    const std::size_t n = reciprocal.size();
    parallel_chunks(options.replicates, options.jobs, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            std::mt19937_64 gen(mix_seed(options.seed, b));
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += reciprocal[pick(gen)];
            }
            replicate_mrr[b] = sum / static_cast<double>(n);
        }
    });
    std::sort(replicate_mrr.begin(), replicate_mrr.end());
    const double tail = (1.0 - options.level) / 2.0;
    return {quantile_sorted(replicate_mrr, tail), quantile_sorted(replicate_mrr, 1.0 - tail)};
}

std::pair<double, double> bootstrap_ci(std::span<const PredictionRecord> records,
                                       const BootstrapOptions& options)
{
    std::vector<double> ranks;
    ranks.reserve(records.size());
    for (const auto& r : records) {
        ranks.push_back(r.rank);
    }
    return bootstrap_ci_ranks(ranks, options);
}

MetricsReport summarize(std::span<const PredictionRecord> records, const BootstrapOptions& options)
{
    auto report = compute_metrics(records);
    auto [lo, hi] = bootstrap_ci(records, options);
    report.ci_low = lo;
    report.ci_high = hi;
    report.seed = options.seed;
    return report;
}

double paired_z(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b)
{
    using Key = std::pair<CaseIndex, ArticleIndex>;
    auto index = [](std::span<const PredictionRecord> recs) {
        std::map<Key, double> m;
        for (const auto& r : recs) {
            if (!m.emplace(Key{r.case_index, r.target}, 1.0 / r.rank).second) {
                throw MisalignedInputs("duplicate (case, target) key in paired input");
            }
        }
        return m;
    };
    auto ma = index(a);
    auto mb = index(b);
    if (ma.size() != mb.size() || ma.empty()) {
        throw MisalignedInputs("paired inputs must be non-empty and of equal size");
    }
    std::vector<double> diff;
    diff.reserve(ma.size());
    auto ib = mb.begin();
    for (const auto& [key, va] : ma) {
        if (ib->first != key) {
            throw MisalignedInputs("paired inputs cover different (case, target) keys");
        }
        diff.push_back(va - ib->second);
        ++ib;
    }
    const auto n = static_cast<double>(diff.size());
    double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
    double ss = 0.0;
    for (double d : diff) {
        ss += (d - mean) * (d - mean);
    }
    double sd = diff.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (sd == 0.0) {
        if (mean == 0.0) {
            return 0.0;
        }
        return mean > 0 ? kLargeZ : -kLargeZ;
    }
    return mean / (sd / std::sqrt(n));
}

} // namespace cocite
