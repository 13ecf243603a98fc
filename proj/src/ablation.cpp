#include "cocite/ablation.hpp"

#include "cocite/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cocite {

DifficultyBins::DifficultyBins(std::vector<DifficultyBin> bins) : bins_(std::move(bins))
{
    std::sort(bins_.begin(), bins_.end(),
              [](const auto& a, const auto& b) { return a.min_exclusive < b.min_exclusive; });
    if (bins_.empty() || bins_.front().min_exclusive != 0) {
        throw ConfigError("difficulty bins must start at 0 (exclusive)");
    }
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        bool last = i + 1 == bins_.size();
        if (last != !bins_[i].max_inclusive.has_value()) {
            throw ConfigError("only the last difficulty bin may be unbounded");
        }
        if (!last && (*bins_[i].max_inclusive <= bins_[i].min_exclusive ||
                      *bins_[i].max_inclusive != bins_[i + 1].min_exclusive)) {
            throw ConfigError("difficulty bins leave a gap or overlap at '" + bins_[i].label + "'");
        }
    }
}

DifficultyBins DifficultyBins::standard()
{
    return DifficultyBins({{"Rare", 0, 100},
                           {"Low", 100, 1000},
                           {"Mid", 1000, 10000},
                           {"High", 10000, 100000},
                           {"Hub", 100000, std::nullopt}});
}

std::size_t DifficultyBins::bin_of(std::uint64_t count) const
{
    for (std::size_t i = 0; i < bins_.size(); ++i) {
        if (bins_[i].contains(count)) {
            return i;
        }
    }
    throw DataError("citation count 0 falls outside every difficulty bin");
}

std::vector<ArticleId> fixed_vocab(const Snapshot& a, const Snapshot& b, std::uint64_t min_citations)
{
    std::vector<ArticleId> out;
    for (std::size_t i = 0; i < a.articles.size(); ++i) {
        if (a.citation_counts[i] < min_citations) {
            continue;
        }
        if (auto j = b.index_of(a.articles[i]); j && b.citation_counts[*j] >= min_citations) {
            out.push_back(a.articles[i]);
        }
    }
    return out;
}

std::map<Method, MetricsReport> summarize_by_method(std::span<const PredictionRecord> records,
                                                    const BootstrapOptions& bootstrap)
{
    std::map<Method, MetricsReport> out;
    for (Method m : kAllMethods) {
        auto subset = select_method(records, m);
        if (subset.empty()) {
            continue;
        }
        out[m] = bootstrap.replicates == 0 ? compute_metrics(subset) : summarize(subset, bootstrap);
    }
    return out;
}

ArmResult evaluate_full(const Snapshot& snapshot, const CoCitationMatrix& cc, const ArmOptions& options)
{
    ArmResult result;
    result.year = snapshot.year;
    auto cases = sample_cases(snapshot, options.sample_n, options.eval.seed);
    result.records = evaluate_cases(cases, snapshot, cc, options.eval);
    result.reports = summarize_by_method(result.records, options.bootstrap);
    return result;
}

std::vector<ArmResult> evaluate_fixed(std::span<const Snapshot> snapshots,
                                      const std::vector<ArticleId>& shared, const ArmOptions& options)
{
    if (shared.empty()) {
        throw DataError("fixed-article evaluation needs a non-empty shared vocabulary");
    }
    std::vector<ArmResult> out;
    for (const auto& snap : snapshots) {
        EvalOptions eval = options.eval;
        eval.target_filter.assign(snap.articles.size(), 0);
        for (const auto& id : shared) {
            if (auto idx = snap.index_of(id)) {
                eval.target_filter[*idx] = 1;
            }
        }
        auto cc = build_cocitation(snap.incidence);
        ArmResult result;
        result.year = snap.year;
        auto cases = sample_cases(snap, options.sample_n, eval.seed);
        result.records = evaluate_cases(cases, snap, cc, eval);
        result.reports = summarize_by_method(result.records, options.bootstrap);
        out.push_back(std::move(result));
    }
    return out;
}

SplitResult temporal_split_eval(const Snapshot& snapshot, const SplitSpec& spec,
                                const ArmOptions& options)
{
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ConfigError("train_fraction must lie strictly between 0 and 1");
    }
    const std::size_t n = snapshot.cases.size();
    const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train_fraction));
    if (n_train == 0 || n_train >= n) {
        throw DegenerateSplit("split of " + std::to_string(n) + " cases leaves an empty half");
    }

    SplitResult result;
    result.n_train = n_train;
    result.n_test = n - n_train;
    result.train_cc = build_cocitation(snapshot.incidence.slice_rows(0, n_train));

    std::vector<CaseIndex> test = sample_indices(result.n_test, options.sample_n, options.eval.seed);
    for (auto& c : test) {
        c += static_cast<CaseIndex>(n_train);
    }
    result.split.year = snapshot.year;
    result.split.records = evaluate_cases(test, snapshot, result.train_cc, options.eval);
    result.split.reports = summarize_by_method(result.split.records, options.bootstrap);

    auto full_cc = build_cocitation(snapshot.incidence);
    result.full.year = snapshot.year;
    result.full.records = evaluate_cases(test, snapshot, full_cc, options.eval);
    result.full.reports = summarize_by_method(result.full.records, options.bootstrap);
    return result;
}

namespace {

std::vector<GroupReport> group_reports(std::span<const PredictionRecord> records,
                                       std::vector<GroupReport> groups,
                                       const std::vector<std::size_t>& group_of_article)
{
    std::vector<std::vector<double>> ranks(groups.size());
    for (const auto& r : records) {
        ranks[group_of_article[r.target]].push_back(r.rank);
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (!ranks[g].empty()) {
            groups[g].report = compute_metrics_from_ranks(ranks[g]);
        }
    }
    return groups;
}

} // namespace

std::vector<GroupReport> stratify(std::span<const PredictionRecord> records, const Snapshot& snapshot,
                                  const DifficultyBins& bins)
{
    std::vector<GroupReport> groups;
    for (const auto& b : bins.bins()) {
        groups.push_back({b.label, 0, {}});
    }
    std::vector<std::size_t> group_of(snapshot.articles.size());
    for (std::size_t a = 0; a < snapshot.articles.size(); ++a) {
        group_of[a] = bins.bin_of(snapshot.citation_counts[a]);
        ++groups[group_of[a]].articles;
    }
    return group_reports(records, std::move(groups), group_of);
}

std::vector<GroupReport> per_codex(std::span<const PredictionRecord> records, const Snapshot& snapshot)
{
    std::vector<GroupReport> groups;
    std::vector<std::size_t> group_of(snapshot.articles.size());
    // Articles are sorted by codex first, so each codex is a contiguous run.
    for (std::size_t a = 0; a < snapshot.articles.size(); ++a) {
        if (groups.empty() || groups.back().label != snapshot.articles[a].codex) {
            groups.push_back({snapshot.articles[a].codex, 0, {}});
        }
        group_of[a] = groups.size() - 1;
        ++groups.back().articles;
    }
    return group_reports(records, std::move(groups), group_of);
}

} // namespace cocite
