#pragma once

#include "cocite/loo_evaluator.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocite {

/// Citation-frequency stratum (min_exclusive, max_inclusive]; an absent
/// upper bound means unbounded.
struct DifficultyBin {
    std::string label;
    std::uint64_t min_exclusive = 0;
    std::optional<std::uint64_t> max_inclusive;

    bool contains(std::uint64_t count) const
    {
        return count > min_exclusive && (!max_inclusive || count <= *max_inclusive);
    }
};

class DifficultyBins {
  public:
    /// Throws ConfigError unless the bins tile [1, inf) without gaps.
    explicit DifficultyBins(std::vector<DifficultyBin> bins);

    /// Rare (0,100], Low (100,1K], Mid (1K,10K], High (10K,100K], Hub (100K,inf).
    static DifficultyBins standard();

    const std::vector<DifficultyBin>& bins() const { return bins_; }
    std::size_t bin_of(std::uint64_t count) const;

  private:
    std::vector<DifficultyBin> bins_; // ascending
};

struct SplitSpec {
    double train_fraction = 0.5;
};

/// Articles meeting `min_citations` in both snapshots' yearly counts, sorted.
std::vector<ArticleId> fixed_vocab(const Snapshot& a, const Snapshot& b,
                                   std::uint64_t min_citations = 50);

/// Shared settings for one ablation arm.
struct ArmOptions {
    std::size_t sample_n = 200000;
    EvalOptions eval;              ///< methods, seed, jobs
    BootstrapOptions bootstrap;
};

struct ArmResult {
    std::int32_t year = 0;
    std::vector<PredictionRecord> records;
    std::map<Method, MetricsReport> reports; ///< methods with at least one record
};

/// Summarises each method present in `records`.
std::map<Method, MetricsReport> summarize_by_method(std::span<const PredictionRecord> records,
                                                    const BootstrapOptions& bootstrap);

/// Standard LOO over the whole snapshot.
ArmResult evaluate_full(const Snapshot& snapshot, const CoCitationMatrix& cc, const ArmOptions& options);

/// LOO per snapshot keeping only predictions whose target is in `shared`.
/// Contexts and candidates remain the full vocabulary. Throws DataError when
/// `shared` is empty.
std::vector<ArmResult> evaluate_fixed(std::span<const Snapshot> snapshots,
                                      const std::vector<ArticleId>& shared,
                                      const ArmOptions& options);

struct SplitResult {
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    CoCitationMatrix train_cc;
    ArmResult split;           ///< C and d from the training half only
    ArmResult full;            ///< same test cases scored with the full-year C
};

/// Builds C from the first train_fraction of cases (doc_id order) and runs
/// LOO over a sample of the remaining cases. Throws DegenerateSplit.
SplitResult temporal_split_eval(const Snapshot& snapshot, const SplitSpec& spec,
                                const ArmOptions& options);

struct GroupReport {
    std::string label;
    std::size_t articles = 0; ///< vocabulary articles in the group
    MetricsReport report;     ///< n_predictions = 0 when the group is empty
};

/// Per-bin metrics keyed by each record's target citation count. Records of
/// a single method are expected.
std::vector<GroupReport> stratify(std::span<const PredictionRecord> records, const Snapshot& snapshot,
                                  const DifficultyBins& bins);

/// Per-codex metrics keyed by each record's target codex, sorted by codex.
std::vector<GroupReport> per_codex(std::span<const PredictionRecord> records, const Snapshot& snapshot);

} // namespace cocite
