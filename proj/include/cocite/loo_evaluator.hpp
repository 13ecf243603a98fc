#pragma once

#include "cocite/cocitation.hpp"
#include "cocite/snapshot.hpp"
#include "cocite/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cocite {

/// Outcome of ranking one masked target with one method.
struct PredictionRecord {
    CaseIndex case_index = 0;  ///< row in the snapshot the case came from
    ArticleIndex target = 0;
    std::uint32_t context_size = 0;
    Method method = Method::AA;
    double rank = 1.0;         ///< tie-averaged competition rank
    double target_score = 0.0;

    bool operator==(const PredictionRecord&) const = default;
};

inline constexpr std::array<int, 4> kHitCutoffs{1, 5, 10, 20};

struct MetricsReport {
    std::size_t n_predictions = 0;
    std::array<double, 4> hit_at{}; ///< for kHitCutoffs, in order
    double mrr = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;

    /// Hit@k for k in kHitCutoffs.
    double hit(int k) const;
};

/// 1 + #{greater} + ½·#{equal}, over `others` (which must not include the
/// target itself).
double tie_averaged_rank(double target_score, std::span<const double> others);

/// min(n, |cases|) distinct case indices chosen uniformly without
/// replacement, ascending.
std::vector<CaseIndex> sample_cases(const Snapshot& snapshot, std::size_t n, std::uint64_t seed);

/// Same rule over the index range [0, total).
std::vector<CaseIndex> sample_indices(std::size_t total, std::size_t n, std::uint64_t seed);

struct EvalOptions {
    std::vector<Method> methods{Method::AA, Method::CN, Method::Degree, Method::Random};
    std::uint64_t seed = 0;            ///< seeds the Random scorer per (case, target)
    unsigned jobs = 1;
    /// When non-empty, only targets t with target_filter[t] != 0 are ranked.
    std::vector<std::uint8_t> target_filter;
    /// When non-empty, candidates are restricted to articles with
    /// candidate_universe[v] != 0 (the context is still excluded).
    std::vector<std::uint8_t> candidate_universe;
};

/// Ranks every target of a case against V \ (S_u \ {v_t}) with each method,
/// reusing scratch buffers across calls. Not thread-safe; use one per worker.
class CaseEvaluator {
  public:
    CaseEvaluator(const Snapshot& snapshot, const CoCitationMatrix& cc, const EvalOptions& options);

    /// Appends one record per (target, method). Throws InvalidCase when the
    /// case cites fewer than 3 vocabulary articles.
    void evaluate(CaseIndex case_index, std::vector<PredictionRecord>& out);

  private:
    double rank_of(ArticleIndex target, std::span<const double> scores) const;

    const Snapshot& snapshot_;
    const CoCitationMatrix& cc_;
    const EvalOptions& options_;
    std::vector<double> degree_scores_;
    std::vector<double> scores_;
    std::vector<std::uint8_t> excluded_;
    std::vector<ArticleIndex> context_;
};

std::vector<PredictionRecord> evaluate_case(CaseIndex case_index, const Snapshot& snapshot,
                                            const CoCitationMatrix& cc,
                                            std::span<const Method> methods, std::uint64_t seed = 0);

/// Evaluates the given cases on `options.jobs` threads. Output order is the
/// order of `cases`, independent of the thread count.
std::vector<PredictionRecord> evaluate_cases(std::span<const CaseIndex> cases,
                                             const Snapshot& snapshot, const CoCitationMatrix& cc,
                                             const EvalOptions& options);

/// Records of one method, in input order.
std::vector<PredictionRecord> select_method(std::span<const PredictionRecord> records, Method m);

/// Hit@k and MRR over single-method records. Throws EmptyInput; the CI is
/// left as [mrr, mrr].
MetricsReport compute_metrics(std::span<const PredictionRecord> records);
MetricsReport compute_metrics_from_ranks(std::span<const double> ranks);

struct BootstrapOptions {
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// Percentile bootstrap interval of MRR. Throws EmptyInput.
std::pair<double, double> bootstrap_ci(std::span<const PredictionRecord> records,
                                       const BootstrapOptions& options = {});
std::pair<double, double> bootstrap_ci_ranks(std::span<const double> ranks,
                                             const BootstrapOptions& options = {});

/// compute_metrics plus the bootstrap interval.
MetricsReport summarize(std::span<const PredictionRecord> records, const BootstrapOptions& options);

/// Returned by paired_z when every paired difference is the same nonzero value.
inline constexpr double kLargeZ = 1e300;

/// Paired z statistic on reciprocal-rank differences a - b. Records are
/// matched on (case_index, target). Throws MisalignedInputs.
double paired_z(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b);

} // namespace cocite
