#pragma once

#include "cocite/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cocite {

/// Annual metric values; years strictly increasing, values finite.
class MetricSeries {
  public:
    MetricSeries() = default;
    /// Throws DataError when the invariants do not hold.
    explicit MetricSeries(std::vector<std::pair<std::int32_t, double>> points);

    const std::vector<std::pair<std::int32_t, double>>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::vector<double> values() const;
    MetricSeries without_year(std::int32_t year) const;

  private:
    std::vector<std::pair<std::int32_t, double>> points_;
};

struct SegmentParams {
    std::int32_t first_year = 0;
    std::int32_t last_year = 0;
    double mean = 0.0;
    double variance = 0.0;
};

struct ChangepointResult {
    std::vector<std::int32_t> breakpoints; ///< first year of every segment but the first
    double penalty = 0.0;
    double cost = 0.0; ///< total penalized cost
    std::vector<SegmentParams> segments;
};

inline constexpr double kVarianceFloor = 1e-8;
inline constexpr std::size_t kMinSegment = 2;

/// -2 log-likelihood of values[begin, end) under a Gaussian with fitted
/// mean and (floored) maximum-likelihood variance.
double gaussian_segment_cost(std::span<const double> values, std::size_t begin, std::size_t end);

/// 2 ln(n).
double bic_penalty(std::size_t n);

/// Optimal segmentation boundaries of `values` (indices where a new segment
/// starts) under cost + penalty per changepoint, by PELT.
std::vector<std::size_t> pelt_segment(std::span<const double> values, double penalty,
                                      std::size_t min_segment = kMinSegment);

/// Throws TooShort when the series has fewer than 2 * min_segment points.
ChangepointResult pelt_detect(const MetricSeries& series, std::optional<double> penalty = std::nullopt,
                              std::size_t min_segment = kMinSegment);

/// Penalized cost of a given segmentation.
double segmentation_cost(std::span<const double> values, std::span<const std::size_t> starts,
                         double penalty);

/// Per-method series from a temporal-metrics CSV with columns
/// (year, method, mrr, hit1, hit5, hit10, hit20, ...).
std::map<Method, MetricSeries> load_metric_series(const std::filesystem::path& path,
                                                  std::string_view metric = "mrr");

struct SweepEntry {
    ChangepointResult result;
    std::size_t distance = 0; ///< symmetric difference with the target set
};

/// Runs pelt_detect for each penalty; entries keep the input order.
std::vector<SweepEntry> penalty_sweep(const MetricSeries& series, std::span<const double> penalties,
                                      std::span<const std::int32_t> target = {});

/// `count` penalties spaced geometrically in [lo, hi].
std::vector<double> geometric_penalties(double lo, double hi, std::size_t count);

} // namespace cocite
