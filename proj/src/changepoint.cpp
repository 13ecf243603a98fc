#include "cocite/changepoint.hpp"

#include "cocite/errors.hpp"
#include "cocite/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cocite {

MetricSeries::MetricSeries(std::vector<std::pair<std::int32_t, double>> points) : points_(std::move(points))
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].second)) {
            throw DataError("metric value for " + std::to_string(points_[i].first) + " is not finite");
        }
        if (i > 0 && points_[i].first <= points_[i - 1].first) {
            throw DataError("metric series years must be strictly increasing");
        }
    }
}

std::vector<double> MetricSeries::values() const
{
    std::vector<double> v;
    v.reserve(points_.size());
    for (const auto& p : points_) {
        v.push_back(p.second);
    }
    return v;
}

MetricSeries MetricSeries::without_year(std::int32_t year) const
{
    auto pts = points_;
    std::erase_if(pts, [&](const auto& p) { return p.first == year; });
    return MetricSeries(std::move(pts));
}

namespace {

std::pair<double, double> mean_var(std::span<const double> values, std::size_t begin, std::size_t end)
{
    const auto m = static_cast<double>(end - begin);
    double mean = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        mean += values[i];
    }
    mean /= m;
    double ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        ss += (values[i] - mean) * (values[i] - mean);
    }
    return {mean, ss / m};
}

} // namespace

double gaussian_segment_cost(std::span<const double> values, std::size_t begin, std::size_t end)
{
    const auto var = mean_var(values, begin, end).second;
    const auto m = static_cast<double>(end - begin);
    return m * (std::log(2.0 * std::numbers::pi) + std::log(std::max(var, kVarianceFloor)) + 1.0);
}

double bic_penalty(std::size_t n) { return 2.0 * std::log(static_cast<double>(n)); }

double segmentation_cost(std::span<const double> values, std::span<const std::size_t> starts, double penalty)
{
    double total = 0.0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= starts.size(); ++i) {
        const std::size_t end = i < starts.size() ? starts[i] : values.size();
        total += gaussian_segment_cost(values, begin, end);
        begin = end;
    }
    return total + penalty * static_cast<double>(starts.size());
}

std::vector<std::size_t> pelt_segment(std::span<const double> values, double penalty, std::size_t min_segment)
{
    const std::size_t n = values.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> f(n + 1, inf);
    std::vector<std::size_t> last(n + 1, 0);
    f[0] = -penalty;

    struct Candidate {
        std::size_t s;
        std::size_t dead_from; ///< first t at which s may no longer be used
    };
    constexpr std::size_t alive = std::numeric_limits<std::size_t>::max();
    std::vector<Candidate> cands{{0, alive}};

    for (std::size_t t = min_segment; t <= n; ++t) {
        std::erase_if(cands, [&](const Candidate& c) { return c.dead_from <= t; });
        std::vector<double> partial(cands.size(), inf);
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const std::size_t s = cands[k].s;
            if (t - s < min_segment || f[s] == inf) {
                continue;
            }
            partial[k] = f[s] + gaussian_segment_cost(values, s, t);
            if (partial[k] + penalty < f[t]) {
                f[t] = partial[k] + penalty;
                last[t] = s;
            }
        }
        // A pruned start can still end a segment at t' < t + min_segment,
        // where t itself is not yet a usable start.
        for (std::size_t k = 0; k < cands.size(); ++k) {
            if (partial[k] != inf && partial[k] > f[t] && cands[k].dead_from == alive) {
                cands[k].dead_from = t + min_segment;
            }
        }
        if (t + min_segment <= n) {
            cands.push_back({t, alive});
        }
    }
    if (f[n] == inf) {
        throw TooShort("series of " + std::to_string(n) + " points cannot hold a segment of " +
                       std::to_string(min_segment));
    }
    std::vector<std::size_t> starts;
    for (std::size_t t = n; last[t] != 0; t = last[t]) {
        starts.push_back(last[t]);
    }
    std::reverse(starts.begin(), starts.end());
    return starts;
}

ChangepointResult pelt_detect(const MetricSeries& series, std::optional<double> penalty, std::size_t min_segment)
{
    if (min_segment < 2) {
        throw ConfigError("minimum segment length must be at least 2");
    }
    const std::size_t n = series.size();
    if (n < 2 * min_segment) {
        throw TooShort("changepoint detection needs at least " + std::to_string(2 * min_segment) +
                       " points, got " + std::to_string(n));
    }
    const auto values = series.values();
    ChangepointResult result;
    result.penalty = penalty.value_or(bic_penalty(n));
    if (!std::isfinite(result.penalty) || result.penalty < 0.0) {
        throw ConfigError("changepoint penalty must be finite and non-negative");
    }
    const auto starts = pelt_segment(values, result.penalty, min_segment);
    result.cost = segmentation_cost(values, starts, result.penalty);
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= starts.size(); ++i) {
        const std::size_t end = i < starts.size() ? starts[i] : n;
        const auto [mean, var] = mean_var(values, begin, end);
        result.segments.push_back({series.points()[begin].first, series.points()[end - 1].first, mean, var});
        if (i < starts.size()) {
            result.breakpoints.push_back(series.points()[end].first);
        }
        begin = end;
    }
    return result;
}

std::map<Method, MetricSeries> load_metric_series(const std::filesystem::path& path, std::string_view metric)
{
    const auto table = CsvTable::read(path);
    const auto year_col = table.column("year");
    const auto method_col = table.column("method");
    const auto value_col = table.column(metric);
    std::map<Method, std::vector<std::pair<std::int32_t, double>>> raw;
    for (const auto& row : table.rows()) {
        auto m = parse_method(row[method_col]);
        if (!m) {
            throw DataError(path.string() + ": unknown method '" + row[method_col] + "'");
        }
        raw[*m].emplace_back(static_cast<std::int32_t>(parse_int(row[year_col], "year")),
                             parse_double(row[value_col], metric));
    }
    std::map<Method, MetricSeries> out;
    for (auto& [m, pts] : raw) {
        std::sort(pts.begin(), pts.end());
        out.emplace(m, MetricSeries(std::move(pts)));
    }
    return out;
}

std::vector<SweepEntry> penalty_sweep(const MetricSeries& series, std::span<const double> penalties,
                                      std::span<const std::int32_t> target)
{
    std::vector<SweepEntry> out;
    for (double p : penalties) {
        SweepEntry e{pelt_detect(series, p), 0};
        for (auto y : e.result.breakpoints) {
            e.distance += std::find(target.begin(), target.end(), y) == target.end();
        }
        for (auto y : target) {
            e.distance += std::find(e.result.breakpoints.begin(), e.result.breakpoints.end(), y) ==
                          e.result.breakpoints.end();
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<double> geometric_penalties(double lo, double hi, std::size_t count)
{
    if (!(lo > 0.0 && hi >= lo) || count == 0) {
        throw ConfigError("penalty sweep needs 0 < lo <= hi and at least one value");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double u = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(lo * std::pow(hi / lo, u));
    }
    return out;
}

} // namespace cocite
