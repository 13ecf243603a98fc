#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Deliberately naive: dense matrices, full scans, exhaustive search.

#include "cocite/snapshot.hpp"
#include "cocite/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace cocite::oracle {

using Dense = std::vector<std::vector<std::int64_t>>;

inline Dense dense_incidence(const Snapshot& s)
{
    Dense m(s.cases.size(), std::vector<std::int64_t>(s.articles.size(), 0));
    for (std::size_t r = 0; r < s.cases.size(); ++r) {
        for (auto a : s.case_articles(static_cast<CaseIndex>(r))) {
            m[r][a] = 1;
        }
    }
    return m;
}

/// MᵀM with the diagonal zeroed.
inline Dense dense_cocitation(const Dense& m, std::size_t v)
{
    Dense c(v, std::vector<std::int64_t>(v, 0));
    for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = 0; j < v; ++j) {
            if (i == j) {
                continue;
            }
            for (const auto& row : m) {
                c[i][j] += row[i] * row[j];
            }
        }
    }
    return c;
}

inline std::vector<std::int64_t> dense_degree(const Dense& m, std::size_t v)
{
    std::vector<std::int64_t> d(v, 0);
    for (const auto& row : m) {
        for (std::size_t j = 0; j < v; ++j) {
            d[j] += row[j];
        }
    }
    return d;
}

struct DenseRank {
    ArticleIndex target;
    Method method;
    double rank;
};

/// Ranks of every masked target of case `r` for CN, AA and Degree.
inline std::vector<DenseRank> dense_ranks(const Dense& m, const Dense& c, const std::vector<std::int64_t>& d,
                                          std::size_t r)
{
    const std::size_t v = c.size();
    std::vector<std::size_t> cited;
    for (std::size_t j = 0; j < v; ++j) {
        if (m[r][j]) {
            cited.push_back(j);
        }
    }
    std::vector<DenseRank> out;
    for (std::size_t t : cited) {
        for (Method method : {Method::CN, Method::AA, Method::Degree}) {
            auto score = [&](std::size_t x) {
                double total = 0.0;
                if (method == Method::Degree) {
                    return static_cast<double>(d[x]);
                }
                for (std::size_t s : cited) {
                    if (s == t) {
                        continue;
                    }
                    double div = 1.0;
                    if (method == Method::AA) {
                        div = std::max(d[s] > 0 ? std::log(static_cast<double>(d[s])) : 0.0, 1.0);
                    }
                    total += static_cast<double>(c[s][x]) / div;
                }
                return total;
            };
            const double st = score(t);
            double greater = 0;
            double equal = 0;
            for (std::size_t x = 0; x < v; ++x) {
                if (x == t) {
                    continue;
                }
                bool in_context = m[r][x] != 0;
                if (in_context) {
                    continue;
                }
                const double sx = score(x);
                if (sx > st) {
                    greater += 1;
                } else if (sx == st) {
                    equal += 1;
                }
            }
            out.push_back({static_cast<ArticleIndex>(t), method, 1.0 + greater + 0.5 * equal});
        }
    }
    return out;
}

/// Gaussian -2 log-likelihood of xs[b, e) with floored MLE variance.
inline double segment_cost(const std::vector<double>& xs, std::size_t b, std::size_t e)
{
    const double m = static_cast<double>(e - b);
    double mean = 0.0;
    for (std::size_t i = b; i < e; ++i) {
        mean += xs[i];
    }
    mean /= m;
    double var = 0.0;
    for (std::size_t i = b; i < e; ++i) {
        var += (xs[i] - mean) * (xs[i] - mean);
    }
    var /= m;
    var = std::max(var, 1e-8);
    return m * (std::log(2.0 * 3.14159265358979323846) + std::log(var) + 1.0);
}

struct Segmentation {
    std::vector<std::size_t> starts; ///< start index of each segment after the first
    double cost = std::numeric_limits<double>::infinity();
};

/// Minimum penalized cost over every segmentation with segments of at
/// least `min_seg` points, by enumerating all 2^(n-1) cut sets.
inline Segmentation exhaustive_segmentation(const std::vector<double>& xs, double penalty, std::size_t min_seg)
{
    const std::size_t n = xs.size();
    Segmentation best;
    const std::uint64_t masks = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        std::vector<std::size_t> starts;
        for (std::size_t i = 1; i < n; ++i) {
            if (mask & (std::uint64_t{1} << (i - 1))) {
                starts.push_back(i);
            }
        }
        std::size_t prev = 0;
        bool ok = true;
        double cost = 0.0;
        for (std::size_t k = 0; k <= starts.size(); ++k) {
            const std::size_t end = k < starts.size() ? starts[k] : n;
            if (end - prev < min_seg) {
                ok = false;
                break;
            }
            cost += segment_cost(xs, prev, end);
            prev = end;
        }
        if (!ok) {
            continue;
        }
        cost += penalty * static_cast<double>(starts.size());
        if (cost < best.cost) {
            best = {starts, cost};
        }
    }
    return best;
}

} // namespace cocite::oracle
