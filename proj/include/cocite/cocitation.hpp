#pragma once

#include "cocite/snapshot.hpp"
#include "cocite/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace cocite {

/// Symmetric article co-citation counts C = MᵀM with a zero diagonal, in
/// CSR form, plus the per-article case counts d (column sums of M).
class CoCitationMatrix {
  public:
    CoCitationMatrix() = default;

    std::size_t size() const { return degrees_.size(); }
    std::span<const ArticleIndex> neighbors(ArticleIndex i) const
    {
        return {cols_.data() + ptr_[i], ptr_[i + 1] - ptr_[i]};
    }
    std::span<const std::uint32_t> counts(ArticleIndex i) const
    {
        return {vals_.data() + ptr_[i], ptr_[i + 1] - ptr_[i]};
    }
    /// C[i][j] by binary search over row i.
    std::uint32_t at(ArticleIndex i, ArticleIndex j) const;
    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    std::size_t nnz() const { return vals_.size(); }
    /// Sum of all entries of C.
    std::uint64_t total() const;

    friend CoCitationMatrix build_cocitation(const SparseBinaryMatrix& incidence);

  private:
    std::vector<std::size_t> ptr_{0};
    std::vector<ArticleIndex> cols_;
    std::vector<std::uint32_t> vals_;
    std::vector<std::uint32_t> degrees_;
};

CoCitationMatrix build_cocitation(const SparseBinaryMatrix& incidence);

struct ScoreVector {
    std::vector<double> scores;
    Method method = Method::CN;
};

/// Adamic-Adar context weight denominator: max(ln d, 1), with d = 0 giving 1.
inline double aa_divisor(std::uint32_t degree)
{
    return degree == 0 ? 1.0 : std::max(std::log(static_cast<double>(degree)), 1.0);
}

/// Adds, for each context article s in the given order, C[s][v] (CN) or
/// C[s][v] / aa_divisor(d[s]) (AA) into `acc[v]`. Only CN and AA are valid.
void accumulate_scores(Method method, std::span<const ArticleIndex> context,
                       const CoCitationMatrix& cc, std::span<double> acc);

ScoreVector score_cn(std::span<const ArticleIndex> context, const CoCitationMatrix& cc);
ScoreVector score_aa(std::span<const ArticleIndex> context, const CoCitationMatrix& cc);
ScoreVector score_degree(const CoCitationMatrix& cc);
/// Uniform[0,1) scores, 53-bit, from a SplitMix64 stream seeded with `seed`.
ScoreVector score_random(std::size_t v_count, std::uint64_t seed);
void fill_random_scores(std::uint64_t seed, std::span<double> out);

/// SplitMix64 finaliser; combines seeds into well-separated streams.
constexpr std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix_seed(mix_seed(a) ^ b); }

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    return mix_seed(mix_seed(a, b) ^ (c * 0xD6E8FEB86659FD93ull));
}

/// Sparse (i, j, count) triplets for i < j, one line per pair.
void write_cocitation_csv(const CoCitationMatrix& cc, const Snapshot& snapshot,
                          const std::filesystem::path& path, const OutputMeta& meta);

} // namespace cocite
