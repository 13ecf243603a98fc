#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cocite {

/// A statutory article: codex identifier plus article number.
struct ArticleId {
    std::string codex;
    std::int32_t article = 0;

    auto operator<=>(const ArticleId&) const = default;
    bool operator==(const ArticleId&) const = default;

    std::string str() const { return codex + ":" + std::to_string(article); }
};

struct ArticleIdHash {
    std::size_t operator()(const ArticleId& id) const noexcept
    {
        return std::hash<std::string>{}(id.codex) * 1000003u ^ std::hash<std::int32_t>{}(id.article);
    }
};

/// Column index into a snapshot vocabulary.
using ArticleIndex = std::uint32_t;
/// Row index into a snapshot case list.
using CaseIndex = std::uint32_t;

enum class Method : std::uint8_t { CN, AA, Degree, Random, BM25 };

/// Co-citation graph scorers handled by the LOO evaluator.
inline constexpr std::array<Method, 4> kGraphMethods{Method::CN, Method::AA, Method::Degree,
                                                     Method::Random};
inline constexpr std::array<Method, 5> kAllMethods{Method::CN, Method::AA, Method::Degree,
                                                   Method::Random, Method::BM25};

constexpr std::string_view method_name(Method m)
{
    switch (m) {
    case Method::CN: return "CN";
    case Method::AA: return "AA";
    case Method::Degree: return "Degree";
    case Method::Random: return "Random";
    case Method::BM25: return "BM25";
    }
    return "?";
}

/// Accepts the short names above plus common long spellings
/// ("adamic_adar", "common_neighbors", "degree", "random", "bm25"), case-insensitively.
std::optional<Method> parse_method(std::string_view name);

} // namespace cocite
