#include "cocite/cocitation.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace cocite;

TEST_CASE("single case and identity matrices")
{
    auto one = cocite::testing::make_snapshot(2, {{0, 1}});
    auto cc = build_cocitation(one.incidence);
    CHECK(cc.at(0, 1) == 1);
    CHECK(cc.at(1, 0) == 1);
    CHECK(cc.at(0, 0) == 0);
    CHECK(cc.degrees() == std::vector<std::uint32_t>{1, 1});

    auto id = cocite::testing::make_snapshot(3, {{0}, {1}, {2}});
    auto ci = build_cocitation(id.incidence);
    CHECK(ci.nnz() == 0);
    CHECK(ci.total() == 0);
    CHECK(ci.degrees() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("sparse C equals dense MtM on random graphs")
{
    std::mt19937_64 rng(11);
    for (int g = 0; g < 50; ++g) {
        const auto s = cocite::testing::random_snapshot(rng, 50, 200, 10);
        const auto cc = build_cocitation(s.incidence);
        const auto m = oracle::dense_incidence(s);
        const auto c = oracle::dense_cocitation(m, 50);
        const auto d = oracle::dense_degree(m, 50);
        std::int64_t total = 0;
        for (ArticleIndex i = 0; i < 50; ++i) {
            CHECK(cc.degrees()[i] == d[i]);
            for (ArticleIndex j = 0; j < 50; ++j) {
                REQUIRE(cc.at(i, j) == c[i][j]);
                REQUIRE(cc.at(i, j) == cc.at(j, i));
                total += c[i][j];
            }
        }
        CHECK(cc.total() == static_cast<std::uint64_t>(total));
    }
}

TEST_CASE("scorers")
{
    // a and b always co-occur in two cases.
    auto s = cocite::testing::make_snapshot(3, {{0, 1}, {0, 1}, {2}});
    auto cc = build_cocitation(s.incidence);
    const std::vector<ArticleIndex> ctx{0};
    CHECK(score_cn(ctx, cc).scores[1] == 2.0);
    CHECK(score_cn(ctx, cc).scores[2] == 0.0);
    // Every divisor clamps to 1 when d <= e.
    CHECK(score_aa(ctx, cc).scores == score_cn(ctx, cc).scores);
    CHECK(score_degree(cc).scores == std::vector<double>{2, 2, 1});
    CHECK(aa_divisor(0) == 1.0);
    CHECK(aa_divisor(2) == 1.0);
    CHECK(aa_divisor(100) == doctest::Approx(std::log(100.0)));

    const auto r1 = score_random(100, 5);
    CHECK(r1.scores == score_random(100, 5).scores);
    CHECK(r1.scores != score_random(100, 6).scores);
    for (double x : r1.scores) {
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("AA with d = e^2 halves the weight")
{
    // d[0] = 7, so each co-citation is weighted 1 / ln 7.
    std::vector<std::vector<ArticleIndex>> rows;
    for (int i = 0; i < 7; ++i) {
        rows.push_back({0, 1});
    }
    auto s = cocite::testing::make_snapshot(2, rows);
    auto cc = build_cocitation(s.incidence);
    const std::vector<ArticleIndex> ctx{0};
    CHECK(score_aa(ctx, cc).scores[1] == doctest::Approx(7.0 / std::log(7.0)).epsilon(1e-15));
}

TEST_CASE("duplicating every case scales CN and keeps its order")
{
    std::mt19937_64 rng(3);
    const auto s = cocite::testing::random_snapshot(rng, 30, 60);
    std::vector<std::vector<ArticleIndex>> rows;
    for (CaseIndex c = 0; c < s.cases.size(); ++c) {
        auto r = s.case_articles(c);
        rows.emplace_back(r.begin(), r.end());
        rows.emplace_back(r.begin(), r.end());
    }
    const auto s2 = cocite::testing::make_snapshot(30, rows);
    const auto a = build_cocitation(s.incidence);
    const auto b = build_cocitation(s2.incidence);
    const std::vector<ArticleIndex> ctx{1, 4, 9};
    const auto sa = score_cn(ctx, a).scores;
    const auto sb = score_cn(ctx, b).scores;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sb[i] == 2 * sa[i]);
    }
}
