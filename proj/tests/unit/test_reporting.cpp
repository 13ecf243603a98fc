#include "cocite/cocitation.hpp"
#include "cocite/errors.hpp"
#include "cocite/io.hpp"
#include "cocite/reporting.hpp"
#include "test_support.hpp"

#include <set>

using namespace cocite;

TEST_CASE("Jaccard matches case-set intersections")
{
    std::mt19937_64 rng(12);
    const auto s = cocite::testing::random_snapshot(rng, 25, 120, 6);
    const auto cc = build_cocitation(s.incidence);
    std::vector<std::set<CaseIndex>> cases_of(25);
    for (CaseIndex c = 0; c < s.cases.size(); ++c) {
        for (auto a : s.case_articles(c)) {
            cases_of[a].insert(c);
        }
    }
    const auto top = top_degree_articles(cc, 10);
    REQUIRE(top.size() == 10);
    for (std::size_t i = 1; i < top.size(); ++i) {
        const auto da = cc.degrees()[top[i - 1]];
        const auto db = cc.degrees()[top[i]];
        CHECK((da > db || (da == db && top[i - 1] < top[i])));
    }
    const auto rows = cocitation_jaccard(cc, top);
    CHECK(rows.size() == 90);
    for (const auto& r : rows) {
        std::set<CaseIndex> both;
        std::set<CaseIndex> either = cases_of[r.i];
        for (auto c : cases_of[r.i]) {
            if (cases_of[r.j].count(c)) {
                both.insert(c);
            }
        }
        either.insert(cases_of[r.j].begin(), cases_of[r.j].end());
        CHECK(r.i != r.j);
        CHECK(r.cocitations == both.size());
        CHECK(r.jaccard == doctest::Approx(static_cast<double>(both.size()) / either.size()).epsilon(1e-15));
    }
    CHECK(top_degree_articles(cc, 1000).size() == 25);
}

TEST_CASE("temporal metrics CSV")
{
    CHECK_THROWS_AS(temporal_metrics_csv({}, OutputMeta{}), NoReports);
    MetricsReport m = compute_metrics_from_ranks(std::vector<double>{1, 2, 10});
    const std::vector<YearMethodReport> rows{{2015, Method::AA, m}, {2015, Method::CN, m}};
    const auto text = temporal_metrics_csv(rows, OutputMeta{.seed = 3, .config_digest = "d", .extra = {}});
    const auto t = CsvTable::parse(text);
    CHECK(t.columns() == std::vector<std::string>{"year", "method", "n", "mrr", "hit1", "hit5", "hit10", "hit20",
                                                  "ci_low", "ci_high"});
    REQUIRE(t.rows().size() == 2);
    CHECK(t.rows()[0][1] == "AA");
    CHECK(parse_double(t.rows()[0][t.column("mrr")], "mrr") == m.mrr);
    CHECK(text.rfind("# ", 0) == 0);
}

TEST_CASE("predictions round trip")
{
    std::mt19937_64 rng(1);
    const auto s = cocite::testing::random_snapshot(rng, 20, 30);
    const auto cc = build_cocitation(s.incidence);
    EvalOptions o;
    o.seed = 4;
    const auto cases = sample_cases(s, 30, 0);
    const auto recs = evaluate_cases(cases, s, cc, o);
    const auto dir = cocite::testing::scratch_dir("predictions");
    write_file_atomic(dir / "p.csv", predictions_csv(recs, s, OutputMeta{}));
    const auto back = load_predictions(dir / "p.csv", s);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i] == recs[i]);
    }
}

TEST_CASE("article performance groups by target")
{
    std::vector<PredictionRecord> recs;
    for (ArticleIndex t : {2u, 0u, 2u, 1u}) {
        PredictionRecord r;
        r.target = t;
        r.rank = t + 1.0;
        recs.push_back(r);
    }
    const auto perf = article_performance(recs);
    REQUIRE(perf.size() == 3);
    CHECK(perf[0].article == 0);
    CHECK(perf[2].report.n_predictions == 2);
    CHECK(perf[2].report.mrr == doctest::Approx(1.0 / 3));
}

TEST_CASE("join years")
{
    const std::vector<std::int32_t> y{2014, 2017, 2019};
    CHECK(join_years(y) == "2014;2017;2019");
    CHECK(join_years({}).empty());
}
