#include "cocite/bm25.hpp"
#include "cocite/changepoint.hpp"
#include "cocite/citation_parser.hpp"
#include "cocite/cocitation.hpp"
#include "cocite/drift.hpp"
#include "cocite/errors.hpp"
#include "cocite/loo_evaluator.hpp"
#include "cocite/snapshot.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

namespace py = pybind11;
using namespace cocite;

namespace {

using PyCitation = std::tuple<std::string, std::int32_t>;
using PyDecision = std::tuple<std::string, std::int32_t, std::vector<PyCitation>>;

const CodexPatternTable& default_table()
{
    static const CodexPatternTable table = load_pattern_table(ukrainian_pattern_config());
    return table;
}

const CodexPatternTable& table_or_default(const CodexPatternTable* table)
{
    return table ? *table : default_table();
}

std::vector<Method> methods_from(const std::vector<std::string>& names)
{
    std::vector<Method> out;
    for (const auto& n : names) {
        const auto m = parse_method(n);
        if (!m || *m == Method::BM25) {
            throw ConfigError("unknown graph method '" + n + "'");
        }
        out.push_back(*m);
    }
    return out;
}

py::dict metrics_dict(const MetricsReport& r)
{
    py::dict d;
    d["n"] = r.n_predictions;
    d["mrr"] = r.mrr;
    for (std::size_t i = 0; i < kHitCutoffs.size(); ++i) {
        d[("hit" + std::to_string(kHitCutoffs[i])).c_str()] = r.hit_at[i];
    }
    d["ci_low"] = r.ci_low;
    d["ci_high"] = r.ci_high;
    return d;
}

EmbeddingBatch batch_of(std::vector<std::vector<double>> vectors)
{
    EmbeddingBatch b;
    b.vectors = std::move(vectors);
    return b;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Longitudinal co-citation retrieval evaluation";
    m.attr("__version__") = "0.3.1";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

    py::class_<CodexPatternTable>(m, "PatternTable")
        .def_static("load", &CodexPatternTable::load, py::arg("config_text"))
        .def_static("ukrainian", [] { return default_table(); })
        .def("codices", [](const CodexPatternTable& t) {
            std::vector<std::string> ids;
            for (const auto& e : t.entries()) {
                ids.push_back(e.id);
            }
            return ids;
        })
        .def("__len__", &CodexPatternTable::size);

    m.def("ukrainian_pattern_config", [] { return std::string(ukrainian_pattern_config()); });

    m.def(
        "extract_citations",
        [](const std::string& text, const CodexPatternTable* table) {
            std::vector<std::tuple<std::string, std::int32_t, std::size_t, std::size_t>> out;
            for (const auto& c : extract_citations(text, table_or_default(table))) {
                out.emplace_back(c.codex_id, c.article, c.span.start, c.span.end);
            }
            return out;
        },
        py::arg("text"), py::arg("table") = nullptr,
        "(codex, article, start, end) tuples; offsets are UTF-8 byte offsets.");

    m.def(
        "strip_citations",
        [](const std::string& text, const CodexPatternTable* table) {
            return strip_citations(text, table_or_default(table));
        },
        py::arg("text"), py::arg("table") = nullptr);

    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("year", &Snapshot::year)
        .def_property_readonly("articles",
                               [](const Snapshot& s) {
                                   std::vector<PyCitation> out;
                                   for (const auto& a : s.articles) {
                                       out.emplace_back(a.codex, a.article);
                                   }
                                   return out;
                               })
        .def_readonly("cases", &Snapshot::cases)
        .def_readonly("citation_counts", &Snapshot::citation_counts)
        .def("case_articles",
             [](const Snapshot& s, CaseIndex c) {
                 if (c >= s.cases.size()) {
                     throw py::index_error("case index out of range");
                 }
                 const auto row = s.case_articles(c);
                 return std::vector<ArticleIndex>(row.begin(), row.end());
             })
        .def("__len__", [](const Snapshot& s) { return s.cases.size(); });

    m.def(
        "build_snapshot",
        [](const std::vector<PyDecision>& decisions, std::int32_t year, std::uint64_t min_citations,
           std::size_t vocab_cap, std::size_t case_min, std::size_t case_max) {
            std::vector<DecisionRecord> recs;
            for (const auto& [doc, y, cites] : decisions) {
                std::vector<ArticleId> ids;
                for (const auto& [codex, article] : cites) {
                    ids.push_back({codex, article});
                }
                recs.push_back(DecisionRecord::from_ids(doc, y, ids));
            }
            return build_snapshot(recs, year, {min_citations, vocab_cap, case_min, case_max});
        },
        py::arg("decisions"), py::arg("year"), py::arg("min_citations") = 50, py::arg("vocab_cap") = 5000,
        py::arg("case_min") = 3, py::arg("case_max") = 200,
        "decisions: (doc_id, year, [(codex, article), ...]) tuples.");

    m.def(
        "evaluate",
        [](const Snapshot& snapshot, const std::vector<std::string>& methods, std::size_t sample_n,
           std::uint64_t seed, unsigned jobs, std::size_t bootstrap) {
            EvalOptions opt;
            opt.methods = methods_from(methods);
            opt.seed = seed;
            opt.jobs = jobs;
            std::vector<CaseIndex> cases;
            std::vector<PredictionRecord> records;
            {
                py::gil_scoped_release release;
                const auto cc = build_cocitation(snapshot.incidence);
                cases = sample_cases(snapshot, sample_n, seed);
                records = evaluate_cases(cases, snapshot, cc, opt);
            }
            py::dict out;
            for (const auto method : opt.methods) {
                const auto sel = select_method(records, method);
                const auto report = summarize(sel, {bootstrap, 0.95, seed, jobs});
                out[std::string(method_name(method)).c_str()] = metrics_dict(report);
            }
            return out;
        },
        py::arg("snapshot"), py::arg("methods") = std::vector<std::string>{"AA", "CN", "Degree", "Random"},
        py::arg("sample_n") = 200000, py::arg("seed") = 0, py::arg("jobs") = 1, py::arg("bootstrap") = 1000,
        "Leave-one-out metrics per method.");

    m.def(
        "predictions",
        [](const Snapshot& snapshot, const std::vector<std::string>& methods, std::size_t sample_n,
           std::uint64_t seed) {
            const auto cc = build_cocitation(snapshot.incidence);
            EvalOptions opt;
            opt.methods = methods_from(methods);
            opt.seed = seed;
            std::vector<std::tuple<CaseIndex, ArticleIndex, std::string, double>> out;
            for (const auto& r : evaluate_cases(sample_cases(snapshot, sample_n, seed), snapshot, cc, opt)) {
                out.emplace_back(r.case_index, r.target, std::string(method_name(r.method)), r.rank);
            }
            return out;
        },
        py::arg("snapshot"), py::arg("methods") = std::vector<std::string>{"AA"}, py::arg("sample_n") = 200000,
        py::arg("seed") = 0, "(case_index, target, method, rank) tuples.");

    m.def(
        "cocitation",
        [](const Snapshot& snapshot, ArticleIndex i, ArticleIndex j) {
            const auto cc = build_cocitation(snapshot.incidence);
            if (i >= cc.size() || j >= cc.size()) {
                throw py::index_error("article index out of range");
            }
            return cc.at(i, j);
        },
        py::arg("snapshot"), py::arg("i"), py::arg("j"));

    m.def(
        "bm25_scores",
        [](const std::vector<std::string>& texts, const std::string& query, double k1, double b) {
            ArticleTextStore store;
            for (std::size_t i = 0; i < texts.size(); ++i) {
                store.add({"doc", static_cast<std::int32_t>(i + 1)}, texts[i]);
            }
            return Bm25Index::build(store, {k1, b}).score(std::string_view(query));
        },
        py::arg("texts"), py::arg("query"), py::arg("k1") = 1.2, py::arg("b") = 0.75);

    m.def(
        "pelt",
        [](const std::vector<std::int32_t>& years, const std::vector<double>& values, std::optional<double> penalty) {
            if (years.size() != values.size()) {
                throw DataError("years and values differ in length");
            }
            std::vector<std::pair<std::int32_t, double>> pts;
            for (std::size_t i = 0; i < years.size(); ++i) {
                pts.push_back({years[i], values[i]});
            }
            const auto r = pelt_detect(MetricSeries(pts), penalty);
            py::dict d;
            d["breakpoints"] = r.breakpoints;
            d["penalty"] = r.penalty;
            d["cost"] = r.cost;
            py::list segs;
            for (const auto& s : r.segments) {
                segs.append(py::make_tuple(s.first_year, s.last_year, s.mean, s.variance));
            }
            d["segments"] = segs;
            return d;
        },
        py::arg("years"), py::arg("values"), py::arg("penalty") = py::none(),
        "PELT under a Gaussian mean+variance cost; segments are (first, last, mean, variance).");

    m.def(
        "drift",
        [](std::vector<std::vector<double>> a, std::vector<std::vector<double>> b) {
            return drift(batch_of(std::move(a)), batch_of(std::move(b))).drift;
        },
        py::arg("vectors_a"), py::arg("vectors_b"), "1 - cos between the two batch centroids.");
}
