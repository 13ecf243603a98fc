#include "cocite/citation_parser.hpp"
#include "cocite/errors.hpp"
#include "cocite/io.hpp"
#include "cocite/pipeline.hpp"
#include "cocite/synthetic.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace cocite;

namespace {

struct GlobalOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> jobs;
    bool dry_run = false;
    std::string output_dir;
    std::optional<double> penalty;
    std::string metrics;
    std::string expected;
};

const std::vector<std::string> kStages{"extract", "snapshot", "eval", "ablate", "bm25", "drift", "report"};

RunConfig resolve_config(const GlobalOptions& g)
{
    RunConfig c = g.config.empty() ? parse_run_config("", fs::current_path(), cocite_environment())
                                   : load_run_config(g.config);
    if (g.seed) {
        c.seed = *g.seed;
    }
    if (g.jobs) {
        if (*g.jobs == 0) {
            throw ConfigError("--jobs must be at least 1");
        }
        c.jobs = *g.jobs;
    }
    if (!g.output_dir.empty()) {
        c.output_dir = fs::absolute(g.output_dir).lexically_normal();
    }
    if (g.penalty) {
        if (!(*g.penalty >= 0.0)) {
            throw ConfigError("--penalty must be non-negative");
        }
        c.penalty = g.penalty;
    }
    if (!g.metrics.empty()) {
        c.metrics_path = fs::absolute(g.metrics).lexically_normal();
    }
    if (!g.expected.empty()) {
        c.expected_breakpoints.clear();
        std::stringstream ss(g.expected);
        for (std::string item; std::getline(ss, item, ',');) {
            c.expected_breakpoints.push_back(static_cast<std::int32_t>(parse_int(item, "--expected")));
        }
    }
    return c;
}

void run_stage(const std::string& stage, const RunConfig& c, RunManifest& m)
{
    if (stage == "extract") {
        run_extract(c, m);
    } else if (stage == "snapshot") {
        run_snapshot(c, m);
    } else if (stage == "eval") {
        run_eval(c, m);
    } else if (stage == "ablate") {
        run_ablate(c, m);
    } else if (stage == "bm25") {
        run_bm25(c, m);
    } else if (stage == "drift") {
        run_drift(c, m);
    } else if (stage == "changepoint") {
        run_changepoint(c, m);
    } else if (stage == "report") {
        run_report(c, m);
    } else {
        throw InvariantError("unknown stage '" + stage + "'");
    }
}

int run_command(const std::string& command, const GlobalOptions& g)
{
    std::optional<RunConfig> config;
    try {
        config = resolve_config(g);
        validate_stage(*config, command);
    } catch (const std::exception& e) {
        std::cerr << "cocite " << command << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    const auto& c = *config;
    if (g.dry_run) {
        std::cout << "config ok: " << command << " digest=" << c.digest() << " output_dir=" << c.output_dir.string()
                  << "\n";
        return 0;
    }
    RunManifest manifest(c, command);
    int code = 0;
    try {
        if (command == "pipeline") {
            for (const auto& stage : kStages) {
                if (stage == "bm25" && c.article_texts_path.empty()) {
                    continue;
                }
                manifest.stage(stage, [&] { run_stage(stage, c, manifest); });
            }
        } else {
            manifest.stage(command, [&] { run_stage(command, c, manifest); });
        }
    } catch (const std::exception& e) {
        std::cerr << "cocite " << command << ": " << e.what() << "\n";
        code = exit_code_for(e);
    }
    try {
        manifest.write(c.output_dir / ("manifest_" + command + ".json"), code);
    } catch (const std::exception& e) {
        std::cerr << "cocite " << command << ": cannot write manifest: " << e.what() << "\n";
        if (code == 0) {
            code = exit_code_for(e);
        }
    }
    return code;
}

struct SynthOptions {
    std::string out = "synthetic";
    SyntheticParams params{};
    double drift_step = 0.15;
};

int run_synth(const SynthOptions& o, bool dry_run)
{
    try {
        const auto corpus = generate_corpus(o.params);
        if (dry_run) {
            std::cout << "synthetic corpus ok: " << corpus.decisions.size() << " decisions\n";
            return 0;
        }
        const fs::path dir = o.out;
        const auto texts = render_texts(corpus);
        std::string lines;
        for (const auto& d : corpus.decisions) {
            nlohmann::ordered_json rec;
            rec["doc_id"] = d.doc_id;
            rec["year"] = d.year;
            rec["text"] = texts.at(d.doc_id);
            lines += rec.dump() + "\n";
        }
        write_file_atomic(dir / "corpus.jsonl", lines);

        lines.clear();
        for (const auto& [id, text] : render_article_texts(corpus)) {
            nlohmann::ordered_json rec;
            rec["codex"] = id.codex;
            rec["article"] = id.article;
            rec["text"] = text;
            lines += rec.dump() + "\n";
        }
        write_file_atomic(dir / "article_texts.jsonl", lines);

        const auto last = static_cast<std::int32_t>(o.params.first_year + static_cast<std::int32_t>(o.params.years) - 1);
        std::map<std::string, double> angle;
        for (std::size_t i = 0; i < o.params.codices; ++i) {
            angle[synthetic_codices()[i]] = o.drift_step * static_cast<double>(i + 1);
        }
        if (o.params.years > 1) {
            write_file_atomic(dir / "vectors.jsonl",
                              synthetic_embeddings_jsonl(corpus.articles, o.params.first_year, last, angle, 8, 16,
                                                         0.05, o.params.seed));
        }
        write_file_atomic(dir / "patterns.conf", ukrainian_pattern_config());

        std::ostringstream cfg;
        cfg << "# synthetic corpus: " << corpus.decisions.size() << " decisions, seed " << o.params.seed << "\n"
            << "corpus = \"corpus.jsonl\"\n"
            << "patterns = \"patterns.conf\"\n"
            << "output_dir = \"out\"\n"
            << "seed = " << o.params.seed << "\n"
            << "sample_n = 200000\n"
            << "bootstrap = 200\n\n"
            << "[filters]\nmin_citations = 5\nvocab_cap = 5000\ncase_min = 3\ncase_max = 200\n\n"
            << "[ablation]\nfixed_min_citations = 5\n\n"
            << "[bm25]\narticle_texts = \"article_texts.jsonl\"\n";
        if (o.params.years > 1) {
            cfg << "\n[drift]\nvectors = \"vectors.jsonl\"\nsnippets_per_year = 50\n";
        }
        write_file_atomic(dir / "config.toml", cfg.str());
        std::cout << "wrote " << corpus.decisions.size() << " decisions to " << dir.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "cocite synth: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Longitudinal co-citation retrieval evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    app.add_option("--config", g.config, "Run configuration file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed, "Override the configured seed");
    auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads");
    app.add_flag("--dry-run", g.dry_run, "Validate the configuration and inputs only");
    app.add_option("--output-dir", g.output_dir, "Override the configured output directory");

    const std::vector<std::pair<std::string, std::string>> stage_help{
        {"extract", "Extract codex citations from the corpus"},
        {"snapshot", "Build annual snapshots"},
        {"eval", "Leave-one-out evaluation per year"},
        {"ablate", "Fixed-vocabulary and temporal-split ablations"},
        {"bm25", "BM25 text baseline against AA"},
        {"drift", "Snippet sampling and embedding drift"},
        {"changepoint", "PELT changepoints on a temporal metrics file"},
        {"report", "Stratification, per-article and Jaccard reports"},
        {"pipeline", "Run extract through report in order"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : stage_help) {
        subs[name] = app.add_subcommand(name, help);
    }
    double penalty = 0.0;
    auto* penalty_opt = subs["changepoint"]->add_option("--penalty", penalty, "Penalty per changepoint");
    subs["changepoint"]->add_option("--metrics", g.metrics, "Temporal metrics CSV");
    subs["changepoint"]->add_option("--expected", g.expected, "Comma-separated target breakpoint years");

    SynthOptions so;
    auto* synth = app.add_subcommand("synth", "Write a synthetic corpus with matching config");
    synth->add_option("--out", so.out, "Output directory");
    synth->add_option("--articles", so.params.articles);
    synth->add_option("--codices", so.params.codices);
    synth->add_option("--templates", so.params.templates);
    synth->add_option("--cases-per-year", so.params.cases_per_year);
    synth->add_option("--years", so.params.years);
    synth->add_option("--first-year", so.params.first_year);
    synth->add_option("--epsilon", so.params.epsilon);
    synth->add_option("--shift", so.params.shift);
    synth->add_option("--drift-step", so.drift_step, "Rotation (radians) added per codex");
    so.params.cases_per_year = 250;
    so.params.years = 2;

    auto* patterns = app.add_subcommand("patterns", "Print the built-in Ukrainian pattern table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (*seed_opt) {
        g.seed = seed;
    }
    if (*jobs_opt) {
        g.jobs = jobs;
    }
    if (*penalty_opt) {
        g.penalty = penalty;
    }
    if (patterns->parsed()) {
        std::cout << ukrainian_pattern_config();
        return 0;
    }
    if (synth->parsed()) {
        so.params.seed = g.seed.value_or(0);
        return run_synth(so, g.dry_run);
    }
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) {
            return run_command(name, g);
        }
    }
    return 1;
}
