#include "cocite/pipeline.hpp"

#include "cocite/bm25.hpp"
#include "cocite/changepoint.hpp"
#include "cocite/citation_parser.hpp"
#include "cocite/cocitation.hpp"
#include "cocite/drift.hpp"
#include "cocite/errors.hpp"
#include "cocite/kv_config.hpp"
#include "cocite/parallel.hpp"
#include "cocite/reporting.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

extern char** environ;

namespace cocite {

namespace fs = std::filesystem;

namespace {

struct KeySpec {
    const char* key; ///< "section.name" or "name"
    std::function<void(RunConfig&, const KvValue&, const fs::path&)> apply;
};

fs::path resolve(const fs::path& base, const std::string& value)
{
    if (value.empty()) {
        return {};
    }
    fs::path p(value);
    return (p.is_absolute() ? p : base / p).lexically_normal();
}

std::vector<std::int32_t> int_list(const KvValue& v)
{
    std::vector<std::int32_t> out;
    for (const auto& item : v.items) {
        out.push_back(static_cast<std::int32_t>(parse_int(item, "integer list")));
    }
    return out;
}

std::size_t non_negative(const KvValue& v, const char* key)
{
    const auto x = v.as_int();
    if (x < 0) {
        throw ParseError(v.line, std::string(key) + " must not be negative");
    }
    return static_cast<std::size_t>(x);
}

Method method_of(const std::string& name, std::size_t line)
{
    auto m = parse_method(name);
    if (!m) {
        throw ParseError(line, "unknown method '" + name + "'");
    }
    return *m;
}

const std::vector<KeySpec>& key_specs()
{
    static const std::vector<KeySpec> specs = {
        {"corpus", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.corpus_path = resolve(b, v.as_string()); }},
        {"patterns", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.pattern_table_path = resolve(b, v.as_string()); }},
        {"output_dir", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.output_dir = resolve(b, v.as_string()); }},
        {"years", [](RunConfig& c, const KvValue& v, const fs::path&) { c.years = int_list(v); }},
        {"seed", [](RunConfig& c, const KvValue& v, const fs::path&) { c.seed = non_negative(v, "seed"); }},
        {"sample_n", [](RunConfig& c, const KvValue& v, const fs::path&) { c.sample_n = non_negative(v, "sample_n"); }},
        {"methods",
         [](RunConfig& c, const KvValue& v, const fs::path&) {
             c.methods.clear();
             for (const auto& m : v.items) {
                 auto method = method_of(m, v.line);
                 if (method == Method::BM25) {
                     throw ParseError(v.line, "BM25 runs in the bm25 stage, not in methods");
                 }
                 c.methods.push_back(method);
             }
         }},
        {"bootstrap", [](RunConfig& c, const KvValue& v, const fs::path&) { c.bootstrap = non_negative(v, "bootstrap"); }},
        {"jobs", [](RunConfig& c, const KvValue& v, const fs::path&) { c.jobs = static_cast<unsigned>(non_negative(v, "jobs")); }},
        {"filters.min_citations", [](RunConfig& c, const KvValue& v, const fs::path&) { c.filters.min_citations = non_negative(v, "min_citations"); }},
        {"filters.vocab_cap", [](RunConfig& c, const KvValue& v, const fs::path&) { c.filters.vocab_cap = non_negative(v, "vocab_cap"); }},
        {"filters.case_min", [](RunConfig& c, const KvValue& v, const fs::path&) { c.filters.case_min = non_negative(v, "case_min"); }},
        {"filters.case_max", [](RunConfig& c, const KvValue& v, const fs::path&) { c.filters.case_max = non_negative(v, "case_max"); }},
        {"ablation.fixed_vocab", [](RunConfig& c, const KvValue& v, const fs::path&) { c.ablate_fixed_vocab = v.as_bool(); }},
        {"ablation.temporal_split", [](RunConfig& c, const KvValue& v, const fs::path&) { c.ablate_temporal_split = v.as_bool(); }},
        {"ablation.train_fraction", [](RunConfig& c, const KvValue& v, const fs::path&) { c.train_fraction = v.as_double(); }},
        {"ablation.fixed_min_citations", [](RunConfig& c, const KvValue& v, const fs::path&) { c.fixed_min_citations = non_negative(v, "fixed_min_citations"); }},
        {"ablation.fixed_year_a", [](RunConfig& c, const KvValue& v, const fs::path&) { c.fixed_year_a = static_cast<std::int32_t>(v.as_int()); }},
        {"ablation.fixed_year_b", [](RunConfig& c, const KvValue& v, const fs::path&) { c.fixed_year_b = static_cast<std::int32_t>(v.as_int()); }},
        {"bm25.article_texts", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.article_texts_path = resolve(b, v.as_string()); }},
        {"bm25.k1", [](RunConfig& c, const KvValue& v, const fs::path&) { c.bm25_k1 = v.as_double(); }},
        {"bm25.b", [](RunConfig& c, const KvValue& v, const fs::path&) { c.bm25_b = v.as_double(); }},
        {"drift.year_a", [](RunConfig& c, const KvValue& v, const fs::path&) { c.drift_year_a = static_cast<std::int32_t>(v.as_int()); }},
        {"drift.year_b", [](RunConfig& c, const KvValue& v, const fs::path&) { c.drift_year_b = static_cast<std::int32_t>(v.as_int()); }},
        {"drift.vectors", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.vectors_path = resolve(b, v.as_string()); }},
        {"drift.snippets_per_year", [](RunConfig& c, const KvValue& v, const fs::path&) { c.snippets_per_year = non_negative(v, "snippets_per_year"); }},
        {"drift.window", [](RunConfig& c, const KvValue& v, const fs::path&) { c.snippet_window = non_negative(v, "window"); }},
        {"changepoint.metrics", [](RunConfig& c, const KvValue& v, const fs::path& b) { c.metrics_path = resolve(b, v.as_string()); }},
        {"changepoint.method", [](RunConfig& c, const KvValue& v, const fs::path&) { c.changepoint_method = method_of(v.as_string(), v.line); }},
        {"changepoint.metric", [](RunConfig& c, const KvValue& v, const fs::path&) { c.changepoint_metric = v.as_string(); }},
        {"changepoint.penalty", [](RunConfig& c, const KvValue& v, const fs::path&) { c.penalty = v.as_double(); }},
        {"changepoint.exclude_years", [](RunConfig& c, const KvValue& v, const fs::path&) { c.exclude_years = int_list(v); }},
        {"changepoint.sweep", [](RunConfig& c, const KvValue& v, const fs::path&) { c.penalty_sweep = non_negative(v, "sweep"); }},
        {"changepoint.expected", [](RunConfig& c, const KvValue& v, const fs::path&) { c.expected_breakpoints = int_list(v); }},
        {"report.jaccard_top", [](RunConfig& c, const KvValue& v, const fs::path&) { c.jaccard_top = non_negative(v, "jaccard_top"); }},
    };
    return specs;
}

std::string env_name(std::string_view key)
{
    std::string out = "COCITE_";
    for (char ch : key) {
        out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    return out;
}

KvValue env_value(const std::string& name, const std::string& raw)
{
    auto parse = [](const std::string& text) {
        auto sections = parse_kv_config("v = " + text + "\n");
        return sections.front().values.at("v");
    };
    try {
        return parse(raw);
    } catch (const ParseError&) {
        if (!raw.empty() && (raw.front() == '"' || raw.front() == '\'' || raw.front() == '[')) {
            throw ConfigError(name + ": cannot parse value '" + raw + "'");
        }
        return parse("'" + raw + "'");
    }
}

void check_config(const RunConfig& c)
{
    if (c.filters.case_min < 3) {
        throw ConfigError("filters.case_min must be at least 3 (a case needs a context of 2)");
    }
    if (c.filters.case_max < c.filters.case_min) {
        throw ConfigError("filters.case_max must not be below filters.case_min");
    }
    if (c.filters.vocab_cap == 0) {
        throw ConfigError("filters.vocab_cap must be positive");
    }
    if (c.sample_n == 0) {
        throw ConfigError("sample_n must be positive");
    }
    if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
        throw ConfigError("ablation.train_fraction must lie strictly between 0 and 1");
    }
    if (c.methods.empty()) {
        throw ConfigError("methods must not be empty");
    }
    if (!(c.bm25_k1 >= 0.0) || !(c.bm25_b >= 0.0 && c.bm25_b <= 1.0)) {
        throw ConfigError("bm25.k1 must be non-negative and bm25.b must lie in [0, 1]");
    }
    if (c.penalty && !(std::isfinite(*c.penalty) && *c.penalty >= 0.0)) {
        throw ConfigError("changepoint.penalty must be finite and non-negative");
    }
    if (c.changepoint_metric != "mrr" && c.changepoint_metric != "hit1" && c.changepoint_metric != "hit5" &&
        c.changepoint_metric != "hit10" && c.changepoint_metric != "hit20") {
        throw ConfigError("changepoint.metric must be one of mrr, hit1, hit5, hit10, hit20");
    }
}

std::string opt_str(const std::optional<std::int32_t>& v) { return v ? std::to_string(*v) : ""; }

std::string ints_str(const std::vector<std::int32_t>& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + std::to_string(v[i]);
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// Corpus access

struct CorpusDoc {
    std::string doc_id;
    std::int32_t year = 0;
    std::string text;
};

std::vector<CorpusDoc> read_corpus(const fs::path& path, bool with_text,
                                   const std::set<std::int32_t>& only_years = {})
{
    std::vector<CorpusDoc> docs;
    std::set<std::string> seen;
    for_each_jsonl(path, [&](const nlohmann::json& rec, std::size_t line) {
        CorpusDoc d;
        try {
            d.doc_id = rec.at("doc_id").get<std::string>();
            d.year = rec.at("year").get<std::int32_t>();
            if (with_text && (only_years.empty() || only_years.count(d.year))) {
                d.text = rec.at("text").get<std::string>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
        }
        if (!seen.insert(d.doc_id).second) {
            throw DataError(path.string() + ":" + std::to_string(line) + ": duplicate doc_id '" + d.doc_id + "'");
        }
        if (only_years.empty() || only_years.count(d.year)) {
            docs.push_back(std::move(d));
        }
    });
    return docs;
}

CodexPatternTable pattern_table(const RunConfig& c)
{
    if (c.pattern_table_path.empty()) {
        return CodexPatternTable::load(ukrainian_pattern_config());
    }
    return CodexPatternTable::load(read_file(c.pattern_table_path));
}

struct CitationLine {
    std::string doc_id;
    ArticleId id;
    Span span;
};

std::vector<CitationLine> read_citations(const fs::path& path)
{
    std::vector<CitationLine> out;
    for_each_jsonl(path, [&](const nlohmann::json& rec, std::size_t line) {
        try {
            out.push_back({rec.at("doc_id").get<std::string>(),
                           {rec.at("codex").get<std::string>(), rec.at("article").get<std::int32_t>()},
                           {rec.at("start").get<std::size_t>(), rec.at("end").get<std::size_t>()}});
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line) + ": " + e.what());
        }
    });
    return out;
}

fs::path citations_path(const RunConfig& c) { return c.output_dir / "citations.jsonl"; }
fs::path snapshot_dir(const RunConfig& c, std::int32_t year) { return c.output_dir / "snapshots" / std::to_string(year); }
fs::path predictions_path(const RunConfig& c, std::int32_t year)
{
    return c.output_dir / "predictions" / (std::to_string(year) + ".csv");
}
fs::path metrics_file(const RunConfig& c)
{
    return c.metrics_path.empty() ? c.output_dir / "temporal_metrics.csv" : c.metrics_path;
}

std::vector<std::int32_t> snapshot_years(const RunConfig& c)
{
    if (!c.years.empty()) {
        return c.years;
    }
    std::vector<std::int32_t> out;
    const auto root = c.output_dir / "snapshots";
    if (fs::is_directory(root)) {
        for (const auto& entry : fs::directory_iterator(root)) {
            const auto name = entry.path().filename().string();
            if (entry.is_directory() && !name.empty() &&
                std::all_of(name.begin(), name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
                out.push_back(static_cast<std::int32_t>(parse_int(name, "snapshot year")));
            }
        }
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) {
        throw DataError("no snapshots under " + root.string() + "; run the snapshot stage first");
    }
    return out;
}

Snapshot load_year(const RunConfig& c, std::int32_t year, RunManifest& manifest)
{
    const auto dir = snapshot_dir(c, year);
    for (const char* f : {"articles.csv", "cases.csv", "incidence.csv"}) {
        manifest.add_input(dir / f);
    }
    return load_snapshot(dir, year);
}

void publish(RunManifest& manifest, const fs::path& path, std::string_view content)
{
    write_file_atomic(path, content);
    manifest.add_output(path);
}

ArmOptions arm_options(const RunConfig& c)
{
    ArmOptions o;
    o.sample_n = c.sample_n;
    o.eval.methods = c.methods;
    o.eval.seed = c.seed;
    o.eval.jobs = c.jobs;
    o.bootstrap.replicates = c.bootstrap;
    o.bootstrap.seed = c.seed;
    o.bootstrap.jobs = c.jobs;
    return o;
}

void require_file(const fs::path& path, const std::string& what)
{
    if (path.empty()) {
        throw ConfigError(what + " is not configured");
    }
    if (!fs::is_regular_file(path)) {
        throw ConfigError(what + " not found: " + path.string());
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Configuration

std::map<std::string, std::string> cocite_environment()
{
    std::map<std::string, std::string> out;
    for (char** e = environ; e && *e; ++e) {
        std::string_view kv(*e);
        if (kv.starts_with("COCITE_")) {
            auto eq = kv.find('=');
            if (eq != std::string_view::npos) {
                out.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
            }
        }
    }
    return out;
}

RunConfig parse_run_config(std::string_view text, const fs::path& base_dir,
                           const std::map<std::string, std::string>& env)
{
    static const std::set<std::string> sections{"", "filters", "ablation", "bm25", "drift", "changepoint", "report"};
    std::map<std::string, KvValue> flat;
    std::set<std::string> seen_sections;
    for (const auto& s : parse_kv_config(text)) {
        if (!sections.count(s.name)) {
            throw ParseError(s.line, "unknown section [" + s.name + "]");
        }
        if (!s.name.empty() && !seen_sections.insert(s.name).second) {
            throw ParseError(s.line, "section [" + s.name + "] appears twice");
        }
        for (const auto& [k, v] : s.values) {
            flat[s.name.empty() ? k : s.name + "." + k] = v;
        }
    }
    RunConfig c;
    c.base_dir = base_dir;
    std::set<std::string> known;
    for (const auto& spec : key_specs()) {
        known.insert(spec.key);
    }
    for (const auto& [k, v] : flat) {
        if (!known.count(k)) {
            throw ParseError(v.line, "unknown config key '" + k + "'");
        }
    }
    for (const auto& spec : key_specs()) {
        const auto en = env_name(spec.key);
        try {
            if (auto e = env.find(en); e != env.end()) {
                spec.apply(c, env_value(en, e->second), fs::current_path());
            } else if (auto it = flat.find(spec.key); it != flat.end()) {
                spec.apply(c, it->second, base_dir);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(spec.key) + ": " + e.what());
        } catch (const DataError& e) {
            throw ConfigError(std::string(spec.key) + ": " + e.what());
        }
    }
    check_config(c);
    return c;
}

RunConfig load_run_config(const fs::path& path)
{
    if (!fs::is_regular_file(path)) {
        throw ConfigError("config file not found: " + path.string());
    }
    auto base = fs::absolute(path).parent_path();
    auto c = parse_run_config(read_file(path), base, cocite_environment());
    c.config_path = path;
    return c;
}

std::string RunConfig::canonical() const
{
    auto rel = [&](const fs::path& p) {
        if (p.empty() || base_dir.empty()) {
            return p.generic_string();
        }
        auto r = p.lexically_relative(base_dir);
        return r.empty() ? p.generic_string() : r.generic_string();
    };
    std::ostringstream o;
    o << std::boolalpha;
    o << "corpus = " << rel(corpus_path) << '\n'
      << "patterns = " << rel(pattern_table_path) << '\n'
      << "years = " << ints_str(years) << '\n'
      << "seed = " << seed << '\n'
      << "sample_n = " << sample_n << '\n'
      << "methods = [";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        o << (i ? ", " : "") << method_name(methods[i]);
    }
    o << "]\n"
      << "bootstrap = " << bootstrap << '\n'
      << "filters.min_citations = " << filters.min_citations << '\n'
      << "filters.vocab_cap = " << filters.vocab_cap << '\n'
      << "filters.case_min = " << filters.case_min << '\n'
      << "filters.case_max = " << filters.case_max << '\n'
      << "ablation.fixed_vocab = " << ablate_fixed_vocab << '\n'
      << "ablation.temporal_split = " << ablate_temporal_split << '\n'
      << "ablation.train_fraction = " << format_double(train_fraction) << '\n'
      << "ablation.fixed_min_citations = " << fixed_min_citations << '\n'
      << "ablation.fixed_year_a = " << opt_str(fixed_year_a) << '\n'
      << "ablation.fixed_year_b = " << opt_str(fixed_year_b) << '\n'
      << "bm25.article_texts = " << rel(article_texts_path) << '\n'
      << "bm25.k1 = " << format_double(bm25_k1) << '\n'
      << "bm25.b = " << format_double(bm25_b) << '\n'
      << "drift.year_a = " << opt_str(drift_year_a) << '\n'
      << "drift.year_b = " << opt_str(drift_year_b) << '\n'
      << "drift.vectors = " << rel(vectors_path) << '\n'
      << "drift.snippets_per_year = " << snippets_per_year << '\n'
      << "drift.window = " << snippet_window << '\n'
      << "changepoint.metrics = " << rel(metrics_path) << '\n'
      << "changepoint.method = " << method_name(changepoint_method) << '\n'
      << "changepoint.metric = " << changepoint_metric << '\n'
      << "changepoint.penalty = " << (penalty ? format_double(*penalty) : "") << '\n'
      << "changepoint.exclude_years = " << ints_str(exclude_years) << '\n'
      << "changepoint.sweep = " << penalty_sweep << '\n'
      << "changepoint.expected = " << ints_str(expected_breakpoints) << '\n'
      << "report.jaccard_top = " << jaccard_top << '\n';
    return o.str();
}

std::string RunConfig::digest() const { return sha256_hex(canonical()).substr(0, 16); }

OutputMeta RunConfig::meta() const { return OutputMeta{seed, digest(), {}}; }

// ---------------------------------------------------------------------------
// Manifest

void RunManifest::add_input(const fs::path& path)
{
    const auto key = path.generic_string();
    if (!inputs_.count(key)) {
        inputs_[key] = sha256_file(path);
    }
}

void RunManifest::add_output(const fs::path& path) { outputs_.push_back(path.generic_string()); }

void RunManifest::finish(const std::string& name, std::chrono::steady_clock::time_point start, std::string status,
                         std::string message)
{
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    stages_.push_back({name, dt.count(), std::move(status), std::move(message)});
}

std::string RunManifest::json(int exit_code) const
{
    nlohmann::ordered_json j;
    j["tool"] = "cocite";
    j["version"] = kToolVersion;
    j["command"] = command_;
    j["exit_code"] = exit_code;
    j["config_path"] = config_.config_path.generic_string();
    j["config_digest"] = config_.digest();
    j["jobs"] = config_.jobs;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    std::istringstream lines(config_.canonical());
    for (std::string line; std::getline(lines, line);) {
        auto eq = line.find(" = ");
        cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = cfg;
    j["output_dir"] = config_.output_dir.generic_string();
    auto& stages = j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : stages_) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["seconds"] = s.seconds;
        e["status"] = s.status;
        if (!s.message.empty()) {
            e["message"] = s.message;
        }
        stages.push_back(e);
    }
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    return j.dump(2) + "\n";
}

void RunManifest::write(const fs::path& path, int exit_code) const { write_file_atomic(path, json(exit_code)); }

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e)) {
        return 1;
    }
    if (dynamic_cast<const DataError*>(&e)) {
        return 2;
    }
    return 3;
}

void validate_stage(const RunConfig& c, const std::string& stage)
{
    if (!c.pattern_table_path.empty()) {
        require_file(c.pattern_table_path, "pattern table");
        pattern_table(c);
    }
    const bool needs_corpus = stage == "extract" || stage == "snapshot" || stage == "bm25" || stage == "drift" ||
                              stage == "pipeline";
    if (needs_corpus) {
        require_file(c.corpus_path, "corpus");
    }
    if (stage == "snapshot" || stage == "drift") {
        require_file(citations_path(c), "citations file (run extract first)");
    }
    if (stage == "bm25" || (stage == "pipeline" && !c.article_texts_path.empty())) {
        require_file(c.article_texts_path, "article texts");
    }
    if (!c.vectors_path.empty() && (stage == "drift" || stage == "pipeline")) {
        require_file(c.vectors_path, "embedding vectors");
    }
    if (stage == "changepoint") {
        require_file(metrics_file(c), "temporal metrics file");
    }
    if (stage == "eval" || stage == "ablate" || stage == "bm25" || stage == "report" || stage == "drift") {
        for (auto y : c.years) {
            if (!fs::is_directory(snapshot_dir(c, y))) {
                throw ConfigError("snapshot directory not found: " + snapshot_dir(c, y).string());
            }
        }
    }
    if (stage == "report") {
        for (auto y : c.years) {
            require_file(predictions_path(c, y), "predictions file");
        }
    }
}

// ---------------------------------------------------------------------------
// Stages

void run_extract(const RunConfig& c, RunManifest& manifest)
{
    manifest.add_input(c.corpus_path);
    if (!c.pattern_table_path.empty()) {
        manifest.add_input(c.pattern_table_path);
    }
    const auto table = pattern_table(c);
    std::set<std::int32_t> years(c.years.begin(), c.years.end());
    const auto docs = read_corpus(c.corpus_path, true, years);
    std::vector<std::string> lines(docs.size());
    parallel_chunks(docs.size(), c.jobs, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::string out;
            for (const auto& ref : extract_citations(docs[i].text, table)) {
                nlohmann::ordered_json rec;
                rec["doc_id"] = docs[i].doc_id;
                rec["codex"] = ref.codex_id;
                rec["article"] = ref.article;
                rec["start"] = ref.span.start;
                rec["end"] = ref.span.end;
                out += rec.dump();
                out += '\n';
            }
            lines[i] = std::move(out);
        }
    });
    std::string all;
    for (const auto& l : lines) {
        all += l;
    }
    publish(manifest, citations_path(c), all);
}

void run_snapshot(const RunConfig& c, RunManifest& manifest)
{
    manifest.add_input(c.corpus_path);
    manifest.add_input(citations_path(c));
    const auto docs = read_corpus(c.corpus_path, false);
    std::map<std::string, std::vector<CitationRef>> refs;
    for (auto& line : read_citations(citations_path(c))) {
        refs[line.doc_id].push_back({line.id.codex, line.id.article, line.span});
    }
    std::vector<DecisionRecord> decisions;
    for (const auto& d : docs) {
        auto it = refs.find(d.doc_id);
        decisions.push_back(it == refs.end() ? DecisionRecord{d.doc_id, d.year, {}}
                                             : DecisionRecord::from_refs(d.doc_id, d.year, it->second));
        if (it != refs.end()) {
            refs.erase(it);
        }
    }
    if (!refs.empty()) {
        throw DataError("citations file names decision '" + refs.begin()->first + "' which is not in the corpus");
    }
    auto by_year = partition_by_year(std::move(decisions));
    std::vector<std::int32_t> years = c.years;
    if (years.empty()) {
        for (const auto& [y, _] : by_year) {
            years.push_back(y);
        }
    }
    const auto meta = c.meta();
    CsvWriter summary(&meta, {"year", "decisions", "cases", "articles", "nnz"});
    for (auto y : years) {
        auto it = by_year.find(y);
        if (it == by_year.end()) {
            throw EmptySnapshot("corpus has no decisions for " + std::to_string(y));
        }
        const auto snap = build_snapshot(it->second, y, c.filters);
        auto m = meta;
        m.extra["year"] = std::to_string(y);
        save_snapshot(snap, snapshot_dir(c, y), m);
        for (const char* f : {"articles.csv", "cases.csv", "incidence.csv"}) {
            manifest.add_output(snapshot_dir(c, y) / f);
        }
        summary.row(y, it->second.size(), snap.cases.size(), snap.articles.size(), snap.incidence.nnz());
    }
    publish(manifest, c.output_dir / "snapshots" / "summary.csv", summary.text());
}

void run_eval(const RunConfig& c, RunManifest& manifest)
{
    std::vector<YearMethodReport> rows;
    const auto opts = arm_options(c);
    for (auto y : snapshot_years(c)) {
        const auto snap = load_year(c, y, manifest);
        const auto cc = build_cocitation(snap.incidence);
        const auto arm = evaluate_full(snap, cc, opts);
        auto meta = c.meta();
        meta.extra["year"] = std::to_string(y);
        publish(manifest, predictions_path(c, y), predictions_csv(arm.records, snap, meta));
        for (auto m : c.methods) {
            if (auto it = arm.reports.find(m); it != arm.reports.end()) {
                rows.push_back({y, m, it->second});
            }
        }
    }
    auto meta = c.meta();
    meta.extra["bootstrap"] = std::to_string(c.bootstrap);
    meta.extra["sample_n"] = std::to_string(c.sample_n);
    publish(manifest, c.output_dir / "temporal_metrics.csv", temporal_metrics_csv(rows, meta));
}

void run_ablate(const RunConfig& c, RunManifest& manifest)
{
    const auto years = snapshot_years(c);
    std::vector<Snapshot> snaps;
    for (auto y : years) {
        snaps.push_back(load_year(c, y, manifest));
    }
    const auto opts = arm_options(c);
    auto meta = c.meta();
    CsvWriter out(&meta, {"arm", "year", "method", "n_train", "n_test", "n", "mrr", "hit1", "hit5", "hit10", "hit20",
                          "ci_low", "ci_high"});
    auto emit = [&](const std::string& arm, const ArmResult& r, const std::string& n_train, const std::string& n_test) {
        for (auto m : c.methods) {
            if (auto it = r.reports.find(m); it != r.reports.end()) {
                const auto& rep = it->second;
                out.row(arm, r.year, method_name(m), n_train, n_test, rep.n_predictions, rep.mrr, rep.hit_at[0],
                        rep.hit_at[1], rep.hit_at[2], rep.hit_at[3], rep.ci_low, rep.ci_high);
            }
        }
    };

    if (c.ablate_fixed_vocab) {
        const auto ya = c.fixed_year_a.value_or(years.front());
        const auto yb = c.fixed_year_b.value_or(years.back());
        auto find = [&](std::int32_t y) -> const Snapshot& {
            auto it = std::find(years.begin(), years.end(), y);
            if (it == years.end()) {
                throw ConfigError("fixed-vocabulary year " + std::to_string(y) + " has no snapshot");
            }
            return snaps[static_cast<std::size_t>(it - years.begin())];
        };
        const auto shared = fixed_vocab(find(ya), find(yb), c.fixed_min_citations);
        auto vmeta = meta;
        vmeta.extra["years"] = std::to_string(ya) + "," + std::to_string(yb);
        vmeta.extra["min_citations"] = std::to_string(c.fixed_min_citations);
        CsvWriter vocab(&vmeta, {"codex", "article"});
        for (const auto& id : shared) {
            vocab.row(id.codex, id.article);
        }
        publish(manifest, c.output_dir / "fixed_vocab.csv", vocab.text());
        if (!shared.empty()) {
            for (const auto& r : evaluate_fixed(snaps, shared, opts)) {
                emit("fixed_vocab", r, "", "");
            }
        }
    }
    if (c.ablate_temporal_split) {
        for (const auto& snap : snaps) {
            const auto split = temporal_split_eval(snap, SplitSpec{c.train_fraction}, opts);
            emit("temporal_split", split.split, std::to_string(split.n_train), std::to_string(split.n_test));
            emit("split_full_matrix", split.full, std::to_string(split.n_train), std::to_string(split.n_test));
        }
    }
    publish(manifest, c.output_dir / "ablation_metrics.csv", out.text());
}

void run_bm25(const RunConfig& c, RunManifest& manifest)
{
    manifest.add_input(c.article_texts_path);
    manifest.add_input(c.corpus_path);
    const auto table = pattern_table(c);
    const auto store = ArticleTextStore::load_jsonl(c.article_texts_path);
    const auto years = snapshot_years(c);
    auto meta = c.meta();
    meta.extra["k1"] = format_double(c.bm25_k1);
    meta.extra["b"] = format_double(c.bm25_b);
    meta.extra["candidates"] = "intersection minus the case's other cited articles";
    CsvWriter out(&meta, {"year", "method", "intersection", "n", "mrr", "hit1", "hit5", "hit10", "hit20", "ci_low",
                          "ci_high", "paired_z"});
    const std::set<std::int32_t> year_set(years.begin(), years.end());
    std::unordered_map<std::int32_t, std::unordered_map<std::string, std::string>> texts;
    for (auto& d : read_corpus(c.corpus_path, true, year_set)) {
        texts[d.year].emplace(std::move(d.doc_id), std::move(d.text));
    }
    for (auto y : years) {
        const auto snap = load_year(c, y, manifest);
        Bm25EvalOptions o;
        o.sample_n = c.sample_n;
        o.seed = c.seed;
        o.jobs = c.jobs;
        o.bootstrap.replicates = c.bootstrap;
        o.bootstrap.seed = c.seed;
        o.bootstrap.jobs = c.jobs;
        o.params = {c.bm25_k1, c.bm25_b};
        const auto res = evaluate_bm25(snap, store, texts[y], table, o);
        const double z = paired_z(res.bm25, res.aa);
        for (const auto& [m, rep] : {std::pair{Method::BM25, res.bm25_report}, std::pair{Method::AA, res.aa_report}}) {
            out.row(y, method_name(m), res.intersection.size(), rep.n_predictions, rep.mrr, rep.hit_at[0],
                    rep.hit_at[1], rep.hit_at[2], rep.hit_at[3], rep.ci_low, rep.ci_high, z);
        }
        auto pmeta = meta;
        pmeta.extra["year"] = std::to_string(y);
        std::vector<PredictionRecord> both = res.bm25;
        both.insert(both.end(), res.aa.begin(), res.aa.end());
        publish(manifest, c.output_dir / "predictions" / ("bm25_" + std::to_string(y) + ".csv"),
                predictions_csv(both, snap, pmeta));
    }
    publish(manifest, c.output_dir / "bm25_metrics.csv", out.text());
}

void run_drift(const RunConfig& c, RunManifest& manifest)
{
    manifest.add_input(c.corpus_path);
    manifest.add_input(citations_path(c));
    const auto years = snapshot_years(c);
    const auto ya = c.drift_year_a.value_or(years.front());
    const auto yb = c.drift_year_b.value_or(years.back());
    if (ya == yb) {
        throw ConfigError("drift needs two distinct years, got " + std::to_string(ya) + " twice");
    }
    const auto snap_a = load_year(c, ya, manifest);
    const auto snap_b = load_year(c, yb, manifest);
    const auto shared = fixed_vocab(snap_a, snap_b, c.fixed_min_citations);

    std::unordered_map<std::string, std::string> texts;
    std::unordered_map<std::string, std::int32_t> year_of;
    for (auto& d : read_corpus(c.corpus_path, true, {ya, yb})) {
        year_of[d.doc_id] = d.year;
        texts.emplace(std::move(d.doc_id), std::move(d.text));
    }
    std::map<BatchKey, std::vector<CitationOccurrence>> occ;
    for (auto& line : read_citations(citations_path(c))) {
        auto it = year_of.find(line.doc_id);
        if (it == year_of.end() || !std::binary_search(shared.begin(), shared.end(), line.id)) {
            continue;
        }
        occ[{line.id, it->second}].push_back({line.doc_id, line.span});
    }
    std::vector<SnippetSet> sets;
    for (const auto& id : shared) {
        for (auto y : {ya, yb}) {
            auto it = occ.find({id, y});
            if (it == occ.end()) {
                continue;
            }
            sets.push_back(sample_snippets(texts, it->second, id, y, c.snippets_per_year, c.snippet_window, c.seed));
        }
    }
    publish(manifest, c.output_dir / "snippets.jsonl", snippets_jsonl(sets));

    if (c.vectors_path.empty()) {
        return;
    }
    manifest.add_input(c.vectors_path);
    const auto batches = load_embeddings(c.vectors_path);
    const auto records = drift_between(batches, ya, yb, &shared, c.jobs);
    auto meta = c.meta();
    meta.extra["years"] = std::to_string(ya) + "," + std::to_string(yb);
    meta.extra["shared_articles"] = std::to_string(shared.size());
    publish(manifest, c.output_dir / "drift_articles.csv", drift_records_csv(records, meta));
    publish(manifest, c.output_dir / "drift_by_codex.csv", drift_summary_csv(aggregate_drift(records), ya, yb, meta));
}

void run_changepoint(const RunConfig& c, RunManifest& manifest)
{
    const auto path = metrics_file(c);
    manifest.add_input(path);
    const auto all = load_metric_series(path, c.changepoint_metric);
    auto it = all.find(c.changepoint_method);
    if (it == all.end()) {
        throw DataError(path.string() + " has no rows for method " + std::string(method_name(c.changepoint_method)));
    }
    std::vector<std::pair<std::string, MetricSeries>> variants{{"all_years", it->second}};
    for (auto y : c.exclude_years) {
        const auto& pts = it->second.points();
        if (std::any_of(pts.begin(), pts.end(), [&](const auto& p) { return p.first == y; })) {
            variants.emplace_back("without_" + std::to_string(y), it->second.without_year(y));
        }
    }
    std::vector<ChangepointRow> rows;
    for (const auto& [name, series] : variants) {
        auto base = pelt_detect(series, c.penalty);
        std::string note = c.penalty ? "configured penalty" : "default penalty 2 ln(n)";
        std::vector<SweepEntry> sweep;
        if (c.penalty_sweep > 0) {
            const double bic = bic_penalty(series.size());
            const auto penalties = geometric_penalties(bic / 8.0, bic * 8.0, c.penalty_sweep);
            sweep = penalty_sweep(series, penalties, c.expected_breakpoints);
        }
        if (!c.expected_breakpoints.empty()) {
            const bool exact = base.breakpoints == c.expected_breakpoints;
            note += exact ? "; reproduces expected " : "; differs from expected ";
            note += join_years(c.expected_breakpoints);
            if (!exact && !sweep.empty()) {
                auto best = std::min_element(sweep.begin(), sweep.end(), [](const SweepEntry& a, const SweepEntry& b) {
                    return a.distance < b.distance;
                });
                note += best->distance == 0 ? "; sweep penalty " + format_double(best->result.penalty) + " reproduces it"
                                            : "; closest sweep set " + join_years(best->result.breakpoints) +
                                                  " at penalty " + format_double(best->result.penalty);
            }
        }
        rows.push_back({name, c.changepoint_method, c.changepoint_metric, std::move(base), note});
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            std::string sn = "sweep " + std::to_string(i + 1) + "/" + std::to_string(sweep.size());
            if (!c.expected_breakpoints.empty()) {
                sn += "; distance " + std::to_string(sweep[i].distance);
            }
            rows.push_back({name, c.changepoint_method, c.changepoint_metric, std::move(sweep[i].result), sn});
        }
    }
    auto meta = c.meta();
    meta.extra["input"] = path.filename().string();
    meta.extra["min_segment"] = std::to_string(kMinSegment);
    publish(manifest, c.output_dir / "changepoints.csv", changepoints_csv(rows, meta));
    publish(manifest, c.output_dir / "changepoint_segments.csv", changepoint_segments_csv(rows, meta));
}

void run_report(const RunConfig& c, RunManifest& manifest)
{
    const auto meta = c.meta();
    const auto bins = DifficultyBins::standard();
    std::vector<YearGroupReport> strat;
    std::vector<YearGroupReport> codex;
    auto perf = article_performance_writer(meta);
    auto jac = jaccard_writer(meta);
    std::size_t found = 0;
    for (auto y : snapshot_years(c)) {
        const auto path = predictions_path(c, y);
        if (!fs::is_regular_file(path)) {
            continue;
        }
        ++found;
        manifest.add_input(path);
        const auto snap = load_year(c, y, manifest);
        const auto records = load_predictions(path, snap);
        for (auto m : kGraphMethods) {
            const auto subset = select_method(records, m);
            if (subset.empty()) {
                continue;
            }
            for (auto& g : stratify(subset, snap, bins)) {
                strat.push_back({y, m, std::move(g)});
            }
            for (auto& g : per_codex(subset, snap)) {
                codex.push_back({y, m, std::move(g)});
            }
            append_article_performance(perf, y, m, article_performance(subset), snap);
        }
        const auto cc = build_cocitation(snap.incidence);
        const auto top = top_degree_articles(cc, c.jaccard_top);
        append_jaccard(jac, y, cocitation_jaccard(cc, top), snap);
    }
    if (found == 0) {
        throw NoReports("no prediction files under " + (c.output_dir / "predictions").string());
    }
    publish(manifest, c.output_dir / "difficulty_stratification.csv", difficulty_stratification_csv(strat, meta));
    publish(manifest, c.output_dir / "per_codex.csv", per_codex_csv(codex, meta));
    publish(manifest, c.output_dir / "article_retrieval_performance.csv", perf.text());
    publish(manifest, c.output_dir / "cocitation_jaccard.csv", jac.text());
}

} // namespace cocite
