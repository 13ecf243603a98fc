#pragma once

#include "cocite/ablation.hpp"
#include "cocite/io.hpp"
#include "cocite/snapshot.hpp"
#include "cocite/types.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocite {

/// Fully resolved run configuration. Relative paths in a config file are
/// taken relative to the file's directory.
struct RunConfig {
    std::filesystem::path config_path; ///< empty when built in code
    std::filesystem::path base_dir;    ///< directory relative paths were resolved against
    std::filesystem::path corpus_path;
    std::filesystem::path pattern_table_path; ///< empty selects the built-in table
    std::filesystem::path output_dir = "cocite_out";
    std::vector<std::int32_t> years;          ///< empty means every year present
    std::uint64_t seed = 0;
    std::size_t sample_n = 200000;
    SnapshotFilters filters;
    std::vector<Method> methods{Method::AA, Method::CN, Method::Degree, Method::Random};
    std::size_t bootstrap = 1000;
    unsigned jobs = 1;

    bool ablate_fixed_vocab = true;
    bool ablate_temporal_split = true;
    double train_fraction = 0.5;
    std::uint64_t fixed_min_citations = 50;
    std::optional<std::int32_t> fixed_year_a; ///< default first year
    std::optional<std::int32_t> fixed_year_b; ///< default last year

    std::filesystem::path article_texts_path;
    double bm25_k1 = 1.2;
    double bm25_b = 0.75;

    std::optional<std::int32_t> drift_year_a;
    std::optional<std::int32_t> drift_year_b;
    std::filesystem::path vectors_path;
    std::size_t snippets_per_year = 50;
    std::size_t snippet_window = 500;

    std::filesystem::path metrics_path;       ///< default output_dir/temporal_metrics.csv
    Method changepoint_method = Method::AA;
    std::string changepoint_metric = "mrr";
    std::optional<double> penalty;
    std::vector<std::int32_t> exclude_years{2009};
    std::size_t penalty_sweep = 10;
    std::vector<std::int32_t> expected_breakpoints;

    std::size_t jaccard_top = 30;

    /// Canonical `key = value` rendering of every setting except jobs and
    /// output_dir. Paths are shown relative to base_dir.
    std::string canonical() const;
    std::string digest() const;
    OutputMeta meta() const;
};

/// Reads `path`, applies COCITE_* environment overrides, and resolves
/// paths. Throws ConfigError / ParseError.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir,
                           const std::map<std::string, std::string>& env);

/// COCITE_* variables from the process environment.
std::map<std::string, std::string> cocite_environment();

struct StageTiming {
    std::string name;
    double seconds = 0.0;
    std::string status; ///< "ok" or "error"
    std::string message;
};

/// Records stage timings and input digests; written on every exit path.
class RunManifest {
  public:
    RunManifest(const RunConfig& config, std::string command) : config_(config), command_(std::move(command)) {}

    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    template <typename Fn>
    void stage(const std::string& name, Fn&& fn)
    {
        const auto start = std::chrono::steady_clock::now();
        try {
            fn();
        } catch (const std::exception& e) {
            finish(name, start, "error", e.what());
            throw;
        }
        finish(name, start, "ok", "");
    }
    std::string json(int exit_code) const;
    void write(const std::filesystem::path& path, int exit_code) const;

  private:
    void finish(const std::string& name, std::chrono::steady_clock::time_point start, std::string status,
                std::string message);

    const RunConfig& config_;
    std::string command_;
    std::vector<StageTiming> stages_;
    std::map<std::string, std::string> inputs_;
    std::vector<std::string> outputs_;
};

/// Stage implementations. Each reads the outputs of earlier stages from
/// config.output_dir and writes its own files atomically.
void run_extract(const RunConfig& config, RunManifest& manifest);
void run_snapshot(const RunConfig& config, RunManifest& manifest);
void run_eval(const RunConfig& config, RunManifest& manifest);
void run_ablate(const RunConfig& config, RunManifest& manifest);
void run_bm25(const RunConfig& config, RunManifest& manifest);
void run_drift(const RunConfig& config, RunManifest& manifest);
void run_changepoint(const RunConfig& config, RunManifest& manifest);
void run_report(const RunConfig& config, RunManifest& manifest);

/// Checks that the inputs a stage needs exist. Throws ConfigError naming
/// the missing path.
void validate_stage(const RunConfig& config, const std::string& stage);

/// 1 for ConfigError, 2 for DataError, 3 for InvariantError and anything else.
int exit_code_for(const std::exception& e);

} // namespace cocite
