#include "cocite/io.hpp"
#include "test_support.hpp"

#include <nlohmann/json.hpp>

#include <sys/wait.h>

using namespace cocite;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args)
{
    const std::string cmd = std::string(COCITE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> data_files(const fs::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().filename().string().rfind("manifest_", 0) != 0) {
            out[fs::relative(e.path(), dir).generic_string()] = read_file(e.path());
        }
    }
    return out;
}

} // namespace

TEST_CASE("dry run validates without writing")
{
    const auto dir = cocite::testing::scratch_dir("cli_dry");
    REQUIRE(run("synth --out " + dir.string()) == 0);
    CHECK(run("--config " + (dir / "config.toml").string() + " --dry-run pipeline") == 0);
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("exit codes")
{
    const auto dir = cocite::testing::scratch_dir("cli_codes");
    write_file_atomic(dir / "missing.toml", "corpus = 'nope.jsonl'\noutput_dir = 'out'\n");
    CHECK(run("--config " + (dir / "missing.toml").string() + " extract") == 1);
    CHECK(run("--config " + (dir / "missing.toml").string() + " --dry-run extract") == 1);
    write_file_atomic(dir / "bad.toml", "seed = 'x'\n");
    CHECK(run("--config " + (dir / "bad.toml").string() + " extract") == 1);
    CHECK(run("no-such-command") == 1);
    CHECK(run("--jobs 0 --config " + (dir / "bad.toml").string() + " extract") == 1);

    // A corpus whose cases never reach the filters is a data error, and the
    // manifest is still written.
    write_file_atomic(dir / "corpus.jsonl", "{\"doc_id\":\"a\",\"year\":2020,\"text\":\"ст. 5 ЦК\"}\n");
    write_file_atomic(dir / "thin.toml", "corpus = 'corpus.jsonl'\noutput_dir = 'out'\n");
    CHECK(run("--config " + (dir / "thin.toml").string() + " extract") == 0);
    CHECK(run("--config " + (dir / "thin.toml").string() + " snapshot") == 2);
    const auto manifest = nlohmann::json::parse(read_file(dir / "out" / "manifest_snapshot.json"));
    CHECK(manifest["exit_code"] == 2);
    CHECK(manifest["stages"][0]["status"] == "error");

    write_file_atomic(dir / "corrupt.jsonl", "{\"doc_id\":\"a\",\"year\":2020,\"text\":\n");
    write_file_atomic(dir / "corrupt.toml", "corpus = 'corrupt.jsonl'\noutput_dir = 'out2'\n");
    CHECK(run("--config " + (dir / "corrupt.toml").string() + " extract") == 2);
}

TEST_CASE("outputs are byte-identical across job counts")
{
    const auto dir = cocite::testing::scratch_dir("cli_determinism");
    REQUIRE(run("synth --out " + dir.string()) == 0);
    const auto cfg = (dir / "config.toml").string();
    REQUIRE(run("--config " + cfg + " --jobs 1 --output-dir " + (dir / "j1").string() + " pipeline") == 0);
    REQUIRE(run("--config " + cfg + " --jobs 3 --output-dir " + (dir / "j3").string() + " pipeline") == 0);
    const auto a = data_files(dir / "j1");
    const auto b = data_files(dir / "j3");
    CHECK(a.size() == 23);
    CHECK(a == b);
}

TEST_CASE("changepoint command on a metrics file")
{
    const auto dir = cocite::testing::scratch_dir("cli_changepoint");
    std::string csv = "year,method,n,mrr,hit1,hit5,hit10,hit20,ci_low,ci_high\n";
    for (int y = 2007; y <= 2024; ++y) {
        const double v = y < 2014 ? 0.6 : (y < 2019 ? 0.45 : 0.3);
        csv += std::to_string(y) + ",AA,100," + std::to_string(v + 0.001 * (y % 3)) + ",0,0,0,0,0,0\n";
    }
    write_file_atomic(dir / "tm.csv", csv);
    write_file_atomic(dir / "c.toml", "output_dir = 'out'\n[changepoint]\nmetrics = 'tm.csv'\n");
    CHECK(run("--config " + (dir / "c.toml").string() + " changepoint --expected 2014,2019") == 0);
    const auto t = CsvTable::read(dir / "out" / "changepoints.csv");
    bool found = false;
    for (const auto& row : t.rows()) {
        if (row[t.column("variant")] == "all_years" && row[t.column("penalty")] != "") {
            found = found || row[t.column("breakpoints")] == "2014;2019";
        }
    }
    CHECK(found);
    CHECK(fs::exists(dir / "out" / "changepoint_segments.csv"));

    write_file_atomic(dir / "short.csv", "year,method,mrr\n2010,AA,0.5\n2011,AA,0.4\n");
    CHECK(run("--config " + (dir / "c.toml").string() + " changepoint --metrics " + (dir / "short.csv").string()) == 2);
}

TEST_CASE("builtin pattern table prints")
{
    CHECK(run("patterns") == 0);
}
