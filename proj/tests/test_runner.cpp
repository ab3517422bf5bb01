#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fourext/config.hpp"
#include "fourext/errors.hpp"
#include "fourext/runner.hpp"

using namespace fourext;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("fourext_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ExperimentRecord sample_record() {
    ExperimentRecord rec;
    rec.experiment_id = "demo/one";
    rec.inputs["tau"] = "0.5";
    rec.inputs["delta"] = "0.001";
    rec.inputs["function"] = "gaussian";
    rec.measured["annulus_sup"] = 0.25;
    rec.bounds["annulus_sup"] = 0.5;
    rec.passed["annulus_sup"] = true;
    return rec;
}

}  // namespace

TEST_CASE("csv layout: inputs, measured, bounds, passed, runtime") {
    TempDir dir("csv");
    const fs::path csv = dir.path / "records.csv";

    ExperimentRecord rec = sample_record();
    rec.failure_note = "needs \"quotes\", and, commas";
    write_records_csv(csv.string(), {rec});

    const std::string text = slurp(csv);
    std::istringstream lines(text);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header ==
          "experiment_id,delta,function,tau,measured_annulus_sup,bound_annulus_sup,"
          "passed_annulus_sup,runtime_ms,failure_note\r");
    CHECK(row ==
          "demo/one,0.001,gaussian,0.5,0.25,0.5,true,0,\"needs \"\"quotes\"\", and, commas\"\r");
}

TEST_CASE("csv serialises floats with 17 significant digits") {
    TempDir dir("csv17");
    const fs::path csv = dir.path / "records.csv";
    ExperimentRecord rec = sample_record();
    rec.measured["annulus_sup"] = 1.0 / 3.0;
    write_records_csv(csv.string(), {rec});
    CHECK(slurp(csv).find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("summary counts and worst ratio") {
    ExperimentRecord a = sample_record();
    ExperimentRecord b = sample_record();
    b.experiment_id = "demo/two";
    b.measured["annulus_sup"] = 0.9;
    b.passed["annulus_sup"] = false;
    b.failure_note = "bound check tripped";
    const std::string s = render_summary("demo", {a, b});
    CHECK(s.find("campaign: demo") != std::string::npos);
    CHECK(s.find("records: 2") != std::string::npos);
    CHECK(s.find("comparisons: 2 (1 passed, 1 failed)") != std::string::npos);
    CHECK(s.find("1.8") != std::string::npos);  // worst ratio 0.9 / 0.5
    CHECK(s.find("demo/two: bound check tripped") != std::string::npos);

    const std::string empty = render_summary("demo", {});
    CHECK(empty.find("comparisons: 0") != std::string::npos);
}

TEST_CASE("empty sweeps produce a header-only csv and exit zero") {
    TempDir dir("empty");
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = delta-sweep\n[stability]\ntaus =\ndeltas =\n");
    cfg.output = (dir.path / "out").string();
    CHECK(run_campaign(cfg, true) == 0);

    const std::string csv = slurp(dir.path / "out" / "records.csv");
    CHECK(csv == "experiment_id,runtime_ms,failure_note\r\n");
    const std::string summary = slurp(dir.path / "out" / "summary.txt");
    CHECK(summary.find("comparisons: 0") != std::string::npos);
}

TEST_CASE("a small campaign runs green and reproduces byte-identical csv") {
    TempDir dir("repro");
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = delta-sweep\n"
        "[stability]\ntaus = 0.1, 0.2\ndeltas = 1e-2, 1e-5\n");

    cfg.output = (dir.path / "a").string();
    CHECK(run_campaign(cfg, true) == 0);
    cfg.output = (dir.path / "b").string();
    CHECK(run_campaign(cfg, true) == 0);

    const std::string a = slurp(dir.path / "a" / "records.csv");
    const std::string b = slurp(dir.path / "b" / "records.csv");
    CHECK(a == b);
    CHECK(a.find("delta-sweep/gaussian") != std::string::npos);
}

TEST_CASE("instability campaign through the runner") {
    TempDir dir("inst");
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = instability\n[instability]\nks = 4, 6, 8, 10, 12, 14\nm = 2\n");
    cfg.output = (dir.path / "out").string();
    CHECK(run_campaign(cfg, true) == 0);
    const std::string csv = slurp(dir.path / "out" / "records.csv");
    CHECK(csv.find("measured_linf_v") != std::string::npos);
    CHECK(csv.find("passed_floor_to_linf_ratio") != std::string::npos);
}

TEST_CASE("uniform-random noise flows through the runner deterministically") {
    TempDir dir("urand");
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = delta-sweep\n"
        "[stability]\ntaus = 0.1\ndeltas = 1e-3\n"
        "[noise]\nkind = uniform-random\nseed = 9\n");
    cfg.output = (dir.path / "a").string();
    CHECK(run_campaign(cfg, true) == 0);
    cfg.output = (dir.path / "b").string();
    CHECK(run_campaign(cfg, true) == 0);
    CHECK(slurp(dir.path / "a" / "records.csv") == slurp(dir.path / "b" / "records.csv"));
}

TEST_CASE("exit status is nonzero when a comparison fails") {
    // Stopping the wave-vector sweep before the onset of the logarithmic
    // floor inequality makes its largest-|k| check genuinely fail.
    TempDir dir("onset");
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = instability\n[instability]\nks = 4, 6, 8\nm = 2\n");
    cfg.output = (dir.path / "out").string();
    CHECK(run_campaign(cfg, true) == 1);
    const std::string summary = slurp(dir.path / "out" / "summary.txt");
    CHECK(summary.find("1 failed") != std::string::npos);
}

TEST_CASE("unwritable output reports the path") {
    TempDir dir("blocked");
    const fs::path blocker = dir.path / "blocker";
    std::ofstream(blocker) << "file, not a directory";
    CampaignConfig cfg = parse_config(
        "[campaign]\nkind = delta-sweep\n[stability]\ntaus =\ndeltas =\n");
    cfg.output = (blocker / "sub").string();
    try {
        run_campaign(cfg, true);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(cfg.output) != std::string::npos);
    }
}
