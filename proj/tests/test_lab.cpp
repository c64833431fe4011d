// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>

#include "fixturegen/scf.hpp"
#include "ucclab/config.hpp"
#include "ucclab/constants.hpp"
#include "ucclab/ensemble.hpp"
#include "ucclab/scan.hpp"
#include "ucclab/svg_plot.hpp"

using namespace ucclab;
namespace fs = std::filesystem;

namespace {

/// Self-contained fixture factory: writes H2 FCIDUMPs plus a manifest into
/// a temp directory so the lab tests never depend on the shipped tree.
struct TempFixtures {
    fs::path dir;

    TempFixtures() {
        dir = fs::temp_directory_path() / "ucclab_test_fixtures";
        fs::create_directories(dir);
        std::ofstream manifest(dir / "manifest.txt");
        manifest << "# test manifest\n";
        for (double r : {0.7414, 1.5, 2.5}) {
            fixturegen::Molecule mol;
            mol.name = "h2";
            mol.atoms = {{1, {0, 0, 0}}, {1, {0, 0, r * bohr_per_angstrom}}};
            const auto ao = fixturegen::compute_ao_integrals(mol);
            const auto scf = fixturegen::run_rhf(mol, ao);
            const auto ints = fixturegen::to_molecular_integrals(mol, ao, scf);
            char name[64];
            std::snprintf(name, sizeof(name), "h2_%.4f.fcidump", r);
            save_fcidump(ints, (dir / name).string());
            char line[96];
            std::snprintf(line, sizeof(line), "%.4f %s\n", r, name);
            manifest << line;
        }
    }

    std::string fixture(double r) const {
        char name[64];
        std::snprintf(name, sizeof(name), "h2_%.4f.fcidump", r);
        return (dir / name).string();
    }
    std::string manifest_path() const { return (dir / "manifest.txt").string(); }
};

const TempFixtures& fixtures() {
    static TempFixtures f;
    return f;
}

/// Strip wall-clock fields before determinism comparisons.
void strip_timings(nlohmann::json& j) {
    if (j.is_object()) {
        j.erase("wall_time_s");
        for (auto& [key, value] : j.items()) strip_timings(value);
    } else if (j.is_array()) {
        for (auto& value : j) strip_timings(value);
    }
}

} // namespace

TEST_CASE("config parsing round-trips and validates") {
    std::istringstream text(R"(
# h6 stretched ensemble
fixture = fixtures/h6/h6_2.0000.fcidump
ansatz = uccsd
form = trotterized
trotter_n = 2
ordering = random_shuffle
seed = 777
ensemble_size = 20
gtol = 1e-8
threads = 4
out = out/h6
)");
    const ExperimentConfig cfg = ExperimentConfig::from_stream(text);
    REQUIRE(cfg.fixture == "fixtures/h6/h6_2.0000.fcidump");
    REQUIRE(cfg.ansatz == PoolKind::uccsd);
    REQUIRE(cfg.trotter_n == 2);
    REQUIRE(cfg.ordering == OrderingKind::random_shuffle);
    REQUIRE(cfg.seed == 777);
    REQUIRE(cfg.ensemble_size == 20);
    REQUIRE(cfg.threads == 4);
    REQUIRE(cfg.out_dir == "out/h6");

    std::istringstream bad_key("no_such_key = 3\n");
    REQUIRE_THROWS_WITH(ExperimentConfig::from_stream(bad_key), Catch::Contains("unknown key"));
    std::istringstream bad_value("seed = banana\n");
    REQUIRE_THROWS_WITH(ExperimentConfig::from_stream(bad_value), Catch::Contains("line 1"));
    std::istringstream bad_ansatz("ansatz = qubit\n");
    REQUIRE_THROWS_AS(ExperimentConfig::from_stream(bad_ansatz), ConfigError);
}

TEST_CASE("summary statistics") {
    const EnsembleSummary same = summarize({-1.0, -1.0, -1.0});
    REQUIRE(same.std_dev == 0.0);
    REQUIRE(same.range == 0.0);

    const EnsembleSummary pair = summarize({-1.5, -1.2});
    REQUIRE(pair.range == Approx(0.3));
    REQUIRE(pair.mean == Approx(-1.35));
    // sample std with n-1 denominator
    REQUIRE(pair.std_dev == Approx(std::sqrt((0.15 * 0.15 * 2) / 1.0)));

    const EnsembleSummary one = summarize({-2.0});
    REQUIRE(one.single_member);
    REQUIRE(one.std_dev == 0.0);
    REQUIRE(one.range == 0.0);

    REQUIRE_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("kcal renderings use the documented constant") {
    EnsembleSummary s = summarize({-1.0, -1.001});
    const nlohmann::json j = summary_to_json(s);
    REQUIRE(j.at("range_kcal").get<double>() == s.range * 627.509474);
}

TEST_CASE("ensemble of size one reports a degenerate summary") {
    ExperimentConfig cfg;
    cfg.fixture = fixtures().fixture(0.7414);
    cfg.ensemble_size = 1;
    cfg.ordering = OrderingKind::as_generated;
    const LabSystem sys = load_system(cfg.fixture, cfg);
    const EnsembleRecord record = run_ensemble(sys, cfg);
    REQUIRE(record.members.size() == 1);
    REQUIRE(record.summary.single_member);
    REQUIRE(record.summary.std_dev == 0.0);
    REQUIRE(record.summary.mean == record.members[0].result.energy);
}

TEST_CASE("ensembles are deterministic and thread-count invariant") {
    ExperimentConfig cfg;
    cfg.fixture = fixtures().fixture(1.5);
    cfg.ensemble_size = 4;
    cfg.seed = 99;
    cfg.threads = 1;
    const LabSystem sys = load_system(cfg.fixture, cfg);

    nlohmann::json a = ensemble_to_json(sys, cfg, run_ensemble(sys, cfg));
    cfg.threads = 2;
    nlohmann::json b = ensemble_to_json(sys, cfg, run_ensemble(sys, cfg));
    strip_timings(a);
    strip_timings(b);
    a["config"].erase("threads");
    b["config"].erase("threads");
    REQUIRE(a.dump() == b.dump());
}

TEST_CASE("recorded orderings reload and reoptimize to the recorded energy") {
    ExperimentConfig cfg;
    cfg.fixture = fixtures().fixture(1.5);
    cfg.ensemble_size = 3;
    cfg.seed = 424242;
    const LabSystem sys = load_system(cfg.fixture, cfg);
    const EnsembleRecord record = run_ensemble(sys, cfg);
    const nlohmann::json j = ensemble_to_json(sys, cfg, record);

    for (const auto& member : j.at("members")) {
        const double recorded = member.at("result").at("energy_ha").get<double>();
        const double replayed = reoptimize_member(member, sys, cfg);
        REQUIRE(replayed == Approx(recorded).margin(1e-10));
    }
}

TEST_CASE("ensemble csv has one row per member and no timing column") {
    ExperimentConfig cfg;
    cfg.fixture = fixtures().fixture(0.7414);
    cfg.ensemble_size = 3;
    const LabSystem sys = load_system(cfg.fixture, cfg);
    const std::string csv = ensemble_to_csv(run_ensemble(sys, cfg));
    const CsvTable table = read_csv(csv);
    REQUIRE(table.rows.size() == 3);
    REQUIRE_THROWS_AS(table.column("wall_time_s"), CsvError);
    for (const auto& cell : table.numbers("energy_ha")) REQUIRE(cell.has_value());
}

TEST_CASE("manifest parsing and scan output") {
    const std::vector<ManifestEntry> entries = read_manifest(fixtures().manifest_path());
    REQUIRE(entries.size() == 3);
    REQUIRE(entries[0].r == Approx(0.7414));

    ExperimentConfig cfg;
    cfg.manifest = fixtures().manifest_path();
    cfg.ensemble_size = 2;
    cfg.seed = 7;
    cfg.scan_untrot = true;
    const ScanResult scan = run_scan(cfg);
    REQUIRE(scan.points.size() == 3);
    // the dissociation zero is the max-R FCI energy, so that row reads 0
    REQUIRE(scan.dissociation_ref == Approx(scan.points.back().fci));

    const CsvTable table = read_csv(scan_to_csv(scan));
    REQUIRE(table.rows.size() == 3);
    const auto rel = table.numbers("fci_rel_kcal");
    REQUIRE(rel.back().value() == Approx(0.0).margin(1e-12));
    const auto err_untrot = table.numbers("err_untrot_kcal");
    for (const auto& cell : err_untrot) {
        REQUIRE(cell.has_value());
        REQUIRE(*cell >= -1e-6); // variational: untrotterized sits above FCI
    }
    // H2: every ordering is exact, so ensemble range is numerically zero
    const auto range = table.numbers("ens_range_ha");
    for (const auto& cell : range) REQUIRE(std::abs(*cell) < 1e-8);

    const std::string summaries = summaries_to_csv(scan);
    REQUIRE(read_csv(summaries).rows.size() == 3);
}

TEST_CASE("scan csv kcal columns are exactly the Hartree columns times the constant") {
    ExperimentConfig cfg;
    cfg.manifest = fixtures().manifest_path();
    cfg.ensemble_size = 2;
    const ScanResult scan = run_scan(cfg);
    const CsvTable table = read_csv(scan_to_csv(scan));
    const auto fci = table.numbers("fci_ha");
    const auto mean = table.numbers("ens_mean_ha");
    const auto err_mean = table.numbers("err_mean_kcal");
    for (std::size_t i = 0; i < fci.size(); ++i) {
        // bit-exact: conversion applied once, and %.17g round-trips doubles
        REQUIRE(*err_mean[i] == (*mean[i] - *fci[i]) * kcal_per_hartree);
    }
}

TEST_CASE("missing scan fixtures are reported") {
    const fs::path dir = fs::temp_directory_path() / "ucclab_bad_manifest";
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.txt");
    manifest << "1.0 missing.fcidump\n";
    manifest.close();
    ExperimentConfig cfg;
    cfg.manifest = (dir / "manifest.txt").string();
    REQUIRE_THROWS_WITH(run_scan(cfg), Catch::Contains("missing"));
}

TEST_CASE("scan plots render deterministically") {
    ExperimentConfig cfg;
    cfg.manifest = fixtures().manifest_path();
    cfg.ensemble_size = 2;
    cfg.seed = 7;
    const ScanResult scan = run_scan(cfg);
    const CsvTable table = read_csv(scan_to_csv(scan));

    const PlotOutcome p1 = render_scan_plot(table, "h2");
    const PlotOutcome p2 = render_scan_plot(table, "h2");
    REQUIRE_FALSE(p1.empty);
    REQUIRE(p1.svg == p2.svg);
    REQUIRE(p1.svg.find("<svg") == 0);
    REQUIRE(p1.svg.find("polyline") != std::string::npos);
    REQUIRE(p1.svg.find("Error vs FCI") != std::string::npos);
}

TEST_CASE("empty csv renders axes-only with a warning flag") {
    const std::string header_only =
        "r_angstrom,fci_ha,rhf_ha,ens_mean_ha,ens_std_ha,ens_min_ha,ens_max_ha,ens_range_ha,"
        "untrot_ha,sgo_ha,fci_rel_kcal,err_mean_kcal,err_min_kcal,err_max_kcal,err_untrot_kcal,"
        "err_sgo_kcal,all_converged\n";
    const PlotOutcome out = render_scan_plot(read_csv(header_only));
    REQUIRE(out.empty);
    REQUIRE(out.svg.find("no data") != std::string::npos);
}

TEST_CASE("malformed csv errors carry row numbers") {
    REQUIRE_THROWS_WITH(read_csv(std::string("a,b\n1,2\n3\n")), Catch::Contains("row 3"));
    const std::string bad_cell = "r_angstrom,fci_ha\n1.0,oops\n";
    const CsvTable t = read_csv(bad_cell);
    REQUIRE_THROWS_WITH(t.numbers("fci_ha"), Catch::Contains("row 2"));
}

TEST_CASE("sgo rejected inside ensembles") {
    ExperimentConfig cfg;
    cfg.fixture = fixtures().fixture(0.7414);
    cfg.ordering = OrderingKind::sgo;
    const LabSystem sys = load_system(cfg.fixture, cfg);
    REQUIRE_THROWS_AS(run_ensemble(sys, cfg), ConfigError);
}
