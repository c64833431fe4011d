// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ucclab/ensemble.hpp"

namespace ucclab {

/// One manifest entry: bond length (angstrom) and fixture path.
struct ManifestEntry {
    double r = 0.0;
    std::string path;
};

/// Manifest format: '#' comments; records "R_angstrom filename [extras...]"
/// with filenames relative to the manifest's directory.
inline std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("manifest not found: " + manifest_path);
    const std::filesystem::path dir = std::filesystem::path(manifest_path).parent_path();
    std::vector<ManifestEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ManifestEntry e;
        std::string filename;
        if (!(ls >> e.r >> filename)) continue;
        e.path = (dir / filename).string();
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw std::runtime_error("manifest has no entries: " + manifest_path);
    return entries;
}

struct ScanPoint {
    double r = 0.0;
    std::string fixture;
    double fci = 0.0;
    double rhf = 0.0;
    EnsembleSummary ensemble;
    bool has_untrot = false;
    double untrot = 0.0;
    bool has_sgo = false;
    double sgo = 0.0;
};

struct ScanResult {
    std::vector<ScanPoint> points;
    double dissociation_ref = 0.0; // FCI at the largest scanned R
    std::vector<nlohmann::json> ensemble_records;
};

/// Potential energy scan: per grid point, FCI, the ordering ensemble, and
/// optionally the directly optimized untrotterized energy and the SGO
/// energy. Points run sequentially; each point's ensemble parallelizes over
/// members.
inline ScanResult run_scan(const ExperimentConfig& cfg) {
    if (cfg.manifest.empty()) throw ConfigError("run_scan: config has no manifest");
    const std::vector<ManifestEntry> entries = read_manifest(cfg.manifest);
    for (const ManifestEntry& e : entries)
        if (!std::filesystem::exists(e.path))
            throw std::runtime_error("scan fixture missing: " + e.path);

    ScanResult result;
    std::vector<std::pair<double, double>> fci_curve;
    for (const ManifestEntry& entry : entries) {
        const LabSystem sys = load_system(entry.path, cfg);
        ScanPoint point;
        point.r = entry.r;
        point.fixture = entry.path;
        point.fci = fci_energy(sys);
        point.rhf = expectation(sys.hamiltonian, sys.reference);
        fci_curve.emplace_back(entry.r, point.fci);

        const EnsembleRecord ens = run_ensemble(sys, cfg);
        point.ensemble = ens.summary;
        result.ensemble_records.push_back(ensemble_to_json(sys, cfg, ens));

        if (cfg.scan_untrot) {
            ExperimentConfig ucfg = cfg;
            ucfg.form = AnsatzForm::untrotterized;
            // one optimization per point; the finite-difference loop takes
            // the worker pool instead of the (idle) member pool
            ucfg.vqe.fd_threads = cfg.threads;
            AnsatzProgram program =
                order_program(sys.pool, OrderingStrategy{OrderingKind::as_generated, 0});
            program.form = AnsatzForm::untrotterized;
            point.untrot = optimize_member(sys.pool, program, sys, ucfg, cfg.seed).energy;
            point.has_untrot = true;
        }
        if (cfg.scan_sgo) {
            SgoOptions sgo_opts;
            sgo_opts.vqe = cfg.vqe;
            point.sgo = sgo_ordering(sys.pool, sys.hamiltonian, sys.reference, sgo_opts)
                            .final_result.energy;
            point.has_sgo = true;
        }
        result.points.push_back(std::move(point));
    }
    result.dissociation_ref = dissociation_reference(fci_curve);
    return result;
}

/// Scan CSV. Hartree columns first, then kcal/mol renderings relative to
/// the FCI dissociation limit and as errors vs FCI (conversion constant
/// applied exactly once). Disabled columns are empty.
inline std::string scan_to_csv(const ScanResult& scan) {
    std::string csv =
        "r_angstrom,fci_ha,rhf_ha,ens_mean_ha,ens_std_ha,ens_min_ha,ens_max_ha,ens_range_ha,"
        "untrot_ha,sgo_ha,fci_rel_kcal,err_mean_kcal,err_min_kcal,err_max_kcal,err_untrot_kcal,"
        "err_sgo_kcal,all_converged\n";
    char buf[640];
    for (const ScanPoint& p : scan.points) {
        auto opt = [](bool has, double v) {
            if (!has) return std::string{};
            char b[40];
            std::snprintf(b, sizeof(b), "%.17g", v);
            return std::string(b);
        };
        const double k = kcal_per_hartree;
        std::snprintf(buf, sizeof(buf),
                      "%.6g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s,%.17g,%.17g,%.17g,"
                      "%.17g,%s,%s,%d\n",
                      p.r, p.fci, p.rhf, p.ensemble.mean, p.ensemble.std_dev, p.ensemble.min,
                      p.ensemble.max, p.ensemble.range, opt(p.has_untrot, p.untrot).c_str(),
                      opt(p.has_sgo, p.sgo).c_str(), (p.fci - scan.dissociation_ref) * k,
                      (p.ensemble.mean - p.fci) * k, (p.ensemble.min - p.fci) * k,
                      (p.ensemble.max - p.fci) * k,
                      opt(p.has_untrot, (p.untrot - p.fci) * k).c_str(),
                      opt(p.has_sgo, (p.sgo - p.fci) * k).c_str(),
                      p.ensemble.all_converged ? 1 : 0);
        csv += buf;
    }
    return csv;
}

/// Per-geometry statistics table (mean/std/min/max/range), CSV form.
inline std::string summaries_to_csv(const ScanResult& scan) {
    std::string csv = "r_angstrom,count,mean_ha,std_ha,min_ha,max_ha,range_ha,range_kcal\n";
    char buf[320];
    for (const ScanPoint& p : scan.points) {
        std::snprintf(buf, sizeof(buf), "%.6g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.r,
                      p.ensemble.count, p.ensemble.mean, p.ensemble.std_dev, p.ensemble.min,
                      p.ensemble.max, p.ensemble.range, p.ensemble.range * kcal_per_hartree);
        csv += buf;
    }
    return csv;
}

} // namespace ucclab
