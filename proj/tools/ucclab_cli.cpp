// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment harness: inspect fixtures, compute FCI references, run single
// VQE optimizations, ordering ensembles, potential-energy scans, SGO
// constructions, and render scan plots.
//
// Exit codes: 0 success, 2 configuration error, 3 fixture error,
// 4 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ucclab/config.hpp"
#include "ucclab/constants.hpp"
#include "ucclab/ensemble.hpp"
#include "ucclab/scan.hpp"
#include "ucclab/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace ucclab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_fixture = 3;
constexpr int exit_numerical = 4;

struct CommonFlags {
    std::string config_path;
    std::string fixture;
    std::string manifest;
    std::string out;
    std::int64_t seed = -1;
    int threads = -1;
    std::string ansatz;
    int k = 0;
    std::string form;
    std::string ordering;
    int trotter_n = 0;
    int ensemble_size = 0;
    int restarts = 0;
    std::string init;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--fixture", flags.fixture, "FCIDUMP fixture path");
    cmd->add_option("--manifest", flags.manifest, "scan manifest path");
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--seed", flags.seed, "base 64-bit seed");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
    cmd->add_option("--ansatz", flags.ansatz, "uccsd | kupccgsd");
    cmd->add_option("--k", flags.k, "k-UpCCGSD block count");
    cmd->add_option("--form", flags.form, "trotterized | untrotterized");
    cmd->add_option("--ordering", flags.ordering,
                    "as_generated | random_shuffle | singles_first | doubles_first");
    cmd->add_option("--trotter-n", flags.trotter_n, "Trotter number");
    cmd->add_option("--ensemble-size", flags.ensemble_size, "ensemble member count");
    cmd->add_option("--restarts", flags.restarts, "restarts per optimization");
    cmd->add_option("--init", flags.init, "zeros | uniform");
}

ExperimentConfig resolve_config(const CommonFlags& flags) {
    ExperimentConfig cfg;
    if (!flags.config_path.empty()) cfg = ExperimentConfig::from_file(flags.config_path);
    if (!flags.fixture.empty()) cfg.fixture = flags.fixture;
    if (!flags.manifest.empty()) cfg.manifest = flags.manifest;
    if (!flags.out.empty()) cfg.out_dir = flags.out;
    if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.threads >= 0) cfg.threads = flags.threads;
    if (!flags.ansatz.empty()) {
        if (flags.ansatz == "uccsd") cfg.ansatz = PoolKind::uccsd;
        else if (flags.ansatz == "kupccgsd") cfg.ansatz = PoolKind::kupccgsd;
        else throw ConfigError("--ansatz must be uccsd or kupccgsd");
    }
    if (flags.k > 0) cfg.k = flags.k;
    if (!flags.form.empty()) {
        if (flags.form == "trotterized") cfg.form = AnsatzForm::trotterized;
        else if (flags.form == "untrotterized") cfg.form = AnsatzForm::untrotterized;
        else throw ConfigError("--form must be trotterized or untrotterized");
    }
    if (!flags.ordering.empty()) cfg.ordering = ordering_kind_from_name(flags.ordering);
    if (flags.trotter_n > 0) cfg.trotter_n = flags.trotter_n;
    if (flags.ensemble_size > 0) cfg.ensemble_size = flags.ensemble_size;
    if (flags.restarts > 0) cfg.restarts = flags.restarts;
    if (!flags.init.empty()) {
        if (flags.init == "zeros") cfg.init.kind = InitSpec::Kind::zeros;
        else if (flags.init == "uniform") cfg.init.kind = InitSpec::Kind::uniform;
        else throw ConfigError("--init must be zeros or uniform");
        cfg.init_explicit = true;
    }
    cfg.apply_form_defaults();
    return cfg;
}

void write_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

int cmd_inspect(const std::string& path) {
    const MolecularIntegrals ints = load_fcidump(path);
    const OccupationBitstring ref = reference_determinant(ints);
    std::cout << "fixture:      " << path << "\n";
    std::cout << "n_spatial:    " << ints.n_spatial << "\n";
    std::cout << "n_electrons:  " << ints.n_electrons << "\n";
    std::cout << "ms2:          " << ints.ms2 << "\n";
    std::cout << "n_qubits:     " << 2 * ints.n_spatial << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", ints.core_energy);
    std::cout << "core_energy:  " << buf << " Ha\n";
    std::snprintf(buf, sizeof(buf), "%.12f", rhf_energy(ints));
    std::cout << "rhf_energy:   " << buf << " Ha\n";
    std::cout << "h1 symmetric: " << (ints.h1_symmetric() ? "yes" : "no") << "\n";
    std::cout << "reference:    ";
    for (int kq = 0; kq < ref.n_qubits; ++kq) std::cout << (ref.bits[kq] ? '1' : '0');
    std::cout << " (spin orbital 0 leftmost)\n";
    return exit_ok;
}

int cmd_fci(const ExperimentConfig& cfg) {
    if (cfg.fixture.empty()) throw ConfigError("fci: no fixture given");
    const LabSystem sys = load_system(cfg.fixture, cfg);
    const double e = fci_energy(sys);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", e);
    std::cout << "fci_energy: " << buf << " Ha\n";
    return exit_ok;
}

int cmd_vqe(const ExperimentConfig& cfg) {
    if (cfg.fixture.empty()) throw ConfigError("vqe: no fixture given");
    const LabSystem sys = load_system(cfg.fixture, cfg);
    AnsatzProgram program = order_program(sys.pool, OrderingStrategy{cfg.ordering, cfg.seed});
    program.form = cfg.form;
    if (cfg.form == AnsatzForm::trotterized) program = set_trotter_number(program, cfg.trotter_n);
    const VqeResult res = optimize_member(sys.pool, program, sys, cfg, cfg.seed);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", res.energy);
    std::cout << "energy:     " << buf << " Ha\n";
    std::cout << "iterations: " << res.iterations << "\n";
    std::cout << "converged:  " << (res.converged ? "yes" : "no") << "\n";
    if (!cfg.out_dir.empty()) {
        nlohmann::json j;
        j["config"] = cfg.to_json();
        j["fixture_hash"] = sys.fixture_hash;
        j["ordering"] = program_to_json(sys.pool, program);
        j["result"] = result_to_json(res);
        write_file(fs::path(cfg.out_dir) / "vqe.json", j.dump(2) + "\n");
    }
    return exit_ok;
}

int cmd_ensemble(const ExperimentConfig& cfg) {
    if (cfg.fixture.empty()) throw ConfigError("ensemble: no fixture given");
    const LabSystem sys = load_system(cfg.fixture, cfg);
    const EnsembleRecord record = run_ensemble(sys, cfg);

    write_file(fs::path(cfg.out_dir) / "ensemble.json",
               ensemble_to_json(sys, cfg, record).dump(2) + "\n");
    write_file(fs::path(cfg.out_dir) / "members.csv", ensemble_to_csv(record));

    const EnsembleSummary& s = record.summary;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "members %d  mean %.9f  std %.3e  min %.9f  max %.9f  range %.3e Ha (%.3f kcal/mol)",
                  s.count, s.mean, s.std_dev, s.min, s.max, s.range, s.range * kcal_per_hartree);
    std::cout << buf << "\n";
    if (!s.all_converged) std::cout << "note: at least one member did not converge (recorded)\n";
    return exit_ok;
}

int cmd_scan(const ExperimentConfig& cfg) {
    const ScanResult scan = run_scan(cfg);
    write_file(fs::path(cfg.out_dir) / "scan.csv", scan_to_csv(scan));
    write_file(fs::path(cfg.out_dir) / "summary.csv", summaries_to_csv(scan));
    write_file(fs::path(cfg.out_dir) / "config.json", cfg.to_json().dump(2) + "\n");
    for (std::size_t i = 0; i < scan.ensemble_records.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "point_%03zu_ensemble.json", i);
        write_file(fs::path(cfg.out_dir) / "points" / name,
                   scan.ensemble_records[i].dump(2) + "\n");
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", scan.dissociation_ref);
    std::cout << "scan points: " << scan.points.size() << "\n";
    std::cout << "dissociation reference (FCI at max R): " << buf << " Ha\n";
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "scan.csv").string() << "\n";
    return exit_ok;
}

int cmd_sgo(const ExperimentConfig& cfg) {
    if (cfg.fixture.empty()) throw ConfigError("sgo: no fixture given");
    const LabSystem sys = load_system(cfg.fixture, cfg);
    SgoOptions opts;
    opts.vqe = cfg.vqe;
    const SgoOutcome sgo = sgo_ordering(sys.pool, sys.hamiltonian, sys.reference, opts);

    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["fixture_hash"] = sys.fixture_hash;
    j["ordering"] = program_to_json(sys.pool, sgo.program);
    j["result"] = result_to_json(sgo.final_result);
    nlohmann::json trace = nlohmann::json::array();
    for (const SgoStep& step : sgo.trace)
        trace.push_back({{"step", step.step},
                         {"generator", step.chosen_id},
                         {"label", sys.pool.at(step.chosen_id).label()},
                         {"score", step.score},
                         {"energy_ha", step.energy},
                         {"iterations", step.iterations}});
    j["trace"] = std::move(trace);
    write_file(fs::path(cfg.out_dir) / "sgo.json", j.dump(2) + "\n");

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", sgo.final_result.energy);
    std::cout << "sgo steps: " << sgo.trace.size() << "\n";
    std::cout << "sgo energy: " << buf << " Ha\n";
    return exit_ok;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open csv: " + csv_path);
    const CsvTable table = read_csv(in);
    const PlotOutcome outcome = render_scan_plot(table, fs::path(csv_path).stem().string());
    const fs::path out =
        fs::path(out_dir.empty() ? "." : out_dir) / (fs::path(csv_path).stem().string() + ".svg");
    write_file(out, outcome.svg);
    if (outcome.empty) std::cerr << "warning: no data series; wrote axes-only plot\n";
    std::cout << "wrote " << out.string() << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-ordering laboratory for Trotterized UCC ansatz simulation"};
    app.require_subcommand(1);

    std::string inspect_path;
    CLI::App* inspect = app.add_subcommand("inspect", "summarize an FCIDUMP fixture");
    inspect->add_option("fcidump", inspect_path, "FCIDUMP path")->required();

    CommonFlags fci_flags;
    CLI::App* fci = app.add_subcommand("fci", "exact sector ground energy");
    add_common(fci, fci_flags);

    CommonFlags vqe_flags;
    CLI::App* vqe = app.add_subcommand("vqe", "single VQE optimization");
    add_common(vqe, vqe_flags);

    CommonFlags ens_flags;
    CLI::App* ens = app.add_subcommand("ensemble", "ensemble over operator orderings");
    add_common(ens, ens_flags);

    CommonFlags scan_flags;
    CLI::App* scan = app.add_subcommand("scan", "potential energy scan over a fixture manifest");
    add_common(scan, scan_flags);

    bool scan_sgo = false, scan_untrot = false;
    scan->add_flag("--sgo", scan_sgo, "include an SGO energy per geometry");
    scan->add_flag("--untrot", scan_untrot, "include a directly optimized untrotterized energy");

    CommonFlags sgo_flags;
    CLI::App* sgo = app.add_subcommand("sgo", "sequential gradient ordering construction");
    add_common(sgo, sgo_flags);

    std::string plot_csv, plot_out;
    CLI::App* plot = app.add_subcommand("plot", "render a scan CSV to SVG");
    plot->add_option("csv", plot_csv, "scan.csv path")->required();
    plot->add_option("--out", plot_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        if (inspect->parsed()) return cmd_inspect(inspect_path);
        if (fci->parsed()) return cmd_fci(resolve_config(fci_flags));
        if (vqe->parsed()) return cmd_vqe(resolve_config(vqe_flags));
        if (ens->parsed()) return cmd_ensemble(resolve_config(ens_flags));
        if (scan->parsed()) {
            ExperimentConfig cfg = resolve_config(scan_flags);
            cfg.scan_sgo = cfg.scan_sgo || scan_sgo;
            cfg.scan_untrot = cfg.scan_untrot || scan_untrot;
            return cmd_scan(cfg);
        }
        if (sgo->parsed()) return cmd_sgo(resolve_config(sgo_flags));
        if (plot->parsed()) return cmd_plot(plot_csv, plot_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const CsvError& e) {
        std::cerr << "csv error: " << e.what() << "\n";
        return exit_config;
    } catch (const FcidumpParseError& e) {
        std::cerr << "fixture error: " << e.what() << "\n";
        return exit_fixture;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        const bool fixture_related = what.find("fixture") != std::string::npos ||
                                     what.find("manifest") != std::string::npos ||
                                     what.find("FCIDUMP") != std::string::npos;
        std::cerr << "error: " << what << "\n";
        return fixture_related ? exit_fixture : exit_config;
    }
    return exit_config;
}
