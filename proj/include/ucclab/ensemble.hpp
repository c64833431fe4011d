// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucclab/config.hpp"
#include "ucclab/constants.hpp"
#include "ucclab/fci.hpp"
#include "ucclab/fcidump.hpp"
#include "ucclab/hamiltonian.hpp"
#include "ucclab/jordan_wigner.hpp"
#include "ucclab/thread_pool.hpp"
#include "ucclab/vqe.hpp"

namespace ucclab {

/// A fixture lifted into simulation objects: qubit Hamiltonian, reference
/// state, generator pool. Immutable; shared read-only across workers.
struct LabSystem {
    MolecularIntegrals ints;
    PauliSum hamiltonian;
    Statevector reference;
    GeneratorPool pool;
    std::uint64_t fixture_hash = 0;
    std::string fixture_path;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace detail

inline LabSystem load_system(const std::string& fixture_path, const ExperimentConfig& cfg) {
    std::ifstream in(fixture_path);
    if (!in) throw std::runtime_error("fixture not found: " + fixture_path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    LabSystem sys;
    sys.fixture_path = fixture_path;
    sys.fixture_hash = detail::fnv1a(bytes);
    sys.ints = parse_fcidump(bytes);
    if (sys.ints.ms2 != 0 || sys.ints.n_electrons % 2 != 0)
        throw std::runtime_error("fixture " + fixture_path +
                                 ": only closed-shell singlet references are supported");
    const int n_qubits = 2 * sys.ints.n_spatial;
    sys.hamiltonian = jordan_wigner(build_fermionic_hamiltonian(sys.ints), n_qubits);
    sys.reference = from_occupation(reference_determinant(sys.ints));
    if (cfg.ansatz == PoolKind::uccsd)
        sys.pool = uccsd_pool(sys.ints.n_spatial, sys.ints.n_electrons / 2,
                              sys.ints.n_electrons / 2);
    else
        sys.pool = kupccgsd_pool(sys.ints.n_spatial, cfg.k);
    return sys;
}

inline double fci_energy(const LabSystem& sys) {
    const SectorBasis basis = sector_basis(2 * sys.ints.n_spatial, sys.ints.n_electrons / 2,
                                           sys.ints.n_electrons / 2);
    return fci_ground_energy(sys.hamiltonian, basis);
}

struct EnsembleMember {
    int index = 0;
    std::uint64_t seed = 0;
    AnsatzProgram program;
    VqeResult result;
};

/// Sample statistics over member energies: sample standard deviation (n-1),
/// zero with a flag for a single member.
struct EnsembleSummary {
    int count = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double range = 0.0;
    bool single_member = false;
    bool all_converged = true;
};

inline EnsembleSummary summarize(const std::vector<double>& energies) {
    if (energies.empty()) throw std::invalid_argument("summarize: no members");
    EnsembleSummary s;
    s.count = static_cast<int>(energies.size());
    s.min = *std::min_element(energies.begin(), energies.end());
    s.max = *std::max_element(energies.begin(), energies.end());
    s.range = s.max - s.min;
    double sum = 0.0;
    for (double e : energies) sum += e;
    s.mean = sum / s.count;
    if (energies.size() == 1) {
        s.single_member = true;
        s.std_dev = 0.0;
    } else {
        double ss = 0.0;
        for (double e : energies) ss += (e - s.mean) * (e - s.mean);
        s.std_dev = std::sqrt(ss / (s.count - 1));
    }
    return s;
}

struct EnsembleRecord {
    std::vector<EnsembleMember> members;
    EnsembleSummary summary;
};

/// One optimization under the config's initialization policy: trotterized
/// programs start at zero (optionally with restarts when init = uniform),
/// untrotterized ones restart from the init distribution.
inline VqeResult optimize_member(const GeneratorPool& pool, const AnsatzProgram& program,
                                 const LabSystem& sys, const ExperimentConfig& cfg,
                                 std::uint64_t member_seed) {
    if (cfg.restarts == 1 && cfg.init.kind == InitSpec::Kind::zeros) {
        const std::vector<double> zeros(program.parameter_count(), 0.0);
        return minimize_vqe(pool, program, zeros, sys.hamiltonian, sys.reference, cfg.vqe);
    }
    const RestartOutcome outcome = optimize_with_restarts(
        pool, program, cfg.restarts, cfg.init, member_seed, sys.hamiltonian, sys.reference, cfg.vqe);
    return outcome.best;
}

/// Ensemble over orderings: member i orders the pool with the strategy
/// seeded by substream (config.seed, i), optimizes, and is recorded.
/// Members run in a parallel worker pool; outputs are keyed by member index
/// and therefore identical for any thread count.
inline EnsembleRecord run_ensemble(const LabSystem& sys, const ExperimentConfig& cfg) {
    if (cfg.ordering == OrderingKind::sgo)
        throw ConfigError("run_ensemble: sgo is deterministic; use the sgo command instead");
    EnsembleRecord record;
    record.members.resize(static_cast<std::size_t>(cfg.ensemble_size));

    parallel_for(record.members.size(), cfg.threads, [&](std::size_t i) {
        EnsembleMember member;
        member.index = static_cast<int>(i);
        member.seed = substream_seed(cfg.seed, i);
        AnsatzProgram program =
            order_program(sys.pool, OrderingStrategy{cfg.ordering, member.seed});
        program.form = cfg.form;
        if (cfg.form == AnsatzForm::trotterized)
            program = set_trotter_number(program, cfg.trotter_n);
        member.result = optimize_member(sys.pool, program, sys, cfg, member.seed);
        member.program = std::move(program);
        record.members[i] = std::move(member);
    });

    std::vector<double> energies;
    energies.reserve(record.members.size());
    for (const EnsembleMember& m : record.members) energies.push_back(m.result.energy);
    record.summary = summarize(energies);
    for (const EnsembleMember& m : record.members)
        record.summary.all_converged = record.summary.all_converged && m.result.converged;
    return record;
}

inline nlohmann::json result_to_json(const VqeResult& r) {
    return {{"energy_ha", r.energy},
            {"parameters", r.parameters},
            {"iterations", r.iterations},
            {"final_gradient_norm", r.final_gradient_norm},
            {"converged", r.converged},
            {"wall_time_s", r.wall_time_s}};
}

inline nlohmann::json summary_to_json(const EnsembleSummary& s) {
    return {{"count", s.count},
            {"mean_ha", s.mean},
            {"std_ha", s.std_dev},
            {"min_ha", s.min},
            {"max_ha", s.max},
            {"range_ha", s.range},
            {"mean_kcal", s.mean * kcal_per_hartree},
            {"std_kcal", s.std_dev * kcal_per_hartree},
            {"range_kcal", s.range * kcal_per_hartree},
            {"single_member", s.single_member},
            {"all_converged", s.all_converged}};
}

inline nlohmann::json ensemble_to_json(const LabSystem& sys, const ExperimentConfig& cfg,
                                       const EnsembleRecord& record) {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["fixture_hash"] = sys.fixture_hash;
    j["fixture"] = sys.fixture_path;
    nlohmann::json members = nlohmann::json::array();
    for (const EnsembleMember& m : record.members)
        members.push_back({{"member", m.index},
                           {"seed", m.seed},
                           {"ordering", program_to_json(sys.pool, m.program)},
                           {"result", result_to_json(m.result)}});
    j["members"] = std::move(members);
    j["summary"] = summary_to_json(record.summary);
    return j;
}

/// Member CSV: one row per ordering, no timing columns (those live only in
/// the JSON record).
inline std::string ensemble_to_csv(const EnsembleRecord& record) {
    std::string csv = "member,seed,energy_ha,converged,iterations,grad_norm\n";
    char buf[192];
    for (const EnsembleMember& m : record.members) {
        std::snprintf(buf, sizeof(buf), "%d,%llu,%.17g,%d,%d,%.17g\n", m.index,
                      static_cast<unsigned long long>(m.seed), m.result.energy,
                      m.result.converged ? 1 : 0, m.result.iterations,
                      m.result.final_gradient_norm);
        csv += buf;
    }
    return csv;
}

/// Rebuild a member's program from its serialized record and re-optimize
/// under the same config policy; the reproducibility contract is agreement
/// with the recorded energy to 1e-10.
inline double reoptimize_member(const nlohmann::json& member_json, const LabSystem& sys,
                                const ExperimentConfig& cfg) {
    const AnsatzProgram program = program_from_json(member_json.at("ordering"), sys.pool);
    const std::uint64_t seed = member_json.at("seed").get<std::uint64_t>();
    return optimize_member(sys.pool, program, sys, cfg, seed).energy;
}

} // namespace ucclab
