// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

// Emits the FCIDUMP fixture tree consumed by the simulation suites: linear
// H2/H4/H6 chains, LiH, BeH2, and frozen-core N2 over documented bond-length
// grids, each with a per-system manifest. Scans walk the grid from short to
// long bonds, warm-starting each RHF from the previous density and keeping
// whichever of {warm walk, cold guesses} converges lower.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "scf.hpp"
#include "ucclab/constants.hpp"
#include "ucclab/fci.hpp"
#include "ucclab/fcidump.hpp"
#include "ucclab/hamiltonian.hpp"
#include "ucclab/jordan_wigner.hpp"

namespace {

using fixturegen::AoIntegrals;
using fixturegen::Molecule;
using fixturegen::ScfResult;

struct SystemSpec {
    std::string name;
    std::string description;
    int n_frozen = 0;
    std::vector<double> grid; // angstrom
    Molecule (*build)(double r_angstrom);
};

Molecule hydrogen_chain(int n, double r_angstrom) {
    Molecule mol;
    mol.name = "h" + std::to_string(n);
    const double r = r_angstrom * ucclab::bohr_per_angstrom;
    for (int i = 0; i < n; ++i) mol.atoms.push_back({1, {0.0, 0.0, i * r}});
    return mol;
}

Molecule build_h2(double r) { return hydrogen_chain(2, r); }
Molecule build_h4(double r) { return hydrogen_chain(4, r); }
Molecule build_h6(double r) { return hydrogen_chain(6, r); }

Molecule build_lih(double r_angstrom) {
    Molecule mol;
    mol.name = "lih";
    mol.atoms = {{3, {0.0, 0.0, 0.0}}, {1, {0.0, 0.0, r_angstrom * ucclab::bohr_per_angstrom}}};
    return mol;
}

Molecule build_beh2(double r_angstrom) {
    Molecule mol;
    mol.name = "beh2";
    const double r = r_angstrom * ucclab::bohr_per_angstrom;
    mol.atoms = {{1, {0.0, 0.0, -r}}, {4, {0.0, 0.0, 0.0}}, {1, {0.0, 0.0, r}}};
    return mol;
}

Molecule build_n2(double r_angstrom) {
    Molecule mol;
    mol.name = "n2";
    mol.atoms = {{7, {0.0, 0.0, 0.0}}, {7, {0.0, 0.0, r_angstrom * ucclab::bohr_per_angstrom}}};
    return mol;
}

std::vector<SystemSpec> all_systems() {
    return {
        {"h2", "H2, linear, interatomic distance R", 0,
         {0.5, 0.6, 0.7, 0.7414, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 2.5}, &build_h2},
        {"h4", "H4 chain, uniform spacing R", 0, {0.8, 1.0, 1.25, 1.5, 1.8, 2.0}, &build_h4},
        {"h6", "H6 chain, uniform spacing R", 0,
         {0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4}, &build_h6},
        {"lih", "LiH, bond length R", 0, {1.0, 1.2, 1.4, 1.5949, 1.8, 2.2, 2.6, 3.0, 3.5},
         &build_lih},
        {"beh2", "BeH2, linear symmetric, Be-H distance R", 0,
         {0.9, 1.1, 1.3264, 1.5, 1.8, 2.2, 2.6, 3.0}, &build_beh2},
        {"n2", "N2, bond length R, 1s/2s orbitals frozen (4 lowest MOs)", 4,
         {0.9, 1.0977, 1.3, 1.6, 2.0, 2.4, 2.8, 2.9, 3.0, 3.1, 3.2, 3.5, 4.0}, &build_n2},
    };
}

std::string format_r(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", r);
    return buf;
}

int generate_system(const SystemSpec& spec, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir / spec.name);
    std::ofstream manifest(out_dir / spec.name / "manifest.txt");
    manifest << "# system: " << spec.name << "\n";
    manifest << "# geometry: " << spec.description << " (angstrom)\n";
    manifest << "# basis: STO-3G (standard tabulated exponents/contractions)\n";
    manifest << "# producer: fixturegen (McMurchie-Davidson integrals, RHF/DIIS, MO transform";
    if (spec.n_frozen > 0) manifest << ", " << spec.n_frozen << " frozen core MOs";
    manifest << ")\n";
    manifest << "# units: Hartree; angstrom-to-bohr factor " << ucclab::bohr_per_angstrom << "\n";
    manifest << "# dissociation reference: E_FCI at the largest R below\n";
    manifest << "# columns: R_angstrom filename E_RHF E_FCI\n";

    const std::size_t n_points = spec.grid.size();
    std::vector<Molecule> mols;
    std::vector<AoIntegrals> aos;
    std::vector<ScfResult> best(n_points);
    for (double r : spec.grid) {
        mols.push_back(spec.build(r));
        aos.push_back(fixturegen::compute_ao_integrals(mols.back()));
    }

    // cold starts plus warm walks in both directions; keep the lowest
    // converged solution per point so the scan sits on the minimum
    // restricted branch everywhere
    for (std::size_t i = 0; i < n_points; ++i) best[i] = fixturegen::run_rhf(mols[i], aos[i]);
    auto walk = [&](bool forward) {
        Eigen::MatrixXd warm;
        bool have_warm = false;
        for (std::size_t step = 0; step < n_points; ++step) {
            const std::size_t i = forward ? step : n_points - 1 - step;
            if (have_warm) {
                const ScfResult walked = fixturegen::run_rhf(mols[i], aos[i], &warm);
                if (walked.converged && (!best[i].converged || walked.energy < best[i].energy))
                    best[i] = walked;
            }
            if (best[i].converged) {
                warm = best[i].density;
                have_warm = true;
            }
        }
    };
    walk(true);
    walk(false);
    walk(true);

    for (std::size_t i = 0; i < n_points; ++i) {
        const double r = spec.grid[i];
        if (!best[i].converged) {
            std::cerr << spec.name << " R=" << format_r(r) << ": RHF did not converge\n";
            return 1;
        }
        const ucclab::MolecularIntegrals ints =
            fixturegen::to_molecular_integrals(mols[i], aos[i], best[i], spec.n_frozen);
        const std::string filename = spec.name + "_" + format_r(r) + ".fcidump";
        ucclab::save_fcidump(ints, (out_dir / spec.name / filename).string());

        const ucclab::PauliSum hamiltonian =
            ucclab::jordan_wigner(ucclab::build_fermionic_hamiltonian(ints), 2 * ints.n_spatial);
        const ucclab::SectorBasis basis = ucclab::sector_basis(
            2 * ints.n_spatial, ints.n_electrons / 2, ints.n_electrons / 2);
        const double fci = ucclab::fci_ground_energy(hamiltonian, basis);

        char line[200];
        std::snprintf(line, sizeof(line), "%.4f %s %.12f %.12f\n", r, filename.c_str(),
                      best[i].energy, fci);
        manifest << line;
        std::cout << spec.name << " R=" << format_r(r) << "  E_RHF=" << best[i].energy
                  << "  E_FCI=" << fci << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::string out = "fixtures";
    std::string only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--out" && i + 1 < argc) out = argv[++i];
        else if (arg == "--only" && i + 1 < argc) only = argv[++i];
        else {
            std::cerr << "usage: fixturegen [--out DIR] [--only SYSTEM]\n";
            return 2;
        }
    }
    for (const SystemSpec& spec : all_systems()) {
        if (!only.empty() && spec.name != only) continue;
        if (int rc = generate_system(spec, out); rc != 0) return rc;
    }
    return 0;
}
