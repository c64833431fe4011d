// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include "oracles.hpp"
#include "ucclab/fci.hpp"
#include "ucclab/fcidump.hpp"
#include "ucclab/hamiltonian.hpp"
#include "ucclab/jordan_wigner.hpp"
#include "ucclab/rng.hpp"

using namespace ucclab;

namespace {

/// Random Hermitian, particle- and Sz-conserving two-body Hamiltonian via
/// random molecular-style integrals.
PauliSum random_molecular_hamiltonian(SplitMix64& rng, int n_spatial) {
    MolecularIntegrals ints;
    ints.n_spatial = n_spatial;
    ints.n_electrons = 2;
    ints.allocate();
    ints.core_energy = rng.uniform(-1.0, 1.0);
    for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q <= p; ++q) ints.set_one_body(p, q, rng.uniform(-1.0, 1.0));
    for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (r == p && s > q) continue;
                    ints.set_two_body(p, q, r, s, rng.uniform(-0.5, 0.5));
                }
    return jordan_wigner(build_fermionic_hamiltonian(ints), 2 * n_spatial);
}

} // namespace

TEST_CASE("sector basis enumeration") {
    const SectorBasis h2 = sector_basis(4, 1, 1);
    REQUIRE(h2.size() == 4);
    // ascending
    for (std::size_t i = 1; i < h2.states.size(); ++i) REQUIRE(h2.states[i] > h2.states[i - 1]);

    REQUIRE(sector_basis(12, 3, 3).size() == 400);
    REQUIRE(sector_basis(6, 0, 0).size() == 1);
    REQUIRE(sector_basis(6, 0, 0).states[0] == 0);
    REQUIRE_THROWS_AS(sector_basis(4, 3, 0), std::invalid_argument);
}

TEST_CASE("constant hamiltonian has its constant as ground energy") {
    PauliSum h(4);
    h.add(0, 0, cplx{-2.5, 0.0});
    const SectorBasis basis = sector_basis(4, 1, 1);
    REQUIRE(fci_ground_energy(h, basis) == Approx(-2.5));
}

TEST_CASE("sector diagonalization equals the full dense spectrum restricted to the sector") {
    SplitMix64 rng(31415);
    for (int trial = 0; trial < 4; ++trial) {
        const int n_spatial = 2 + static_cast<int>(rng.below(2)); // 4 or 6 qubits
        const PauliSum h = random_molecular_hamiltonian(rng, n_spatial);
        const int n_qubits = 2 * n_spatial;

        for (int n_alpha = 0; n_alpha <= n_spatial; ++n_alpha) {
            const int n_beta = n_alpha;
            const SectorBasis basis = sector_basis(n_qubits, n_alpha, n_beta);
            const double sector_energy = fci_ground_energy(h, basis);

            // oracle: full 2^n dense eigendecomposition; among eigenpairs
            // whose eigenvectors overlap the sector, take the minimum
            const oracle::Matrix dense = oracle::dense_pauli_matrix(h);
            Eigen::SelfAdjointEigenSolver<oracle::Matrix> solver(dense);
            double best = 1e300;
            for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
                double in_sector = 0.0;
                for (const std::uint64_t b : basis.states)
                    in_sector += std::norm(solver.eigenvectors()(static_cast<Eigen::Index>(b), k));
                if (in_sector > 1e-6) best = std::min(best, solver.eigenvalues()(k));
            }
            REQUIRE(sector_energy == Approx(best).margin(1e-10));
        }
    }
}

TEST_CASE("sector closure: H maps random sector vectors into the sector") {
    SplitMix64 rng(999);
    const PauliSum h = random_molecular_hamiltonian(rng, 3);
    const SectorBasis basis = sector_basis(6, 2, 2);

    for (int trial = 0; trial < 5; ++trial) {
        Statevector v(6);
        for (const std::uint64_t b : basis.states)
            v.amplitudes[b] = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double n = v.norm();
        for (auto& a : v.amplitudes) a /= n;

        const Statevector hv = apply_hamiltonian(h, v);
        double outside = 0.0;
        std::vector<bool> in_sector(1 << 6, false);
        for (const std::uint64_t b : basis.states) in_sector[b] = true;
        for (std::size_t b = 0; b < hv.dim(); ++b)
            if (!in_sector[b]) outside += std::norm(hv.amplitudes[b]);
        REQUIRE(std::sqrt(outside) < 1e-10);
    }
}

TEST_CASE("energy is invariant under basis enumeration permutations") {
    SplitMix64 rng(2024);
    const PauliSum h = random_molecular_hamiltonian(rng, 2);
    SectorBasis basis = sector_basis(4, 1, 1);
    const double reference = fci_ground_energy(h, basis);

    for (int trial = 0; trial < 4; ++trial) {
        SectorBasis shuffled = basis;
        seeded_shuffle(shuffled.states, rng.next());
        REQUIRE(fci_ground_energy(h, shuffled) == Approx(reference).margin(1e-10));
    }
}

TEST_CASE("symmetry-violating hamiltonians are rejected") {
    // a single X flips occupation and leaks out of the sector
    PauliSum h(4);
    h.add(0b0001, 0, cplx{1.0, 0.0});
    const SectorBasis basis = sector_basis(4, 1, 1);
    REQUIRE_THROWS_AS(fci_ground_energy(h, basis), std::logic_error);

    PauliSum nonherm(4);
    nonherm.add(0, 0b0001, cplx{0.0, 1.0});
    REQUIRE_THROWS_AS(fci_ground_energy(nonherm, basis), std::invalid_argument);
}

TEST_CASE("dissociation reference picks the largest-R energy") {
    REQUIRE(dissociation_reference({{1.0, -2.0}}) == Approx(-2.0));
    REQUIRE(dissociation_reference({{1.0, -2.0}, {3.0, -1.5}, {2.0, -1.8}}) == Approx(-1.5));
    REQUIRE_THROWS_AS(dissociation_reference({}), std::invalid_argument);
}
