// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <vector>

#include "ucclab/fcidump.hpp"
#include "ucclab/fermion_op.hpp"
#include "ucclab/generator.hpp"

namespace ucclab {

/// Occupation pattern over spin orbitals; bit k is the occupation of spin
/// orbital k (interleaved convention: alpha even, beta odd).
struct OccupationBitstring {
    int n_qubits = 0;
    std::vector<bool> bits;

    std::uint64_t index() const {
        std::uint64_t idx = 0;
        for (int k = 0; k < n_qubits; ++k)
            if (bits[k]) idx |= 1ull << k;
        return idx;
    }

    int count_alpha() const {
        int c = 0;
        for (int k = 0; k < n_qubits; k += 2) c += bits[k] ? 1 : 0;
        return c;
    }
    int count_beta() const {
        int c = 0;
        for (int k = 1; k < n_qubits; k += 2) c += bits[k] ? 1 : 0;
        return c;
    }
};

/// RHF singlet reference: the lowest n_electrons/2 spatial orbitals doubly
/// occupied (FCIDUMP orbital order is the RHF canonical order by convention).
inline OccupationBitstring reference_determinant(const MolecularIntegrals& ints) {
    if (ints.n_electrons % 2 != 0)
        throw std::invalid_argument("reference_determinant: odd electron count unsupported (RHF singlet only)");
    OccupationBitstring occ;
    occ.n_qubits = 2 * ints.n_spatial;
    occ.bits.assign(occ.n_qubits, false);
    const int n_occ = ints.n_electrons / 2;
    if (n_occ > ints.n_spatial)
        throw std::invalid_argument("reference_determinant: more electron pairs than orbitals");
    for (int p = 0; p < n_occ; ++p) {
        occ.bits[spin_orbital(p, 0)] = true;
        occ.bits[spin_orbital(p, 1)] = true;
    }
    return occ;
}

/// Second-quantized spin-orbital Hamiltonian
///   E_core + Σ_{pq,σ} h1[p][q] a†_{pσ} a_{qσ}
///          + ½ Σ_{pqrs,στ} (pr|qs) a†_{pσ} a†_{qτ} a_{sτ} a_{rσ}
/// over interleaved spin orbitals. The result is Hermitian.
inline FermionOperator build_fermionic_hamiltonian(const MolecularIntegrals& ints) {
    FermionOperator h;
    if (ints.core_energy != 0.0) h.add_term({}, ints.core_energy);
    const int n = ints.n_spatial;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const double v = ints.one_body(p, q);
            if (v == 0.0) continue;
            for (int spin = 0; spin < 2; ++spin)
                h.add_term({{spin_orbital(p, spin), true}, {spin_orbital(q, spin), false}}, v);
        }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const double v = ints.two_body(p, r, q, s); // (pr|qs)
                    if (v == 0.0) continue;
                    for (int sp = 0; sp < 2; ++sp)
                        for (int tau = 0; tau < 2; ++tau) {
                            const int ip = spin_orbital(p, sp), iq = spin_orbital(q, tau);
                            const int ir = spin_orbital(r, sp), is = spin_orbital(s, tau);
                            if (ip == iq || ir == is) continue; // nilpotent
                            h.add_term({{ip, true}, {iq, true}, {is, false}, {ir, false}}, 0.5 * v);
                        }
                }
    return h;
}

/// Closed-shell Slater-Condon energy of the reference determinant:
/// E_core + Σ_i 2 h_ii + Σ_ij (2(ii|jj) - (ij|ji)) over occupied spatial
/// orbitals. Used as the RHF-energy oracle.
inline double rhf_energy(const MolecularIntegrals& ints) {
    const int n_occ = ints.n_electrons / 2;
    double e = ints.core_energy;
    for (int i = 0; i < n_occ; ++i) e += 2.0 * ints.one_body(i, i);
    for (int i = 0; i < n_occ; ++i)
        for (int j = 0; j < n_occ; ++j)
            e += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
    return e;
}

} // namespace ucclab
