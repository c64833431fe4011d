// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/fermion_op.hpp"
#include "ucclab/jordan_wigner.hpp"
#include "ucclab/pauli.hpp"

namespace ucclab {

/// Spin-orbital indexing is interleaved: spatial p with spin alpha sits at
/// 2p, spin beta at 2p+1; the qubit index equals the spin-orbital index.
inline int spin_orbital(int spatial, int spin) { return 2 * spatial + spin; }
inline int spatial_of(int so) { return so / 2; }
inline int spin_of(int so) { return so % 2; }

enum class GeneratorRank { single, double_, paired_double, generalized_single };

inline const char* rank_name(GeneratorRank r) {
    switch (r) {
        case GeneratorRank::single: return "single";
        case GeneratorRank::double_: return "double";
        case GeneratorRank::paired_double: return "paired_double";
        case GeneratorRank::generalized_single: return "generalized_single";
    }
    return "?";
}

/// One anti-Hermitian excitation operator of a UCC-style pool: the fermionic
/// form, its JW Pauli image (purely imaginary coefficients), and labels.
/// The id is assigned by the pool and is stable for a given pool recipe.
struct Generator {
    int id = -1;
    GeneratorRank rank = GeneratorRank::single;
    FermionOperator fermionic;
    PauliSum pauli; // filled by the pool via jordan_wigner
    std::vector<int> orbital_labels;

    /// Short text label, e.g. "s:0>2" or "d:0,1>2,3"; spatial-pair ranks use
    /// "p:" and "g:" prefixes. Used in serialized programs.
    std::string label() const {
        std::string head;
        switch (rank) {
            case GeneratorRank::single: head = "s:"; break;
            case GeneratorRank::double_: head = "d:"; break;
            case GeneratorRank::paired_double: head = "p:"; break;
            case GeneratorRank::generalized_single: head = "g:"; break;
        }
        const std::size_t n = orbital_labels.size();
        std::string body;
        for (std::size_t i = 0; i < n; ++i) {
            body += std::to_string(orbital_labels[i]);
            if (i + 1 == n / 2) body += ">";
            else if (i + 1 < n) body += ",";
        }
        return head + body;
    }
};

/// a†_a a_i - a†_i a_a for spin orbitals i != a of equal spin.
inline Generator single_generator(int i, int a) {
    if (i == a) throw std::invalid_argument("single_generator: i == a");
    if (spin_of(i) != spin_of(a))
        throw std::invalid_argument("single_generator: spin mismatch (Sz not conserved)");
    Generator g;
    g.rank = GeneratorRank::single;
    g.orbital_labels = {i, a};
    g.fermionic.add_term({{a, true}, {i, false}}, 1.0);
    g.fermionic.add_term({{i, true}, {a, false}}, -1.0);
    return g;
}

/// a†_a a†_b a_j a_i - a†_i a†_j a_b a_a for spin orbitals i<j, a<b with
/// conserved Sz and no index collisions.
inline Generator double_generator(int i, int j, int a, int b) {
    if (!(i < j) || !(a < b))
        throw std::invalid_argument("double_generator: require i<j and a<b");
    if (i == a || i == b || j == a || j == b)
        throw std::invalid_argument("double_generator: index collision");
    if (spin_of(i) + spin_of(j) != spin_of(a) + spin_of(b))
        throw std::invalid_argument("double_generator: Sz not conserved");
    Generator g;
    g.rank = GeneratorRank::double_;
    g.orbital_labels = {i, j, a, b};
    g.fermionic.add_term({{a, true}, {b, true}, {j, false}, {i, false}}, 1.0);
    g.fermionic.add_term({{i, true}, {j, true}, {b, false}, {a, false}}, -1.0);
    return g;
}

/// Pair excitation between spatial orbitals: a†_{pα} a†_{pβ} a_{qβ} a_{qα} - h.c.
/// Canonical form takes p < q (excitation q -> p); the parameter sign absorbs
/// the direction.
inline Generator paired_double_generator(int p, int q) {
    if (p == q) throw std::invalid_argument("paired_double_generator: p == q");
    if (p > q) std::swap(p, q);
    const int pa = spin_orbital(p, 0), pb = spin_orbital(p, 1);
    const int qa = spin_orbital(q, 0), qb = spin_orbital(q, 1);
    Generator g;
    g.rank = GeneratorRank::paired_double;
    g.orbital_labels = {q, p};
    g.fermionic.add_term({{pa, true}, {pb, true}, {qb, false}, {qa, false}}, 1.0);
    g.fermionic.add_term({{qa, true}, {qb, true}, {pb, false}, {pa, false}}, -1.0);
    return g;
}

/// Spin-summed orbital rotation between spatial orbitals p < q, one shared
/// parameter: Σ_σ (a†_{pσ} a_{qσ} - a†_{qσ} a_{pσ}).
inline Generator generalized_single_generator(int p, int q) {
    if (p == q) throw std::invalid_argument("generalized_single_generator: p == q");
    if (p > q) std::swap(p, q);
    Generator g;
    g.rank = GeneratorRank::generalized_single;
    g.orbital_labels = {q, p};
    for (int spin = 0; spin < 2; ++spin) {
        const int ps = spin_orbital(p, spin), qs = spin_orbital(q, spin);
        g.fermionic.add_term({{ps, true}, {qs, false}}, 1.0);
        g.fermionic.add_term({{qs, true}, {ps, false}}, -1.0);
    }
    return g;
}

/// Fill the JW image and check the generator contract: anti-Hermitian
/// fermionic form, purely imaginary Pauli coefficients, mutually commuting
/// strings (this underwrites exact per-generator exponentials).
inline void finalize_generator(Generator& g, int n_qubits) {
    g.pauli = jordan_wigner(g.fermionic, n_qubits);
    if (!g.pauli.is_anti_hermitian())
        throw std::logic_error("generator " + g.label() + ": JW image not anti-Hermitian");
    const auto strs = g.pauli.strings();
    for (std::size_t i = 0; i < strs.size(); ++i)
        for (std::size_t j = i + 1; j < strs.size(); ++j)
            if (!strings_commute(strs[i], strs[j]))
                throw std::logic_error("generator " + g.label() + ": internal strings do not commute");
}

} // namespace ucclab
