// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/generator.hpp"
#include "ucclab/hamiltonian.hpp"
#include "ucclab/pauli.hpp"

namespace ucclab {

/// Raised when an iterative numerical routine fails to converge; the message
/// carries diagnostics.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dense complex amplitudes over 2^n_qubits basis states. Bit k of a basis
/// index is the occupation of spin orbital k.
struct Statevector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    Statevector() = default;
    explicit Statevector(int nq) : n_qubits(nq), amplitudes(std::size_t(1) << nq, cplx{0.0, 0.0}) {}

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline Statevector from_occupation(const OccupationBitstring& occ) {
    Statevector psi(occ.n_qubits);
    psi.amplitudes[occ.index()] = cplx{1.0, 0.0};
    return psi;
}

inline cplx inner_product(const Statevector& a, const Statevector& b) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("inner_product: size mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return s;
}

namespace detail {

// P|b> = phase(b)|b ^ x> with phase(b) = i^{#Y} (-1)^{popcount(b & z)}.
inline cplx string_base_phase(const PauliString& s) {
    return s.coefficient * ipow(std::popcount(s.x_mask & s.z_mask));
}

} // namespace detail

/// out += P applied to psi (accumulating form).
inline void accumulate_pauli_string(const PauliString& s, const Statevector& psi, Statevector& out) {
    const cplx base = detail::string_base_phase(s);
    const std::uint64_t x = s.x_mask, z = s.z_mask;
    const std::size_t dim = psi.dim();
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
        out.amplitudes[b ^ x] += base * sign * psi.amplitudes[b];
    }
}

/// h|psi> (unnormalized).
inline Statevector apply_pauli_sum(const PauliSum& h, const Statevector& psi) {
    if (h.n_qubits() != psi.n_qubits)
        throw std::invalid_argument("apply_pauli_sum: size mismatch");
    Statevector out(psi.n_qubits);
    for (const PauliString& s : h.strings()) accumulate_pauli_string(s, psi, out);
    return out;
}

inline Statevector apply_hamiltonian(const PauliSum& h, const Statevector& psi) {
    return apply_pauli_sum(h, psi);
}

/// <bra|op|ket> without materializing op|ket>.
inline cplx matrix_element(const PauliSum& op, const Statevector& bra, const Statevector& ket) {
    if (op.n_qubits() != bra.n_qubits || bra.n_qubits != ket.n_qubits)
        throw std::invalid_argument("matrix_element: size mismatch");
    cplx acc{0.0, 0.0};
    const std::size_t dim = ket.dim();
    for (const PauliString& s : op.strings()) {
        const cplx base = detail::string_base_phase(s);
        const std::uint64_t x = s.x_mask, z = s.z_mask;
        cplx term{0.0, 0.0};
        for (std::size_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
            term += std::conj(bra.amplitudes[b ^ x]) * sign * ket.amplitudes[b];
        }
        acc += base * term;
    }
    return acc;
}

/// <psi|h|psi> for Hermitian h; asserts the imaginary residue is below tol
/// before discarding it.
inline double expectation(const PauliSum& h, const Statevector& psi, double tol = 1e-10) {
    if (h.n_qubits() != psi.n_qubits) throw std::invalid_argument("expectation: size mismatch");
    if (!h.is_hermitian()) throw std::invalid_argument("expectation: operator is not Hermitian");
    cplx acc{0.0, 0.0};
    const std::size_t dim = psi.dim();
    for (const PauliString& s : h.strings()) {
        const cplx base = detail::string_base_phase(s);
        const std::uint64_t x = s.x_mask, z = s.z_mask;
        cplx term{0.0, 0.0};
        for (std::size_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
            term += std::conj(psi.amplitudes[b ^ x]) * sign * psi.amplitudes[b];
        }
        acc += base * term;
    }
    if (std::abs(acc.imag()) > tol)
        throw NumericalError("expectation: imaginary residue " + std::to_string(acc.imag()));
    return acc.real();
}

namespace detail {

/// One x-mask group of an anti-Hermitian PauliSum, precomputed for fast
/// exponential application. For x != 0 the group couples index pairs
/// (b, b^x); for x == 0 it is diagonal.
struct ExpGroup {
    std::uint64_t x = 0;
    // per string: z mask and base phase coeff * i^{#Y}
    std::vector<std::uint64_t> zs;
    std::vector<cplx> bases;
};

inline std::vector<ExpGroup> exp_groups(const PauliSum& g) {
    std::vector<ExpGroup> groups;
    for (const PauliString& s : g.strings()) {
        ExpGroup* grp = nullptr;
        for (ExpGroup& e : groups)
            if (e.x == s.x_mask) { grp = &e; break; }
        if (!grp) {
            groups.push_back(ExpGroup{s.x_mask, {}, {}});
            grp = &groups.back();
        }
        grp->zs.push_back(s.z_mask);
        grp->bases.push_back(string_base_phase(s));
    }
    return groups;
}

/// Apply exp(theta * G_group) exactly. Restricted to the pair (b, b^x) an
/// anti-Hermitian group is the 2x2 block [[0, -conj(w)], [w, 0]] with
/// w = Σ_j base_j (-1)^{popcount(b & z_j)}; its exponential is
/// cos(|w|theta) I + sin(|w|theta)/|w| times the block.
inline void apply_exp_group(const ExpGroup& grp, double theta, Statevector& psi) {
    const std::size_t dim = psi.dim();
    const std::size_t m = grp.zs.size();
    if (grp.x == 0) {
        // diagonal strings of an anti-Hermitian sum carry imaginary bases:
        // amplitude b picks up the phase exp(theta * d_b)
        for (std::size_t b = 0; b < dim; ++b) {
            cplx d{0.0, 0.0};
            for (std::size_t j = 0; j < m; ++j)
                d += (std::popcount(b & grp.zs[j]) & 1) ? -grp.bases[j] : grp.bases[j];
            psi.amplitudes[b] *= std::exp(theta * d);
        }
        return;
    }
    for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t partner = b ^ grp.x;
        if (partner < b) continue; // each pair once
        cplx w{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j)
            w += (std::popcount(b & grp.zs[j]) & 1) ? -grp.bases[j] : grp.bases[j];
        const double aw = std::abs(w);
        if (aw < 1e-300) continue;
        const double c = std::cos(theta * aw);
        const double s = std::sin(theta * aw) / aw;
        const cplx u = psi.amplitudes[b];
        const cplx v = psi.amplitudes[partner];
        psi.amplitudes[b] = c * u - std::conj(w) * s * v;
        psi.amplitudes[partner] = c * v + w * s * u;
    }
}

} // namespace detail

/// e^{theta G}|psi> exactly, in place. G's Pauli terms mutually commute (the
/// generator contract, asserted at pool construction), so the exponential
/// factorizes over x-mask groups; each group is applied via its closed-form
/// pairwise rotation, which equals the ordered product of the single-Pauli
/// rotation factors cos(theta c_j) + i sin(theta c_j) P_j.
inline void apply_exp_generator_inplace(const Generator& g, double theta, Statevector& psi) {
    if (g.pauli.n_qubits() != psi.n_qubits)
        throw std::invalid_argument("apply_exp_generator: size mismatch");
    if (!g.pauli.is_anti_hermitian())
        throw std::invalid_argument("apply_exp_generator: generator is not anti-Hermitian");
    if (theta == 0.0) return;
    for (const auto& grp : detail::exp_groups(g.pauli)) detail::apply_exp_group(grp, theta, psi);
}

inline Statevector apply_exp_generator(const Generator& g, double theta, const Statevector& psi) {
    Statevector out = psi;
    apply_exp_generator_inplace(g, theta, out);
    return out;
}

/// e^{Σ_k theta_k G_k}|psi> to within tol (L2), via substepped truncated
/// Taylor series: s substeps with s = ceil(Σ|theta_k| ||G_k||_1) so each
/// substep series converges geometrically.
inline Statevector apply_exp_sum(const std::vector<std::pair<const Generator*, double>>& gens,
                                 const Statevector& psi, double tol = 1e-12) {
    if (tol <= 0.0) throw std::invalid_argument("apply_exp_sum: tol must be positive");
    if (gens.empty()) return psi;

    PauliSum a(psi.n_qubits);
    double norm1 = 0.0;
    for (const auto& [g, theta] : gens) {
        if (g->pauli.n_qubits() != psi.n_qubits)
            throw std::invalid_argument("apply_exp_sum: size mismatch");
        PauliSum scaled = g->pauli;
        scaled *= cplx{theta, 0.0};
        a += scaled;
        norm1 += std::abs(theta) * g->pauli.one_norm();
    }
    const int substeps = std::max(1, static_cast<int>(std::ceil(norm1)));
    const double step_tol = tol / (3.0 * substeps);
    const int max_terms = 200;

    Statevector state = psi;
    const auto a_strings = a.strings();
    for (int s = 0; s < substeps; ++s) {
        Statevector acc = state;
        Statevector v = state;
        bool converged = false;
        for (int m = 1; m <= max_terms; ++m) {
            Statevector av(psi.n_qubits);
            for (const PauliString& str : a_strings) accumulate_pauli_string(str, v, av);
            const double scale = 1.0 / (substeps * static_cast<double>(m));
            for (std::size_t i = 0; i < av.dim(); ++i) av.amplitudes[i] *= scale;
            v = std::move(av);
            for (std::size_t i = 0; i < v.dim(); ++i) acc.amplitudes[i] += v.amplitudes[i];
            if (v.norm() < step_tol && m >= 2) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("apply_exp_sum: Taylor series did not converge in " +
                                 std::to_string(max_terms) + " terms (substeps=" +
                                 std::to_string(substeps) + ", one-norm=" + std::to_string(norm1) + ")");
        state = std::move(acc);
    }
    return state;
}

} // namespace ucclab
