// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

#include "ucclab/fermion_op.hpp"
#include "ucclab/pauli.hpp"

namespace ucclab {

namespace detail {

/// JW image of one ladder operator: a†_p -> ½(X_p - iY_p) Z_{p-1}...Z_0,
/// a_p -> ½(X_p + iY_p) Z_{p-1}...Z_0. Z strings sit on indices below p.
inline PauliSum jw_ladder(int p, bool dagger, int n_qubits) {
    if (p >= n_qubits)
        throw std::invalid_argument("jordan_wigner: index " + std::to_string(p) +
                                    " >= n_qubits " + std::to_string(n_qubits));
    const std::uint64_t zs = (p == 0) ? 0ull : ((1ull << p) - 1);
    PauliSum out(n_qubits);
    out.add(1ull << p, zs, cplx{0.5, 0.0});                       // X_p Z...
    out.add(1ull << p, zs | (1ull << p), dagger ? cplx{0.0, -0.5} // -i/2 Y_p Z...
                                                : cplx{0.0, 0.5});
    return out;
}

} // namespace detail

/// Jordan-Wigner transform of a fermionic operator onto n_qubits qubits.
inline PauliSum jordan_wigner(const FermionOperator& op, int n_qubits) {
    PauliSum out(n_qubits);
    for (const auto& [ops, coeff] : op.terms()) {
        PauliSum term(n_qubits);
        term.add(PauliString::identity(n_qubits, cplx{coeff, 0.0}));
        for (const LadderOp& l : ops)
            term = term * detail::jw_ladder(l.index, l.dagger, n_qubits);
        out += term;
    }
    return out;
}

} // namespace ucclab
