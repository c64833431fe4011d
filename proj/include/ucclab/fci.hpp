// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "ucclab/pauli.hpp"
#include "ucclab/statevector.hpp"

namespace ucclab {

/// All determinants with n_alpha electrons on even (alpha) spin orbitals and
/// n_beta on odd (beta) ones, enumerated ascending.
struct SectorBasis {
    int n_qubits = 0;
    int n_alpha = 0;
    int n_beta = 0;
    std::vector<std::uint64_t> states;

    std::size_t size() const { return states.size(); }
};

inline SectorBasis sector_basis(int n_qubits, int n_alpha, int n_beta) {
    if (n_qubits % 2 != 0) throw std::invalid_argument("sector_basis: odd qubit count");
    const int n_spatial = n_qubits / 2;
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
        throw std::invalid_argument("sector_basis: infeasible electron counts");
    const std::uint64_t alpha_sites = [&] {
        std::uint64_t m = 0;
        for (int k = 0; k < n_qubits; k += 2) m |= 1ull << k;
        return m;
    }();
    SectorBasis basis;
    basis.n_qubits = n_qubits;
    basis.n_alpha = n_alpha;
    basis.n_beta = n_beta;
    const std::uint64_t end = 1ull << n_qubits;
    for (std::uint64_t b = 0; b < end; ++b) {
        const int na = std::popcount(b & alpha_sites);
        const int nb = std::popcount(b & ~alpha_sites & (end - 1));
        if (na == n_alpha && nb == n_beta) basis.states.push_back(b);
    }
    return basis;
}

struct FciResult {
    double energy = 0.0;
    std::vector<double> eigenvector; // coefficients in sector-basis order
};

/// Lowest eigenvalue of a Hermitian, particle-number- and Sz-conserving
/// Hamiltonian projected onto the sector, by dense symmetric
/// diagonalization. Sector closure is asserted while building the matrix:
/// any amplitude H would push outside the sector is an error, not a
/// truncation.
inline FciResult fci_ground_state(const PauliSum& hamiltonian, const SectorBasis& basis,
                                  double closure_tol = 1e-10) {
    if (hamiltonian.n_qubits() != basis.n_qubits)
        throw std::invalid_argument("fci_ground_state: size mismatch");
    if (!hamiltonian.is_hermitian())
        throw std::invalid_argument("fci_ground_state: Hamiltonian is not Hermitian");
    const std::size_t dim = basis.size();
    if (dim == 0) throw std::invalid_argument("fci_ground_state: empty sector");
    if (dim > 5000) throw std::invalid_argument("fci_ground_state: sector dimension exceeds 5000");

    std::unordered_map<std::uint64_t, std::size_t> row_of;
    row_of.reserve(dim * 2);
    for (std::size_t i = 0; i < dim; ++i) row_of.emplace(basis.states[i], i);

    // Column accumulation: single strings do not conserve the sector, their
    // collected sum must. Leakage is judged on the summed column.
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
    const auto strings = hamiltonian.strings();
    std::vector<cplx> column(std::size_t(1) << basis.n_qubits, cplx{0.0, 0.0});
    std::vector<std::uint64_t> touched;
    touched.reserve(strings.size());
    double leak = 0.0;
    for (std::size_t col = 0; col < dim; ++col) {
        const std::uint64_t b = basis.states[col];
        touched.clear();
        for (const PauliString& s : strings) {
            const std::uint64_t target = b ^ s.x_mask;
            const double sign = (std::popcount(b & s.z_mask) & 1) ? -1.0 : 1.0;
            if (column[target] == cplx{0.0, 0.0}) touched.push_back(target);
            column[target] += detail::string_base_phase(s) * sign;
        }
        for (const std::uint64_t target : touched) {
            const cplx amp = column[target];
            column[target] = cplx{0.0, 0.0};
            if (std::abs(amp) < 1e-15) continue;
            auto it = row_of.find(target);
            if (it == row_of.end())
                leak = std::max(leak, std::abs(amp));
            else
                mat(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(col)) = amp;
        }
    }
    if (leak > closure_tol)
        throw std::logic_error("fci_ground_state: Hamiltonian leaks out of the sector (amplitude " +
                               std::to_string(leak) + "); broken Hamiltonian build");

    // Molecular JW Hamiltonians are real in the determinant basis; assert
    // and drop to a real symmetric solve.
    double max_imag = 0.0;
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        for (Eigen::Index j = 0; j < mat.cols(); ++j)
            max_imag = std::max(max_imag, std::abs(mat(i, j).imag()));
    if (max_imag > 1e-12)
        throw std::logic_error("fci_ground_state: unexpected complex matrix elements");

    Eigen::MatrixXd real_mat = mat.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_mat);
    if (solver.info() != Eigen::Success)
        throw NumericalError("fci_ground_state: eigensolver failed");

    FciResult res;
    res.energy = solver.eigenvalues()(0);
    res.eigenvector.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        res.eigenvector[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    return res;
}

inline double fci_ground_energy(const PauliSum& hamiltonian, const SectorBasis& basis) {
    return fci_ground_state(hamiltonian, basis).energy;
}

/// Zero of PES plots: the FCI energy at the largest bond length in the scan.
inline double dissociation_reference(const std::vector<std::pair<double, double>>& scan) {
    if (scan.empty()) throw std::invalid_argument("dissociation_reference: empty scan");
    const auto it = std::max_element(scan.begin(), scan.end(),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return it->second;
}

/// Embed a sector eigenvector into the full 2^n statevector.
inline Statevector sector_to_statevector(const SectorBasis& basis, const std::vector<double>& coeffs) {
    Statevector psi(basis.n_qubits);
    for (std::size_t i = 0; i < basis.size(); ++i)
        psi.amplitudes[basis.states[i]] = cplx{coeffs[i], 0.0};
    return psi;
}

} // namespace ucclab
