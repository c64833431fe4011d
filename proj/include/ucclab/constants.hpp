// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace ucclab {

/// Unit conversions and numerical thresholds shared across the library.
/// Conversions are applied exactly once at output boundaries; all internal
/// energies are Hartree and all internal lengths are bohr.
inline constexpr double kcal_per_hartree = 627.509474;
inline constexpr double angstrom_per_bohr = 0.52917721;
inline constexpr double bohr_per_angstrom = 1.0 / angstrom_per_bohr;

/// Chemical accuracy (1 kcal/mol) in Hartree.
inline constexpr double chemical_accuracy_ha = 1.0 / kcal_per_hartree;

/// Coefficients below this magnitude are pruned from operator sums.
inline constexpr double coeff_eps = 1e-14;

} // namespace ucclab
