// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/generator.hpp"

namespace ucclab {

enum class PoolKind { uccsd, kupccgsd };

inline const char* pool_kind_name(PoolKind k) {
    return k == PoolKind::uccsd ? "uccsd" : "kupccgsd";
}

/// A deterministic, canonically ordered set of excitation generators.
/// Generator ids are their positions in canonical order; identical recipes
/// yield identical pools across runs. For k-UpCCGSD, block_of[id] in 1..k
/// records which ansatz block a generator belongs to; UCCSD pools are a
/// single block 1.
struct GeneratorPool {
    PoolKind kind = PoolKind::uccsd;
    int n_spatial = 0;
    int n_alpha = 0;
    int n_beta = 0;
    int k = 1;
    int n_qubits = 0;
    std::vector<Generator> generators;
    std::vector<int> block_of;

    std::size_t size() const { return generators.size(); }

    const Generator& at(int id) const { return generators.at(static_cast<std::size_t>(id)); }

    /// FNV-1a over the pool recipe and generator labels; identifies the pool
    /// in serialized programs.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](const std::string& s) {
            for (unsigned char c : s) {
                h ^= c;
                h *= 1099511628211ull;
            }
        };
        mix(pool_kind_name(kind));
        mix("|" + std::to_string(n_spatial) + "," + std::to_string(n_alpha) + "," +
            std::to_string(n_beta) + "," + std::to_string(k));
        for (std::size_t i = 0; i < generators.size(); ++i)
            mix("|" + std::to_string(block_of[i]) + ":" + generators[i].label());
        return h;
    }
};

/// All Sz-conserving singles (occupied -> virtual within each spin) and
/// doubles (i<j, a<b over spin orbitals) for an RHF singlet reference.
/// Canonical order: singles by (i, a) lexicographic, then doubles by
/// (i, j, a, b).
inline GeneratorPool uccsd_pool(int n_spatial, int n_alpha, int n_beta) {
    if (n_alpha != n_beta)
        throw std::invalid_argument("uccsd_pool: n_alpha != n_beta unsupported (RHF singlet)");
    if (n_alpha > n_spatial) throw std::invalid_argument("uccsd_pool: more electrons than orbitals");
    GeneratorPool pool;
    pool.kind = PoolKind::uccsd;
    pool.n_spatial = n_spatial;
    pool.n_alpha = n_alpha;
    pool.n_beta = n_beta;
    pool.k = 1;
    pool.n_qubits = 2 * n_spatial;

    const int n_so = 2 * n_spatial;
    auto occupied = [&](int so) { return spatial_of(so) < n_alpha; };

    for (int i = 0; i < n_so; ++i) {
        if (!occupied(i)) continue;
        for (int a = 0; a < n_so; ++a) {
            if (occupied(a) || spin_of(a) != spin_of(i)) continue;
            pool.generators.push_back(single_generator(i, a));
            pool.block_of.push_back(1);
        }
    }
    for (int i = 0; i < n_so; ++i) {
        if (!occupied(i)) continue;
        for (int j = i + 1; j < n_so; ++j) {
            if (!occupied(j)) continue;
            for (int a = 0; a < n_so; ++a) {
                if (occupied(a)) continue;
                for (int b = a + 1; b < n_so; ++b) {
                    if (occupied(b)) continue;
                    if (spin_of(i) + spin_of(j) != spin_of(a) + spin_of(b)) continue;
                    pool.generators.push_back(double_generator(i, j, a, b));
                    pool.block_of.push_back(1);
                }
            }
        }
    }
    for (std::size_t id = 0; id < pool.generators.size(); ++id) {
        pool.generators[id].id = static_cast<int>(id);
        finalize_generator(pool.generators[id], pool.n_qubits);
    }
    return pool;
}

/// k repeated blocks, each holding all paired doubles over spatial pairs
/// {p,q} followed by all generalized (spin-summed) singles p<q, each block
/// with independent parameters. Canonical order within a block: paired
/// doubles then generalized singles, each lexicographic in (p, q).
inline GeneratorPool kupccgsd_pool(int n_spatial, int k) {
    if (k < 1) throw std::invalid_argument("kupccgsd_pool: k must be >= 1");
    GeneratorPool pool;
    pool.kind = PoolKind::kupccgsd;
    pool.n_spatial = n_spatial;
    pool.n_alpha = 0; // electron counts are a property of the reference, not this pool
    pool.n_beta = 0;
    pool.k = k;
    pool.n_qubits = 2 * n_spatial;

    for (int block = 1; block <= k; ++block) {
        for (int p = 0; p < n_spatial; ++p)
            for (int q = p + 1; q < n_spatial; ++q) {
                pool.generators.push_back(paired_double_generator(p, q));
                pool.block_of.push_back(block);
            }
        for (int p = 0; p < n_spatial; ++p)
            for (int q = p + 1; q < n_spatial; ++q) {
                pool.generators.push_back(generalized_single_generator(p, q));
                pool.block_of.push_back(block);
            }
    }
    for (std::size_t id = 0; id < pool.generators.size(); ++id) {
        pool.generators[id].id = static_cast<int>(id);
        finalize_generator(pool.generators[id], pool.n_qubits);
    }
    return pool;
}

} // namespace ucclab
