// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucclab/pool.hpp"
#include "ucclab/rng.hpp"
#include "ucclab/statevector.hpp"

namespace ucclab {

enum class AnsatzForm { trotterized, untrotterized };

inline const char* form_name(AnsatzForm f) {
    return f == AnsatzForm::trotterized ? "trotterized" : "untrotterized";
}

enum class OrderingKind { as_generated, random_shuffle, singles_first, doubles_first, sgo };

inline const char* ordering_kind_name(OrderingKind k) {
    switch (k) {
        case OrderingKind::as_generated: return "as_generated";
        case OrderingKind::random_shuffle: return "random_shuffle";
        case OrderingKind::singles_first: return "singles_first";
        case OrderingKind::doubles_first: return "doubles_first";
        case OrderingKind::sgo: return "sgo";
    }
    return "?";
}

inline OrderingKind ordering_kind_from_name(const std::string& s) {
    for (OrderingKind k : {OrderingKind::as_generated, OrderingKind::random_shuffle,
                           OrderingKind::singles_first, OrderingKind::doubles_first, OrderingKind::sgo})
        if (s == ordering_kind_name(k)) return k;
    throw std::invalid_argument("unknown ordering strategy: " + s);
}

/// How to order a pool into a program. Identical strategy + pool give a
/// bit-identical program.
struct OrderingStrategy {
    OrderingKind kind = OrderingKind::as_generated;
    std::uint64_t seed = 0;
};

/// An ordered ansatz: one (generator, parameter) slot per pool member, a
/// Trotter number, and the form. Slot 0 acts first on the reference
/// (rightmost exponential factor). parameter_index equals the slot position,
/// so indices are contiguous 0..P-1 for any program.
struct AnsatzProgram {
    struct Slot {
        int generator_id = -1;
        int parameter_index = -1;
        int block_id = 1;
    };

    std::vector<Slot> slots;
    int trotter_n = 1;
    AnsatzForm form = AnsatzForm::trotterized;
    std::uint64_t pool_hash = 0;
    OrderingStrategy strategy;

    std::size_t parameter_count() const { return slots.size(); }
};

namespace detail {

inline bool is_single_rank(GeneratorRank r) {
    return r == GeneratorRank::single || r == GeneratorRank::generalized_single;
}

} // namespace detail

/// Order a pool into a trotterized program. random_shuffle runs Fisher-Yates
/// over each block with a per-block substream; singles_first/doubles_first
/// stably partition by rank and then shuffle within each group. Blocks are
/// never mixed: block i's slots all precede block i+1's.
inline AnsatzProgram order_program(const GeneratorPool& pool, const OrderingStrategy& strategy) {
    if (pool.size() == 0) throw std::invalid_argument("order_program: empty pool");
    if (strategy.kind == OrderingKind::sgo)
        throw std::invalid_argument("order_program: sgo ordering is built by the VQE driver");

    AnsatzProgram program;
    program.form = AnsatzForm::trotterized;
    program.trotter_n = 1;
    program.pool_hash = pool.hash();
    program.strategy = strategy;

    for (int block = 1; block <= pool.k; ++block) {
        std::vector<int> ids;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pool.block_of[i] == block) ids.push_back(static_cast<int>(i));

        const std::uint64_t block_seed = substream_seed(strategy.seed, static_cast<std::uint64_t>(block));
        switch (strategy.kind) {
            case OrderingKind::as_generated:
                break;
            case OrderingKind::random_shuffle:
                seeded_shuffle(ids, block_seed);
                break;
            case OrderingKind::singles_first:
            case OrderingKind::doubles_first: {
                const bool singles_lead = strategy.kind == OrderingKind::singles_first;
                std::vector<int> first, second;
                for (int id : ids) {
                    const bool is_single = detail::is_single_rank(pool.at(id).rank);
                    (is_single == singles_lead ? first : second).push_back(id);
                }
                seeded_shuffle(first, substream_seed(block_seed, 0));
                seeded_shuffle(second, substream_seed(block_seed, 1));
                ids = std::move(first);
                ids.insert(ids.end(), second.begin(), second.end());
                break;
            }
            case OrderingKind::sgo:
                break; // unreachable
        }
        for (int id : ids) {
            AnsatzProgram::Slot slot;
            slot.generator_id = id;
            slot.parameter_index = static_cast<int>(program.slots.size());
            slot.block_id = block;
            program.slots.push_back(slot);
        }
    }
    return program;
}

/// Repeat the slot sequence n times at application, each factor at theta/n.
inline AnsatzProgram set_trotter_number(AnsatzProgram program, int n) {
    if (n < 1) throw std::invalid_argument("set_trotter_number: n must be >= 1");
    if (program.form != AnsatzForm::trotterized)
        throw std::invalid_argument("set_trotter_number: program is not trotterized");
    program.trotter_n = n;
    return program;
}

/// Apply the program to a state. Trotterized: sequential exact per-generator
/// exponentials, repeated trotter_n times at theta/n. Untrotterized: one
/// summed exponential per block, in block order.
inline Statevector apply_program(const GeneratorPool& pool, const AnsatzProgram& program,
                                 const std::vector<double>& theta, const Statevector& reference,
                                 double exp_sum_tol = 1e-12) {
    if (theta.size() != program.parameter_count())
        throw std::invalid_argument("apply_program: parameter count mismatch");
    Statevector psi = reference;
    if (program.form == AnsatzForm::trotterized) {
        const double inv_n = 1.0 / program.trotter_n;
        for (int rep = 0; rep < program.trotter_n; ++rep)
            for (const auto& slot : program.slots)
                apply_exp_generator_inplace(pool.at(slot.generator_id),
                                            theta[slot.parameter_index] * inv_n, psi);
        return psi;
    }
    int max_block = 0;
    for (const auto& slot : program.slots) max_block = std::max(max_block, slot.block_id);
    for (int block = 1; block <= max_block; ++block) {
        std::vector<std::pair<const Generator*, double>> gens;
        for (const auto& slot : program.slots)
            if (slot.block_id == block)
                gens.emplace_back(&pool.at(slot.generator_id), theta[slot.parameter_index]);
        if (!gens.empty()) psi = apply_exp_sum(gens, psi, exp_sum_tol);
    }
    return psi;
}

/// Serialize a program together with its pool recipe; the document is the
/// reproducibility artifact for a reported ordering.
inline nlohmann::json program_to_json(const GeneratorPool& pool, const AnsatzProgram& program) {
    nlohmann::json j;
    j["pool"] = {{"kind", pool_kind_name(pool.kind)},
                 {"n_spatial", pool.n_spatial},
                 {"n_alpha", pool.n_alpha},
                 {"n_beta", pool.n_beta},
                 {"k", pool.k}};
    j["pool_hash"] = program.pool_hash;
    j["form"] = form_name(program.form);
    j["trotter_n"] = program.trotter_n;
    j["strategy"] = {{"kind", ordering_kind_name(program.strategy.kind)},
                     {"seed", program.strategy.seed}};
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& slot : program.slots)
        slots.push_back({{"generator", slot.generator_id},
                         {"param", slot.parameter_index},
                         {"block", slot.block_id},
                         {"label", pool.at(slot.generator_id).label()}});
    j["slots"] = std::move(slots);
    return j;
}

/// Rebuild the pool named by a serialized program.
inline GeneratorPool pool_from_json(const nlohmann::json& j) {
    const auto& p = j.at("pool");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind == "uccsd")
        return uccsd_pool(p.at("n_spatial").get<int>(), p.at("n_alpha").get<int>(),
                          p.at("n_beta").get<int>());
    if (kind == "kupccgsd")
        return kupccgsd_pool(p.at("n_spatial").get<int>(), p.at("k").get<int>());
    throw std::invalid_argument("program_from_json: unknown pool kind " + kind);
}

/// Reload a serialized program against a rebuilt pool; verifies the pool
/// hash and every slot label.
inline AnsatzProgram program_from_json(const nlohmann::json& j, const GeneratorPool& pool) {
    AnsatzProgram program;
    program.pool_hash = j.at("pool_hash").get<std::uint64_t>();
    if (program.pool_hash != pool.hash())
        throw std::invalid_argument("program_from_json: pool hash mismatch");
    const std::string form = j.at("form").get<std::string>();
    program.form = form == "untrotterized" ? AnsatzForm::untrotterized : AnsatzForm::trotterized;
    program.trotter_n = j.at("trotter_n").get<int>();
    program.strategy.kind = ordering_kind_from_name(j.at("strategy").at("kind").get<std::string>());
    program.strategy.seed = j.at("strategy").at("seed").get<std::uint64_t>();
    for (const auto& js : j.at("slots")) {
        AnsatzProgram::Slot slot;
        slot.generator_id = js.at("generator").get<int>();
        slot.parameter_index = js.at("param").get<int>();
        slot.block_id = js.at("block").get<int>();
        if (slot.generator_id < 0 || slot.generator_id >= static_cast<int>(pool.size()))
            throw std::invalid_argument("program_from_json: generator id out of range");
        if (js.at("label").get<std::string>() != pool.at(slot.generator_id).label())
            throw std::invalid_argument("program_from_json: slot label mismatch");
        program.slots.push_back(slot);
    }
    return program;
}

} // namespace ucclab
