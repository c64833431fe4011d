// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <set>

#include "oracles.hpp"
#include "ucclab/ansatz.hpp"
#include "ucclab/pool.hpp"
#include "ucclab/rng.hpp"
#include "ucclab/statevector.hpp"

using namespace ucclab;

namespace {

/// Brute-force count of Sz-conserving spin-orbital doubles, written
/// independently of the pool builder's loop structure.
int count_sz_doubles(int n_spatial, int n_occ_spatial) {
    const int n_so = 2 * n_spatial;
    auto occ = [&](int so) { return so / 2 < n_occ_spatial; };
    int count = 0;
    for (int i = 0; i < n_so; ++i)
        for (int j = 0; j < n_so; ++j)
            for (int a = 0; a < n_so; ++a)
                for (int b = 0; b < n_so; ++b) {
                    if (!(i < j && a < b)) continue;
                    if (!occ(i) || !occ(j) || occ(a) || occ(b)) continue;
                    if (i % 2 + j % 2 != a % 2 + b % 2) continue;
                    ++count;
                }
    return count;
}

Statevector rhf_state(int n_spatial, int n_pairs) {
    OccupationBitstring occ;
    occ.n_qubits = 2 * n_spatial;
    occ.bits.assign(occ.n_qubits, false);
    for (int p = 0; p < n_pairs; ++p) {
        occ.bits[2 * p] = true;
        occ.bits[2 * p + 1] = true;
    }
    return from_occupation(occ);
}

} // namespace

TEST_CASE("uccsd pool sizes match enumeration oracles") {
    const GeneratorPool h2 = uccsd_pool(2, 1, 1);
    REQUIRE(h2.size() == 3);
    REQUIRE(h2.at(0).rank == GeneratorRank::single);
    REQUIRE(h2.at(1).rank == GeneratorRank::single);
    REQUIRE(h2.at(2).rank == GeneratorRank::double_);

    const GeneratorPool h4 = uccsd_pool(4, 2, 2);
    int singles = 0, doubles = 0;
    for (const Generator& g : h4.generators)
        (g.rank == GeneratorRank::single ? singles : doubles) += 1;
    REQUIRE(singles == 8);
    REQUIRE(doubles == count_sz_doubles(4, 2));
    REQUIRE(h4.size() == 26);

    const GeneratorPool h6 = uccsd_pool(6, 3, 3);
    REQUIRE(h6.size() == 117);

    // no virtual orbitals -> empty pool
    REQUIRE(uccsd_pool(2, 2, 2).size() == 0);
    REQUIRE_THROWS_AS(uccsd_pool(4, 2, 1), std::invalid_argument);
}

TEST_CASE("kupccgsd pool sizes and blocks") {
    const GeneratorPool k1 = kupccgsd_pool(6, 1);
    REQUIRE(k1.size() == 30);
    int paired = 0, gsingles = 0;
    for (const Generator& g : k1.generators)
        (g.rank == GeneratorRank::paired_double ? paired : gsingles) += 1;
    REQUIRE(paired == 15);
    REQUIRE(gsingles == 15);

    const GeneratorPool k2 = kupccgsd_pool(6, 2);
    REQUIRE(k2.size() == 60);
    std::set<int> blocks(k2.block_of.begin(), k2.block_of.end());
    REQUIRE(blocks == std::set<int>{1, 2});
    // block 2 repeats block 1's generators with independent parameters
    for (int i = 0; i < 30; ++i) REQUIRE(k2.at(i).label() == k2.at(i + 30).label());

    REQUIRE(kupccgsd_pool(1, 1).size() == 0);
    REQUIRE_THROWS_AS(kupccgsd_pool(6, 0), std::invalid_argument);
}

TEST_CASE("pools are deterministic and stably identified") {
    const GeneratorPool a = uccsd_pool(4, 2, 2);
    const GeneratorPool b = uccsd_pool(4, 2, 2);
    REQUIRE(a.hash() == b.hash());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a.at(static_cast<int>(i)).id == static_cast<int>(i));
        REQUIRE(a.at(static_cast<int>(i)).label() == b.at(static_cast<int>(i)).label());
    }
    REQUIRE(a.hash() != kupccgsd_pool(4, 1).hash());
}

TEST_CASE("order_program determinism and partition contracts") {
    const GeneratorPool pool = uccsd_pool(4, 2, 2);

    const OrderingStrategy shuffle{OrderingKind::random_shuffle, 12345};
    const AnsatzProgram p1 = order_program(pool, shuffle);
    const AnsatzProgram p2 = order_program(pool, shuffle);
    REQUIRE(p1.slots.size() == pool.size());
    for (std::size_t i = 0; i < p1.slots.size(); ++i)
        REQUIRE(p1.slots[i].generator_id == p2.slots[i].generator_id);

    // different seed, different order (overwhelmingly)
    const AnsatzProgram p3 = order_program(pool, {OrderingKind::random_shuffle, 999});
    bool same = true;
    for (std::size_t i = 0; i < p1.slots.size(); ++i)
        same = same && p1.slots[i].generator_id == p3.slots[i].generator_id;
    REQUIRE_FALSE(same);

    // every generator appears exactly once; parameters are contiguous
    std::set<int> seen;
    for (const auto& slot : p1.slots) seen.insert(slot.generator_id);
    REQUIRE(seen.size() == pool.size());
    for (std::size_t i = 0; i < p1.slots.size(); ++i)
        REQUIRE(p1.slots[i].parameter_index == static_cast<int>(i));

    // doubles_first puts a double at slot 0 on the H2 pool
    const GeneratorPool h2 = uccsd_pool(2, 1, 1);
    const AnsatzProgram df = order_program(h2, {OrderingKind::doubles_first, 7});
    REQUIRE(h2.at(df.slots[0].generator_id).rank == GeneratorRank::double_);
    const AnsatzProgram sf = order_program(h2, {OrderingKind::singles_first, 7});
    REQUIRE(h2.at(sf.slots[0].generator_id).rank == GeneratorRank::single);
    REQUIRE(h2.at(sf.slots[2].generator_id).rank == GeneratorRank::double_);

    REQUIRE_THROWS_AS(order_program(pool, {OrderingKind::sgo, 0}), std::invalid_argument);
}

TEST_CASE("k-UpCCGSD shuffles never cross block boundaries") {
    const GeneratorPool pool = kupccgsd_pool(4, 2);
    for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
        const AnsatzProgram p = order_program(pool, {OrderingKind::random_shuffle, seed});
        const std::size_t half = pool.size() / 2;
        for (std::size_t i = 0; i < p.slots.size(); ++i) {
            REQUIRE(p.slots[i].block_id == (i < half ? 1 : 2));
            REQUIRE(pool.block_of[p.slots[i].generator_id] == p.slots[i].block_id);
        }
    }
}

TEST_CASE("set_trotter_number semantics") {
    const GeneratorPool pool = uccsd_pool(2, 1, 1);
    AnsatzProgram p = order_program(pool, {OrderingKind::as_generated, 0});
    REQUIRE(p.trotter_n == 1);
    const AnsatzProgram p2 = set_trotter_number(p, 2);
    REQUIRE(p2.trotter_n == 2);
    REQUIRE(p2.slots.size() == 3);
    REQUIRE(p2.parameter_count() == 3);
    REQUIRE_THROWS_AS(set_trotter_number(p, 0), std::invalid_argument);

    // n = 2 applies each factor twice at theta/2: equals n=1 when the
    // program has a single generator
    AnsatzProgram single = p;
    single.slots.resize(1);
    const Statevector ref = rhf_state(2, 1);
    const std::vector<double> theta1 = {0.3};
    const Statevector a = apply_program(pool, single, theta1, ref);
    const Statevector b = apply_program(pool, set_trotter_number(single, 4), theta1, ref);
    REQUIRE((oracle::to_eigen(a.amplitudes) - oracle::to_eigen(b.amplitudes)).norm() < 1e-12);
}

TEST_CASE("applying a program at theta = 0 returns the reference exactly") {
    const GeneratorPool pool = uccsd_pool(3, 1, 1);
    const AnsatzProgram p = order_program(pool, {OrderingKind::random_shuffle, 5});
    const Statevector ref = rhf_state(3, 1);
    const std::vector<double> zeros(p.parameter_count(), 0.0);
    const Statevector psi = apply_program(pool, p, zeros, ref);
    REQUIRE((oracle::to_eigen(psi.amplitudes) - oracle::to_eigen(ref.amplitudes)).norm() == 0.0);

    AnsatzProgram untrot = p;
    untrot.form = AnsatzForm::untrotterized;
    const Statevector psi2 = apply_program(pool, untrot, zeros, ref);
    REQUIRE((oracle::to_eigen(psi2.amplitudes) - oracle::to_eigen(ref.amplitudes)).norm() < 1e-13);
}

TEST_CASE("commuting pools give ordering-independent states") {
    // doubles on disjoint orbital quadruples commute
    const GeneratorPool pool = uccsd_pool(6, 3, 3);
    std::vector<int> ids;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Generator& g = pool.at(static_cast<int>(i));
        if (g.rank != GeneratorRank::double_) continue;
        if (g.orbital_labels == std::vector<int>{0, 1, 6, 7} ||
            g.orbital_labels == std::vector<int>{2, 3, 8, 9} ||
            g.orbital_labels == std::vector<int>{4, 5, 10, 11})
            ids.push_back(static_cast<int>(i));
    }
    REQUIRE(ids.size() == 3);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            REQUIRE(sums_commute(pool.at(ids[i]).pauli, pool.at(ids[j]).pauli));

    const Statevector ref = rhf_state(6, 3);
    const std::vector<double> theta = {0.3, -0.2, 0.15};
    std::vector<int> perm = ids;
    Statevector first;
    std::sort(perm.begin(), perm.end());
    bool have_first = false;
    do {
        Statevector psi = ref;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            // parameter follows the generator, not the slot
            const auto it = std::find(ids.begin(), ids.end(), perm[k]);
            apply_exp_generator_inplace(pool.at(perm[k]),
                                        theta[static_cast<std::size_t>(it - ids.begin())], psi);
        }
        if (!have_first) {
            first = psi;
            have_first = true;
        } else {
            REQUIRE((oracle::to_eigen(psi.amplitudes) - oracle::to_eigen(first.amplitudes)).norm() <
                    1e-12);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("untrotterized form ignores slot order within a block") {
    const GeneratorPool pool = uccsd_pool(2, 1, 1);
    const Statevector ref = rhf_state(2, 1);
    const std::vector<double> theta = {0.12, -0.08, 0.25};

    AnsatzProgram a = order_program(pool, {OrderingKind::as_generated, 0});
    a.form = AnsatzForm::untrotterized;
    AnsatzProgram b = a;
    // reverse the slots but keep each generator bound to its parameter
    std::reverse(b.slots.begin(), b.slots.end());

    std::vector<double> theta_b(theta.size());
    for (std::size_t i = 0; i < b.slots.size(); ++i) {
        theta_b[i] = theta[static_cast<std::size_t>(
            a.slots[b.slots.size() - 1 - i].parameter_index)];
        b.slots[i].parameter_index = static_cast<int>(i);
    }
    const Statevector sa = apply_program(pool, a, theta, ref, 1e-13);
    const Statevector sb = apply_program(pool, b, theta_b, ref, 1e-13);
    REQUIRE((oracle::to_eigen(sa.amplitudes) - oracle::to_eigen(sb.amplitudes)).norm() < 1e-12);
}

TEST_CASE("program JSON round-trip") {
    const GeneratorPool pool = kupccgsd_pool(4, 2);
    const AnsatzProgram p = order_program(pool, {OrderingKind::random_shuffle, 4242});
    const nlohmann::json j = program_to_json(pool, p);

    const GeneratorPool rebuilt = pool_from_json(j);
    REQUIRE(rebuilt.hash() == pool.hash());
    const AnsatzProgram q = program_from_json(j, rebuilt);
    REQUIRE(q.slots.size() == p.slots.size());
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
        REQUIRE(q.slots[i].generator_id == p.slots[i].generator_id);
        REQUIRE(q.slots[i].parameter_index == p.slots[i].parameter_index);
        REQUIRE(q.slots[i].block_id == p.slots[i].block_id);
    }
    REQUIRE(q.strategy.seed == p.strategy.seed);

    // tampered label is rejected
    nlohmann::json bad = j;
    bad["slots"][0]["label"] = "d:9,9>9,9";
    REQUIRE_THROWS_AS(program_from_json(bad, rebuilt), std::invalid_argument);
}
