// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <sstream>

#include "oracles.hpp"
#include "ucclab/fcidump.hpp"
#include "ucclab/hamiltonian.hpp"
#include "ucclab/rng.hpp"

using namespace ucclab;

namespace {

MolecularIntegrals random_integrals(SplitMix64& rng, int n) {
    MolecularIntegrals ints;
    ints.n_spatial = n;
    ints.n_electrons = 2;
    ints.ms2 = 0;
    ints.allocate();
    ints.core_energy = rng.uniform(-2.0, 2.0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) ints.set_one_body(p, q, rng.uniform(-1.0, 1.0));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (r == p && s > q) continue;
                    ints.set_two_body(p, q, r, s, rng.uniform(-1.0, 1.0));
                }
    return ints;
}

double max_diff(const MolecularIntegrals& a, const MolecularIntegrals& b) {
    double m = std::abs(a.core_energy - b.core_energy);
    for (std::size_t i = 0; i < a.h1.size(); ++i) m = std::max(m, std::abs(a.h1[i] - b.h1[i]));
    for (std::size_t i = 0; i < a.g2.size(); ++i) m = std::max(m, std::abs(a.g2[i] - b.g2[i]));
    return m;
}

} // namespace

TEST_CASE("header-only fcidump parses to empty integrals") {
    const MolecularIntegrals ints = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0, &END\n");
    REQUIRE(ints.n_spatial == 2);
    REQUIRE(ints.n_electrons == 2);
    REQUIRE(ints.ms2 == 0);
    REQUIRE(ints.core_energy == 0.0);
    for (double v : ints.h1) REQUIRE(v == 0.0);
    for (double v : ints.g2) REQUIRE(v == 0.0);
}

TEST_CASE("core energy record") {
    const MolecularIntegrals ints =
        parse_fcidump("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n0.713754 0 0 0 0\n");
    REQUIRE(ints.core_energy == Approx(0.713754));
}

TEST_CASE("two-electron record expands to the 8-fold orbit") {
    const MolecularIntegrals ints =
        parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0, &END\n0.5 1 2 1 2\n");
    REQUIRE(ints.two_body(0, 1, 0, 1) == Approx(0.5));
    REQUIRE(ints.two_body(1, 0, 0, 1) == Approx(0.5));
    REQUIRE(ints.two_body(0, 1, 1, 0) == Approx(0.5));
    REQUIRE(ints.two_body(1, 0, 1, 0) == Approx(0.5));
    REQUIRE(ints.g2_eightfold_symmetric());
}

TEST_CASE("one-electron records are symmetrized") {
    const MolecularIntegrals ints =
        parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0, &END\n-0.25 2 1 0 0\n");
    REQUIRE(ints.one_body(1, 0) == Approx(-0.25));
    REQUIRE(ints.one_body(0, 1) == Approx(-0.25));
    REQUIRE(ints.h1_symmetric());
}

TEST_CASE("slash-terminated namelists and ORBSYM noise are accepted") {
    const MolecularIntegrals ints = parse_fcidump(
        "&FCI NORB=3,NELEC=2,MS2=0,\n ORBSYM=1,1,1,\n ISYM=1,\n/\n0.1 1 1 0 0\n");
    REQUIRE(ints.n_spatial == 3);
    REQUIRE(ints.one_body(0, 0) == Approx(0.1));
}

TEST_CASE("parse errors carry line numbers") {
    SECTION("missing NORB") {
        REQUIRE_THROWS_WITH(parse_fcidump("&FCI NELEC=2, &END\n"),
                            Catch::Contains("NORB"));
    }
    SECTION("missing NELEC") {
        REQUIRE_THROWS_WITH(parse_fcidump("&FCI NORB=2, &END\n"),
                            Catch::Contains("NELEC"));
    }
    SECTION("index out of range") {
        REQUIRE_THROWS_WITH(parse_fcidump("&FCI NORB=2,NELEC=2, &END\n0.5 3 1 0 0\n"),
                            Catch::Contains("line 2"));
    }
    SECTION("non-numeric value") {
        REQUIRE_THROWS_WITH(parse_fcidump("&FCI NORB=2,NELEC=2, &END\nabc 1 1 0 0\n"),
                            Catch::Contains("non-numeric"));
    }
    SECTION("unterminated header") {
        REQUIRE_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,\n"), FcidumpParseError);
    }
    SECTION("unrestricted dumps rejected") {
        REQUIRE_THROWS_WITH(parse_fcidump("&FCI NORB=2,NELEC=2,IUHF=1, &END\n"),
                            Catch::Contains("IUHF"));
    }
}

TEST_CASE("write/parse round-trip is the identity") {
    SECTION("all-zero integrals") {
        MolecularIntegrals zero;
        zero.n_spatial = 3;
        zero.n_electrons = 2;
        zero.allocate();
        const MolecularIntegrals back = parse_fcidump(write_fcidump(zero));
        REQUIRE(max_diff(zero, back) == 0.0);
    }
    SECTION("random integrals with full symmetry") {
        SplitMix64 rng(321);
        for (int trial = 0; trial < 8; ++trial) {
            const MolecularIntegrals ints = random_integrals(rng, 3);
            const MolecularIntegrals back = parse_fcidump(write_fcidump(ints));
            REQUIRE(back.n_spatial == ints.n_spatial);
            REQUIRE(max_diff(ints, back) < 1e-12);
        }
    }
}

TEST_CASE("shipped H2 fixture round-trips through write/parse") {
    const MolecularIntegrals ints = load_fcidump("fixtures/h2/h2_0.7414.fcidump");
    const MolecularIntegrals back = parse_fcidump(write_fcidump(ints));
    REQUIRE(max_diff(ints, back) < 1e-12);
    REQUIRE(ints.core_energy == Approx(0.713754).margin(1e-6));
}

TEST_CASE("canonical output is independent of input record order") {
    const std::string a = "&FCI NORB=2,NELEC=2,MS2=0, &END\n"
                          "0.5 1 2 1 2\n0.25 1 1 0 0\n-0.1 2 2 0 0\n0.7 0 0 0 0\n";
    const std::string b = "&FCI NORB=2,NELEC=2,MS2=0, &END\n"
                          "0.7 0 0 0 0\n-0.1 2 2 0 0\n0.5 2 1 2 1\n0.25 1 1 0 0\n";
    REQUIRE(write_fcidump(parse_fcidump(a)) == write_fcidump(parse_fcidump(b)));
}

TEST_CASE("reference determinant occupies the lowest spatial orbitals") {
    MolecularIntegrals ints;
    ints.n_spatial = 2;
    ints.n_electrons = 2;
    ints.allocate();
    const OccupationBitstring occ = reference_determinant(ints);
    REQUIRE(occ.bits == std::vector<bool>{true, true, false, false});
    REQUIRE(occ.count_alpha() == 1);
    REQUIRE(occ.count_beta() == 1);

    MolecularIntegrals six;
    six.n_spatial = 6;
    six.n_electrons = 6;
    six.allocate();
    const OccupationBitstring occ6 = reference_determinant(six);
    for (int k = 0; k < 6; ++k) REQUIRE(occ6.bits[k]);
    for (int k = 6; k < 12; ++k) REQUIRE_FALSE(occ6.bits[k]);

    MolecularIntegrals odd;
    odd.n_spatial = 2;
    odd.n_electrons = 3;
    odd.allocate();
    REQUIRE_THROWS_AS(reference_determinant(odd), std::invalid_argument);
}

TEST_CASE("fermionic hamiltonian of zero integrals is the core constant") {
    MolecularIntegrals ints;
    ints.n_spatial = 2;
    ints.n_electrons = 2;
    ints.allocate();
    ints.core_energy = 1.75;
    const FermionOperator h = build_fermionic_hamiltonian(ints);
    REQUIRE(h.size() == 1);
    REQUIRE(h.terms().at(LadderString{}) == Approx(1.75));
}

TEST_CASE("identity one-body integrals build the number operator") {
    MolecularIntegrals ints;
    ints.n_spatial = 2;
    ints.n_electrons = 2;
    ints.allocate();
    for (int p = 0; p < 2; ++p) ints.one_body(p, p) = 1.0;
    const FermionOperator h = build_fermionic_hamiltonian(ints);
    REQUIRE(h.size() == 4);
    for (int so = 0; so < 4; ++so)
        REQUIRE(h.terms().at(LadderString{{so, true}, {so, false}}) == Approx(1.0));
}

TEST_CASE("fermionic hamiltonian is Hermitian") {
    SplitMix64 rng(2718);
    const MolecularIntegrals ints = random_integrals(rng, 2);
    const FermionOperator h = build_fermionic_hamiltonian(ints);
    REQUIRE(is_zero_after_normal_ordering(h - hermitian_conjugate(h)));
}
