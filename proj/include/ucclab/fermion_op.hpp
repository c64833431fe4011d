// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/constants.hpp"

namespace ucclab {

/// One ladder operator a_p or a†_p acting on spin orbital p.
struct LadderOp {
    int index = 0;
    bool dagger = false;

    friend bool operator==(const LadderOp&, const LadderOp&) = default;
    friend auto operator<=>(const LadderOp&, const LadderOp&) = default;
};

using LadderString = std::vector<LadderOp>;

/// Real-coefficient linear combination of ladder-operator strings.
/// Terms are keyed by the exact operator sequence; the empty sequence is the
/// identity. Coefficients below coeff_eps are pruned on insertion.
class FermionOperator {
  public:
    FermionOperator() = default;

    static FermionOperator zero() { return {}; }

    static FermionOperator constant(double c) {
        FermionOperator op;
        op.add_term({}, c);
        return op;
    }

    static FermionOperator single_term(LadderString ops, double coeff) {
        FermionOperator op;
        op.add_term(std::move(ops), coeff);
        return op;
    }

    void add_term(LadderString ops, double coeff) {
        auto it = terms_.find(ops);
        if (it == terms_.end()) {
            if (std::abs(coeff) >= coeff_eps) terms_.emplace(std::move(ops), coeff);
        } else {
            it->second += coeff;
            if (std::abs(it->second) < coeff_eps) terms_.erase(it);
        }
    }

    const std::map<LadderString, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Largest spin-orbital index touched by any term, or -1 for constants.
    int max_index() const {
        int m = -1;
        for (const auto& [ops, c] : terms_)
            for (const LadderOp& op : ops) m = std::max(m, op.index);
        return m;
    }

    FermionOperator& operator+=(const FermionOperator& other) {
        for (const auto& [ops, c] : other.terms_) add_term(ops, c);
        return *this;
    }

    FermionOperator& operator-=(const FermionOperator& other) {
        for (const auto& [ops, c] : other.terms_) add_term(ops, -c);
        return *this;
    }

    FermionOperator& operator*=(double s) {
        std::map<LadderString, double> scaled;
        for (auto& [ops, c] : terms_)
            if (std::abs(c * s) >= coeff_eps) scaled.emplace(ops, c * s);
        terms_ = std::move(scaled);
        return *this;
    }

    friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
    friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a -= b; }
    friend FermionOperator operator*(FermionOperator a, double s) { return a *= s; }
    friend FermionOperator operator*(double s, FermionOperator a) { return a *= s; }

  private:
    std::map<LadderString, double> terms_;
};

namespace detail {

/// Canonical order for a normal-ordered term: creations first, then
/// annihilations, each group by descending index.
inline bool is_normal_ordered(const LadderString& ops) {
    for (std::size_t k = 0; k + 1 < ops.size(); ++k) {
        const LadderOp& a = ops[k];
        const LadderOp& b = ops[k + 1];
        if (!a.dagger && b.dagger) return false;
        if (a.dagger == b.dagger && a.index <= b.index) return false;
    }
    return true;
}

} // namespace detail

/// Rewrite into normal order under {a_p, a†_q} = δ_pq. Equal-index repeats
/// within a creation or annihilation group annihilate the term; swaps carry
/// fermionic signs. The result equals the input as an operator on Fock space.
inline FermionOperator normal_order(const FermionOperator& op) {
    FermionOperator out;
    // Worklist of partially reordered terms.
    std::vector<std::pair<LadderString, double>> work(op.terms().begin(), op.terms().end());
    while (!work.empty()) {
        auto [ops, coeff] = std::move(work.back());
        work.pop_back();

        bool rewritten = false;
        for (std::size_t k = 0; k + 1 < ops.size(); ++k) {
            const LadderOp a = ops[k];
            const LadderOp b = ops[k + 1];
            if (!a.dagger && b.dagger) {
                // a_p a†_q = δ_pq - a†_q a_p
                if (a.index == b.index) {
                    LadderString contracted(ops.begin(), ops.begin() + k);
                    contracted.insert(contracted.end(), ops.begin() + k + 2, ops.end());
                    work.emplace_back(std::move(contracted), coeff);
                }
                std::swap(ops[k], ops[k + 1]);
                work.emplace_back(std::move(ops), -coeff);
                rewritten = true;
                break;
            }
            if (a.dagger == b.dagger) {
                if (a.index == b.index) {
                    rewritten = true; // nilpotent: term vanishes
                    break;
                }
                if (a.index < b.index) {
                    std::swap(ops[k], ops[k + 1]);
                    work.emplace_back(std::move(ops), -coeff);
                    rewritten = true;
                    break;
                }
            }
        }
        if (!rewritten) out.add_term(std::move(ops), coeff);
    }
    return out;
}

/// Reverse each string, flip dagger flags, conjugate (real) coefficients.
inline FermionOperator hermitian_conjugate(const FermionOperator& op) {
    FermionOperator out;
    for (const auto& [ops, coeff] : op.terms()) {
        LadderString rev(ops.rbegin(), ops.rend());
        for (LadderOp& l : rev) l.dagger = !l.dagger;
        out.add_term(std::move(rev), coeff);
    }
    return out;
}

/// Operator product (string concatenation); not normal ordered.
inline FermionOperator product(const FermionOperator& a, const FermionOperator& b) {
    FermionOperator out;
    for (const auto& [ops_a, ca] : a.terms()) {
        for (const auto& [ops_b, cb] : b.terms()) {
            LadderString joined = ops_a;
            joined.insert(joined.end(), ops_b.begin(), ops_b.end());
            out.add_term(std::move(joined), ca * cb);
        }
    }
    return out;
}

inline bool is_zero_after_normal_ordering(const FermionOperator& op) {
    return normal_order(op).empty();
}

/// True when op + op† normal-orders to the zero operator.
inline bool is_anti_hermitian(const FermionOperator& op) {
    return is_zero_after_normal_ordering(op + hermitian_conjugate(op));
}

} // namespace ucclab
