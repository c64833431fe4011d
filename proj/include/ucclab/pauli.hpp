// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/constants.hpp"

namespace ucclab {

using cplx = std::complex<double>;

/// Tensor product of single-qubit Paulis in bit-mask form. Qubit k carries
/// X iff x&~z, Y iff x&z, Z iff z&~x, identity otherwise. Masks are
/// little-endian: bit k of a mask refers to qubit k.
struct PauliString {
    int n_qubits = 0;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    cplx coefficient{1.0, 0.0};

    static PauliString identity(int n_qubits, cplx coeff = {1.0, 0.0}) {
        return {n_qubits, 0, 0, coeff};
    }
};

namespace detail {

// i^k for k in 0..3
inline cplx ipow(unsigned k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k & 3u];
}

} // namespace detail

/// Product of two strings: masks XOR, with the exact accumulated phase.
/// Writing a string as i^{|x&z|} X^x Z^z, commuting Z^z1 past X^x2 costs
/// (-1)^{|z1&x2|}.
inline PauliString pauli_product(const PauliString& a, const PauliString& b) {
    if (a.n_qubits != b.n_qubits)
        throw std::invalid_argument("pauli_product: qubit count mismatch");
    PauliString out;
    out.n_qubits = a.n_qubits;
    out.x_mask = a.x_mask ^ b.x_mask;
    out.z_mask = a.z_mask ^ b.z_mask;
    const unsigned ca = std::popcount(a.x_mask & a.z_mask);
    const unsigned cb = std::popcount(b.x_mask & b.z_mask);
    const unsigned cc = std::popcount(out.x_mask & out.z_mask);
    const unsigned swaps = std::popcount(a.z_mask & b.x_mask);
    // i^{ca+cb-cc} * (-1)^swaps; exponent taken mod 4 (cc <= ca+cb+2).
    unsigned k = (ca + cb + 4 - cc + 2 * swaps) & 3u;
    out.coefficient = a.coefficient * b.coefficient * detail::ipow(k);
    return out;
}

/// True iff the strings commute: the number of qubit positions with
/// anticommuting single-qubit Paulis is even.
inline bool strings_commute(const PauliString& a, const PauliString& b) {
    if (a.n_qubits != b.n_qubits)
        throw std::invalid_argument("strings_commute: qubit count mismatch");
    unsigned parity = std::popcount((a.x_mask & b.z_mask) ^ (a.z_mask & b.x_mask));
    return (parity & 1u) == 0;
}

/// Sum of Pauli strings with unique (x_mask, z_mask) keys, collected and
/// pruned at coeff_eps. Term order is canonical (sorted by masks) so equal
/// sums compare equal and serialize identically.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

    int n_qubits() const { return n_qubits_; }

    void add(const PauliString& s) {
        if (n_qubits_ == 0) n_qubits_ = s.n_qubits;
        if (s.n_qubits != n_qubits_)
            throw std::invalid_argument("PauliSum::add: qubit count mismatch");
        auto key = std::make_pair(s.x_mask, s.z_mask);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (std::abs(s.coefficient) >= coeff_eps) terms_.emplace(key, s.coefficient);
        } else {
            it->second += s.coefficient;
            if (std::abs(it->second) < coeff_eps) terms_.erase(it);
        }
    }

    void add(std::uint64_t x, std::uint64_t z, cplx coeff) {
        add(PauliString{n_qubits_, x, z, coeff});
    }

    PauliSum& operator+=(const PauliSum& other) {
        for (const auto& [key, c] : other.terms_)
            add(PauliString{other.n_qubits_, key.first, key.second, c});
        return *this;
    }

    PauliSum& operator*=(cplx s) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> scaled;
        for (auto& [key, c] : terms_)
            if (std::abs(c * s) >= coeff_eps) scaled.emplace(key, c * s);
        terms_ = std::move(scaled);
        return *this;
    }

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    std::vector<PauliString> strings() const {
        std::vector<PauliString> out;
        out.reserve(terms_.size());
        for (const auto& [key, c] : terms_)
            out.push_back(PauliString{n_qubits_, key.first, key.second, c});
        return out;
    }

    /// All coefficients real (Hermitian sum).
    bool is_hermitian(double tol = 1e-12) const {
        for (const auto& [key, c] : terms_)
            if (std::abs(c.imag()) > tol) return false;
        return true;
    }

    /// All coefficients purely imaginary (anti-Hermitian sum).
    bool is_anti_hermitian(double tol = 1e-12) const {
        for (const auto& [key, c] : terms_)
            if (std::abs(c.real()) > tol) return false;
        return true;
    }

    /// Sum of coefficient magnitudes.
    double one_norm() const {
        double n = 0.0;
        for (const auto& [key, c] : terms_) n += std::abs(c);
        return n;
    }

    friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
        if (a.n_qubits_ != b.n_qubits_)
            throw std::invalid_argument("PauliSum product: qubit count mismatch");
        PauliSum out(a.n_qubits_);
        for (const auto& [ka, ca] : a.terms_) {
            PauliString sa{a.n_qubits_, ka.first, ka.second, ca};
            for (const auto& [kb, cb] : b.terms_) {
                PauliString sb{b.n_qubits_, kb.first, kb.second, cb};
                out.add(pauli_product(sa, sb));
            }
        }
        return out;
    }

    friend bool operator==(const PauliSum& a, const PauliSum& b) {
        return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
    }

  private:
    int n_qubits_ = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> terms_;
};

/// Exact symbolic commutator test: AB - BA collects to the zero sum.
inline bool sums_commute(const PauliSum& a, const PauliSum& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("sums_commute: qubit count mismatch");
    PauliSum ab = a * b;
    PauliSum ba = b * a;
    ba *= cplx{-1.0, 0.0};
    ab += ba;
    return ab.empty();
}

/// Debug rendering, e.g. "(0.5+0i) X0 Z1 Y3"; identity renders as "I".
inline std::string to_string(const PauliString& s) {
    std::ostringstream os;
    os << "(" << s.coefficient.real() << (s.coefficient.imag() < 0 ? "" : "+")
       << s.coefficient.imag() << "i)";
    bool any = false;
    for (int k = 0; k < s.n_qubits; ++k) {
        const bool x = (s.x_mask >> k) & 1u;
        const bool z = (s.z_mask >> k) & 1u;
        if (!x && !z) continue;
        os << " " << (x ? (z ? "Y" : "X") : "Z") << k;
        any = true;
    }
    if (!any) os << " I";
    return os.str();
}

inline std::string to_string(const PauliSum& sum) {
    std::ostringstream os;
    bool first = true;
    for (const PauliString& s : sum.strings()) {
        if (!first) os << " + ";
        os << to_string(s);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

/// Parse the rendering produced by to_string(PauliString).
inline PauliString parse_pauli_string(const std::string& text, int n_qubits) {
    PauliString s;
    s.n_qubits = n_qubits;
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok) || tok.front() != '(' || tok.back() != ')')
        throw std::invalid_argument("parse_pauli_string: expected (re+imi) coefficient");
    // strip parens and trailing 'i'
    std::string body = tok.substr(1, tok.size() - 2);
    if (body.empty() || body.back() != 'i')
        throw std::invalid_argument("parse_pauli_string: malformed coefficient");
    body.pop_back();
    std::size_t split = body.find_last_of("+-");
    if (split == std::string::npos || split == 0)
        throw std::invalid_argument("parse_pauli_string: malformed coefficient");
    // guard exponent signs like 1e-5
    while (split > 0 && (body[split - 1] == 'e' || body[split - 1] == 'E'))
        split = body.find_last_of("+-", split - 2);
    s.coefficient = cplx{std::stod(body.substr(0, split)), std::stod(body.substr(split))};
    while (is >> tok) {
        if (tok == "I") continue;
        char p = tok[0];
        int q = std::stoi(tok.substr(1));
        if (q < 0 || q >= n_qubits) throw std::invalid_argument("parse_pauli_string: qubit out of range");
        if (p == 'X') s.x_mask |= 1ull << q;
        else if (p == 'Y') { s.x_mask |= 1ull << q; s.z_mask |= 1ull << q; }
        else if (p == 'Z') s.z_mask |= 1ull << q;
        else throw std::invalid_argument("parse_pauli_string: unknown Pauli letter");
    }
    return s;
}

} // namespace ucclab
