// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucclab {

/// Raised on malformed FCIDUMP input; the message carries the line number.
class FcidumpParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Spatial-orbital integrals of a restricted (spin-free) Hamiltonian:
/// one-electron h1[p][q], two-electron (pq|rs) in chemist notation with
/// 8-fold permutational symmetry, the scalar core energy, and electron
/// counts. Immutable in practice: built once, then shared read-only.
struct MolecularIntegrals {
    int n_spatial = 0;
    int n_electrons = 0;
    int ms2 = 0;
    double core_energy = 0.0;
    std::vector<double> h1; // n_spatial * n_spatial, row-major
    std::vector<double> g2; // n_spatial^4, index ((p*n+q)*n+r)*n+s for (pq|rs)

    void allocate() {
        h1.assign(static_cast<std::size_t>(n_spatial) * n_spatial, 0.0);
        g2.assign(static_cast<std::size_t>(n_spatial) * n_spatial * n_spatial * n_spatial, 0.0);
    }

    double& one_body(int p, int q) { return h1[static_cast<std::size_t>(p) * n_spatial + q]; }
    double one_body(int p, int q) const { return h1[static_cast<std::size_t>(p) * n_spatial + q]; }

    std::size_t g2_index(int p, int q, int r, int s) const {
        const std::size_t n = static_cast<std::size_t>(n_spatial);
        return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
    }
    /// Chemist-notation (pq|rs).
    double two_body(int p, int q, int r, int s) const { return g2[g2_index(p, q, r, s)]; }

    /// Store (pq|rs) together with its full 8-fold symmetry orbit.
    void set_two_body(int p, int q, int r, int s, double value) {
        const std::array<std::array<int, 4>, 8> orbit = {{{p, q, r, s},
                                                          {q, p, r, s},
                                                          {p, q, s, r},
                                                          {q, p, s, r},
                                                          {r, s, p, q},
                                                          {s, r, p, q},
                                                          {r, s, q, p},
                                                          {s, r, q, p}}};
        for (const auto& [a, b, c, d] : orbit) g2[g2_index(a, b, c, d)] = value;
    }

    /// Store h1[p][q] symmetrized.
    void set_one_body(int p, int q, double value) {
        one_body(p, q) = value;
        one_body(q, p) = value;
    }

    bool h1_symmetric(double tol = 1e-12) const {
        for (int p = 0; p < n_spatial; ++p)
            for (int q = p + 1; q < n_spatial; ++q)
                if (std::abs(one_body(p, q) - one_body(q, p)) > tol) return false;
        return true;
    }

    bool g2_eightfold_symmetric(double tol = 1e-12) const {
        for (int p = 0; p < n_spatial; ++p)
            for (int q = 0; q < n_spatial; ++q)
                for (int r = 0; r < n_spatial; ++r)
                    for (int s = 0; s < n_spatial; ++s) {
                        const double v = two_body(p, q, r, s);
                        if (std::abs(two_body(q, p, r, s) - v) > tol ||
                            std::abs(two_body(p, q, s, r) - v) > tol ||
                            std::abs(two_body(r, s, p, q) - v) > tol)
                            return false;
                    }
        return true;
    }
};

namespace detail {

inline std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

/// Pull integer values for KEY=multi,value,lists out of a namelist header.
/// Returns the values assigned to `key`, empty if absent.
inline std::vector<long> namelist_values(const std::string& header, const std::string& key) {
    std::vector<long> vals;
    const std::string up = upper(header);
    std::size_t pos = 0;
    while ((pos = up.find(key, pos)) != std::string::npos) {
        // require a non-identifier character before the key
        if (pos > 0 && (std::isalnum(static_cast<unsigned char>(up[pos - 1])) || up[pos - 1] == '_')) {
            pos += key.size();
            continue;
        }
        std::size_t eq = up.find('=', pos + key.size());
        if (eq == std::string::npos) return vals;
        std::size_t cur = eq + 1;
        while (cur < up.size()) {
            while (cur < up.size() && (up[cur] == ' ' || up[cur] == ',')) ++cur;
            std::size_t end = cur;
            while (end < up.size() && (std::isdigit(static_cast<unsigned char>(up[end])) ||
                                       up[end] == '-' || up[end] == '+'))
                ++end;
            if (end == cur) break;
            vals.push_back(std::stol(up.substr(cur, end - cur)));
            cur = end;
            // only continue the list across an immediate comma
            if (cur >= up.size() || up[cur] != ',') break;
        }
        return vals;
    }
    return vals;
}

} // namespace detail

/// Parse the Knowles-Handy FCIDUMP text format: a namelist header with NORB,
/// NELEC, MS2 terminated by &END or /, followed by "value i j k l" records
/// with 1-based indices. ORBSYM/ISYM are accepted and ignored. A record with
/// all indices zero sets the core energy; k=l=0 sets h1 (symmetrized); all
/// indices nonzero set (ij|kl) with its full 8-fold orbit. UHF-style dumps
/// (IUHF nonzero) are rejected.
inline MolecularIntegrals parse_fcidump(std::istream& in) {
    std::string line;
    std::string header;
    int line_no = 0;
    bool header_done = false;
    while (std::getline(in, line)) {
        ++line_no;
        header += " " + line;
        const std::string up = detail::upper(header);
        std::size_t endpos = up.find("&END");
        if (endpos == std::string::npos) {
            // '/' terminator; ignore the leading '&FCI'
            std::size_t slash = up.find('/');
            if (slash != std::string::npos) endpos = slash;
        }
        if (endpos != std::string::npos) {
            header = header.substr(0, endpos);
            header_done = true;
            break;
        }
    }
    if (!header_done)
        throw FcidumpParseError("fcidump: header not terminated by &END or / (line " +
                                std::to_string(line_no) + ")");

    const auto norb = detail::namelist_values(header, "NORB");
    const auto nelec = detail::namelist_values(header, "NELEC");
    const auto ms2 = detail::namelist_values(header, "MS2");
    const auto iuhf = detail::namelist_values(header, "IUHF");
    if (norb.empty())
        throw FcidumpParseError("fcidump: missing NORB in header (line " + std::to_string(line_no) + ")");
    if (nelec.empty())
        throw FcidumpParseError("fcidump: missing NELEC in header (line " + std::to_string(line_no) + ")");
    if (!iuhf.empty() && iuhf.front() != 0)
        throw FcidumpParseError("fcidump: unrestricted (IUHF) dumps are not supported");

    MolecularIntegrals ints;
    ints.n_spatial = static_cast<int>(norb.front());
    ints.n_electrons = static_cast<int>(nelec.front());
    ints.ms2 = ms2.empty() ? 0 : static_cast<int>(ms2.front());
    if (ints.n_spatial <= 0)
        throw FcidumpParseError("fcidump: NORB must be positive");
    if (ints.n_spatial > 32)
        throw FcidumpParseError("fcidump: NORB > 32 unsupported at this scale");
    ints.allocate();

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string value_tok;
        if (!(ls >> value_tok)) continue; // blank line
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(value_tok, &used);
            if (used != value_tok.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw FcidumpParseError("fcidump: non-numeric value field '" + value_tok + "' at line " +
                                    std::to_string(line_no));
        }
        long i = 0, j = 0, k = 0, l = 0;
        if (!(ls >> i >> j >> k >> l))
            throw FcidumpParseError("fcidump: expected four indices at line " + std::to_string(line_no));
        for (long idx : {i, j, k, l})
            if (idx < 0 || idx > ints.n_spatial)
                throw FcidumpParseError("fcidump: index " + std::to_string(idx) +
                                        " out of range [0, NORB] at line " + std::to_string(line_no));
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            ints.core_energy = value;
        } else if (k == 0 && l == 0) {
            if (i == 0 || j == 0)
                throw FcidumpParseError("fcidump: malformed one-electron record at line " +
                                        std::to_string(line_no));
            ints.set_one_body(static_cast<int>(i) - 1, static_cast<int>(j) - 1, value);
        } else {
            if (i == 0 || j == 0 || k == 0 || l == 0)
                throw FcidumpParseError("fcidump: malformed two-electron record at line " +
                                        std::to_string(line_no));
            ints.set_two_body(static_cast<int>(i) - 1, static_cast<int>(j) - 1,
                              static_cast<int>(k) - 1, static_cast<int>(l) - 1, value);
        }
    }
    return ints;
}

inline MolecularIntegrals parse_fcidump(const std::string& text) {
    std::istringstream is(text);
    return parse_fcidump(is);
}

inline MolecularIntegrals load_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

/// Canonical FCIDUMP output: unique symmetry representatives in sorted index
/// order, 17 significant digits. parse(write(x)) == x to 1e-12 elementwise,
/// independent of the record order of the original input.
inline void write_fcidump(const MolecularIntegrals& ints, std::ostream& out) {
    const int n = ints.n_spatial;
    out << "&FCI NORB=" << n << ",NELEC=" << ints.n_electrons << ",MS2=" << ints.ms2 << ",\n";
    out << " ORBSYM=";
    for (int p = 0; p < n; ++p) out << "1,";
    out << "\n ISYM=1,\n&END\n";

    char buf[96];
    auto emit = [&](double value, int i, int j, int k, int l) {
        std::snprintf(buf, sizeof(buf), "%24.17g %4d %4d %4d %4d\n", value, i, j, k, l);
        out << buf;
    };

    // (pq|rs) representatives: p>=q, r>=s, (p,q) >= (r,s) lexicographically.
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= r; ++s) {
                    if (r == p && s > q) continue;
                    const double v = ints.two_body(p, q, r, s);
                    if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = ints.one_body(p, q);
            if (v != 0.0) emit(v, p + 1, q + 1, 0, 0);
        }
    emit(ints.core_energy, 0, 0, 0, 0);
}

inline std::string write_fcidump(const MolecularIntegrals& ints) {
    std::ostringstream os;
    write_fcidump(ints, os);
    return os.str();
}

inline void save_fcidump(const MolecularIntegrals& ints, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write FCIDUMP file: " + path);
    write_fcidump(ints, out);
}

} // namespace ucclab
