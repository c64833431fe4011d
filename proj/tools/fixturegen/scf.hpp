// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

// Minimal restricted Hartree-Fock over STO-3G, plus the AO->MO transform
// and frozen-core folding needed to emit FCIDUMP fixtures. This is the
// upstream integral producer; the simulation library only ever consumes
// the FCIDUMP files it writes.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdint.hpp"
#include "ucclab/fcidump.hpp"

namespace fixturegen {

struct Atom {
    int z = 1;
    std::array<double, 3> center{}; // bohr
};

struct Molecule {
    std::string name;
    std::vector<Atom> atoms;

    int n_electrons() const {
        int n = 0;
        for (const Atom& a : atoms) n += a.z;
        return n;
    }

    double nuclear_repulsion() const {
        double e = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j) {
                const auto& a = atoms[i].center;
                const auto& b = atoms[j].center;
                const double r = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) +
                                           (a[1] - b[1]) * (a[1] - b[1]) +
                                           (a[2] - b[2]) * (a[2] - b[2]));
                e += atoms[i].z * atoms[j].z / r;
            }
        return e;
    }
};

namespace sto3g {

// Standard STO-3G tabulations. The 1s and 2sp contraction coefficients are
// shared across elements; exponents are per element.
inline constexpr double coef_1s[3] = {0.1543289673, 0.5353281423, 0.4446345422};
inline constexpr double coef_2s[3] = {-0.09996722919, 0.3995128261, 0.7001154689};
inline constexpr double coef_2p[3] = {0.1559162750, 0.6076837186, 0.3919573931};

struct ElementBasis {
    std::array<double, 3> exp_1s{};
    std::array<double, 3> exp_2sp{}; // zero when the element has no 2sp shell
    bool has_2sp = false;
};

inline ElementBasis element_basis(int z) {
    switch (z) {
        case 1: return {{3.425250914, 0.6239137298, 0.1688554040}, {}, false};
        case 3: return {{16.11957475, 2.936200663, 0.7946504870},
                        {0.6362897469, 0.1478600533, 0.0480886784},
                        true};
        case 4: return {{30.16787069, 5.495115306, 1.487192653},
                        {1.314833110, 0.3055389383, 0.0993707456},
                        true};
        case 7: return {{99.10616896, 18.05231239, 4.885660238},
                        {3.780455879, 0.8784966449, 0.2857143744},
                        true};
        default:
            throw std::invalid_argument("sto3g: element Z=" + std::to_string(z) + " not tabulated");
    }
}

} // namespace sto3g

inline std::vector<BasisFunction> build_basis(const Molecule& mol) {
    std::vector<BasisFunction> basis;
    for (const Atom& atom : mol.atoms) {
        const auto eb = sto3g::element_basis(atom.z);
        BasisFunction s1;
        s1.center = atom.center;
        s1.powers = {0, 0, 0};
        s1.exps.assign(eb.exp_1s.begin(), eb.exp_1s.end());
        s1.coefs.assign(sto3g::coef_1s, sto3g::coef_1s + 3);
        s1.normalize();
        basis.push_back(std::move(s1));
        if (eb.has_2sp) {
            BasisFunction s2;
            s2.center = atom.center;
            s2.powers = {0, 0, 0};
            s2.exps.assign(eb.exp_2sp.begin(), eb.exp_2sp.end());
            s2.coefs.assign(sto3g::coef_2s, sto3g::coef_2s + 3);
            s2.normalize();
            basis.push_back(std::move(s2));
            for (int d = 0; d < 3; ++d) {
                BasisFunction p;
                p.center = atom.center;
                p.powers = {d == 0 ? 1 : 0, d == 1 ? 1 : 0, d == 2 ? 1 : 0};
                p.exps.assign(eb.exp_2sp.begin(), eb.exp_2sp.end());
                p.coefs.assign(sto3g::coef_2p, sto3g::coef_2p + 3);
                p.normalize();
                basis.push_back(std::move(p));
            }
        }
    }
    return basis;
}

struct AoIntegrals {
    int n = 0;
    Eigen::MatrixXd s;
    Eigen::MatrixXd hcore;
    std::vector<double> eri; // (pq|rs), full n^4 with 8-fold symmetry

    double g(int p, int q, int r, int s_) const {
        const std::size_t n_ = static_cast<std::size_t>(n);
        return eri[((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s_];
    }
};

inline AoIntegrals compute_ao_integrals(const Molecule& mol) {
    const auto basis = build_basis(mol);
    AoIntegrals ao;
    ao.n = static_cast<int>(basis.size());
    const int n = ao.n;
    ao.s.resize(n, n);
    ao.hcore.resize(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q) {
            const double s_pq = overlap(basis[p], basis[q]);
            double h_pq = kinetic(basis[p], basis[q]);
            for (const Atom& atom : mol.atoms)
                h_pq -= atom.z * nuclear(basis[p], basis[q], atom.center);
            ao.s(p, q) = ao.s(q, p) = s_pq;
            ao.hcore(p, q) = ao.hcore(q, p) = h_pq;
        }

    const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
    ao.eri.assign(n4, 0.0);
    auto store = [&](int p, int q, int r, int s_, double v) {
        const std::size_t n_ = static_cast<std::size_t>(n);
        auto idx = [n_](int a, int b, int c, int d) {
            return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
        };
        ao.eri[idx(p, q, r, s_)] = v;
        ao.eri[idx(q, p, r, s_)] = v;
        ao.eri[idx(p, q, s_, r)] = v;
        ao.eri[idx(q, p, s_, r)] = v;
        ao.eri[idx(r, s_, p, q)] = v;
        ao.eri[idx(s_, r, p, q)] = v;
        ao.eri[idx(r, s_, q, p)] = v;
        ao.eri[idx(s_, r, q, p)] = v;
    };
    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s_ = 0; s_ <= r; ++s_) {
                    if (r == p && s_ > q) continue;
                    store(p, q, r, s_, eri(basis[p], basis[q], basis[r], basis[s_]));
                }
    return ao;
}

struct ScfResult {
    double energy = 0.0; // total, including nuclear repulsion
    Eigen::MatrixXd coeffs;
    Eigen::VectorXd orbital_energies;
    Eigen::MatrixXd density;
    int iterations = 0;
    bool converged = false;
};

/// Closed-shell RHF with DIIS from a caller-provided initial density.
/// run_rhf (below) tries the standard guesses; an explicit density
/// warm-starts scans so they stay on the restricted branch as bonds stretch.
inline ScfResult run_rhf_from(const Molecule& mol, const AoIntegrals& ao,
                              const Eigen::MatrixXd* initial_density, int max_iter = 500,
                              double e_tol = 1e-12, double d_tol = 1e-10) {
    const int n = ao.n;
    const int n_occ = mol.n_electrons() / 2;
    if (mol.n_electrons() % 2 != 0)
        throw std::invalid_argument("run_rhf: closed-shell molecules only");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_solver(ao.s);
    const Eigen::VectorXd s_evals = s_solver.eigenvalues();
    if (s_evals(0) < 1e-8) throw std::runtime_error("run_rhf: near-singular overlap matrix");
    Eigen::VectorXd inv_sqrt = s_evals.array().rsqrt();
    const Eigen::MatrixXd x = s_solver.eigenvectors() * inv_sqrt.asDiagonal() *
                              s_solver.eigenvectors().transpose();

    auto build_fock = [&](const Eigen::MatrixXd& d) {
        Eigen::MatrixXd f = ao.hcore;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                double jk = 0.0;
                for (int r = 0; r < n; ++r)
                    for (int s_ = 0; s_ < n; ++s_)
                        jk += d(r, s_) * (ao.g(p, q, s_, r) - 0.5 * ao.g(p, r, s_, q));
                f(p, q) += jk;
            }
        return f;
    };

    auto density_from = [&](const Eigen::MatrixXd& c) {
        const Eigen::MatrixXd occ = c.leftCols(n_occ);
        return Eigen::MatrixXd(2.0 * occ * occ.transpose());
    };

    ScfResult res;
    Eigen::MatrixXd d;
    if (initial_density) {
        d = *initial_density;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> guess(x.transpose() * ao.hcore * x);
        const Eigen::MatrixXd c = x * guess.eigenvectors();
        d = density_from(c);
    }

    std::vector<Eigen::MatrixXd> diis_f, diis_e;
    double e_prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::MatrixXd f = build_fock(d);

        // DIIS extrapolation on the orthonormal-basis error FDS - SDF
        const Eigen::MatrixXd err = x.transpose() * (f * d * ao.s - ao.s * d * f) * x;
        diis_f.push_back(f);
        diis_e.push_back(err);
        if (diis_f.size() > 8) {
            diis_f.erase(diis_f.begin());
            diis_e.erase(diis_e.begin());
        }
        if (diis_f.size() >= 2) {
            const int m = static_cast<int>(diis_f.size());
            Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m + 1, m + 1);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    b(i, j) = (diis_e[i].array() * diis_e[j].array()).sum();
            for (int i = 0; i < m; ++i) b(i, m) = b(m, i) = -1.0;
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
            rhs(m) = -1.0;
            const Eigen::VectorXd w = b.fullPivLu().solve(rhs);
            if (w.allFinite()) {
                f.setZero();
                for (int i = 0; i < m; ++i) f += w(i) * diis_f[i];
            }
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> f_solver(x.transpose() * f * x);
        const Eigen::MatrixXd c = x * f_solver.eigenvectors();
        const Eigen::MatrixXd d_new = density_from(c);

        const Eigen::MatrixXd f_raw = build_fock(d_new);
        const double e_elec = 0.5 * (d_new.array() * (ao.hcore + f_raw).array()).sum();
        const double e_total = e_elec + mol.nuclear_repulsion();

        const double d_change = (d_new - d).cwiseAbs().maxCoeff();
        d = d_new;
        res.coeffs = c;
        res.density = d;
        res.energy = e_total;
        res.iterations = it + 1;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> canon(x.transpose() * f_raw * x);
        res.orbital_energies = canon.eigenvalues();
        res.coeffs = x * canon.eigenvectors();
        if (it > 0 && std::abs(e_total - e_prev) < e_tol && d_change < d_tol) {
            res.converged = true;
            return res;
        }
        e_prev = e_total;
    }
    return res;
}

/// RHF entry point. With a warm-start density, iterate from it alone.
/// Otherwise run from both the core guess and the generalized
/// Wolfsberg-Helmholz guess and keep the lower converged solution: the core
/// guess mis-occupies degenerate p manifolds (N2) while GWH can misfill
/// near-degenerate 2s/2p atoms (Be), so neither is safe alone.
inline ScfResult run_rhf(const Molecule& mol, const AoIntegrals& ao,
                         const Eigen::MatrixXd* initial_density = nullptr, int max_iter = 500,
                         double e_tol = 1e-12, double d_tol = 1e-10) {
    if (initial_density) return run_rhf_from(mol, ao, initial_density, max_iter, e_tol, d_tol);

    const ScfResult core = run_rhf_from(mol, ao, nullptr, max_iter, e_tol, d_tol);

    const int n = ao.n;
    Eigen::MatrixXd f0 = ao.hcore;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) f0(i, j) = 0.875 * ao.s(i, j) * (ao.hcore(i, i) + ao.hcore(j, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_solver(ao.s);
    Eigen::VectorXd inv_sqrt = s_solver.eigenvalues().array().rsqrt();
    const Eigen::MatrixXd x = s_solver.eigenvectors() * inv_sqrt.asDiagonal() *
                              s_solver.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> guess(x.transpose() * f0 * x);
    const Eigen::MatrixXd c = x * guess.eigenvectors();
    const int n_occ = mol.n_electrons() / 2;
    const Eigen::MatrixXd occ = c.leftCols(n_occ);
    const Eigen::MatrixXd d_gwh = 2.0 * occ * occ.transpose();
    const ScfResult gwh = run_rhf_from(mol, ao, &d_gwh, max_iter, e_tol, d_tol);

    if (core.converged && gwh.converged) return core.energy <= gwh.energy ? core : gwh;
    if (core.converged) return core;
    return gwh;
}

/// AO->MO transform and frozen-core folding into the library's integral
/// container. Frozen orbitals are the n_frozen lowest canonical MOs; their
/// mean field dresses the one-electron integrals and their energy joins the
/// core constant.
inline ucclab::MolecularIntegrals to_molecular_integrals(const Molecule& mol, const AoIntegrals& ao,
                                                         const ScfResult& scf, int n_frozen = 0) {
    const int n = ao.n;
    const Eigen::MatrixXd& c = scf.coeffs;

    const Eigen::MatrixXd h_mo = c.transpose() * ao.hcore * c;

    // quarter transforms
    const std::size_t n_ = static_cast<std::size_t>(n);
    std::vector<double> t1(n_ * n_ * n_ * n_, 0.0), t2(t1.size(), 0.0);
    auto idx = [n_](int a, int b, int c_, int d) {
        return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c_) * n_ + d;
    };
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s_ = 0; s_ < n; ++s_) {
                    double acc = 0.0;
                    for (int mu = 0; mu < n; ++mu) acc += c(mu, p) * ao.g(mu, q, r, s_);
                    t1[idx(p, q, r, s_)] = acc;
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s_ = 0; s_ < n; ++s_) {
                    double acc = 0.0;
                    for (int nu = 0; nu < n; ++nu) acc += c(nu, q) * t1[idx(p, nu, r, s_)];
                    t2[idx(p, q, r, s_)] = acc;
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s_ = 0; s_ < n; ++s_) {
                    double acc = 0.0;
                    for (int la = 0; la < n; ++la) acc += c(la, r) * t2[idx(p, q, la, s_)];
                    t1[idx(p, q, r, s_)] = acc;
                }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s_ = 0; s_ < n; ++s_) {
                    double acc = 0.0;
                    for (int si = 0; si < n; ++si) acc += c(si, s_) * t1[idx(p, q, r, si)];
                    t2[idx(p, q, r, s_)] = acc; // (pq|rs) in MO basis
                }

    const int n_active = n - n_frozen;
    if (n_frozen < 0 || n_active <= 0)
        throw std::invalid_argument("to_molecular_integrals: bad frozen-core count");
    if (2 * n_frozen > mol.n_electrons())
        throw std::invalid_argument("to_molecular_integrals: freezing more electrons than present");

    ucclab::MolecularIntegrals ints;
    ints.n_spatial = n_active;
    ints.n_electrons = mol.n_electrons() - 2 * n_frozen;
    ints.ms2 = 0;
    ints.allocate();

    double core = mol.nuclear_repulsion();
    for (int c1 = 0; c1 < n_frozen; ++c1) {
        core += 2.0 * h_mo(c1, c1);
        for (int c2 = 0; c2 < n_frozen; ++c2)
            core += 2.0 * t2[idx(c1, c1, c2, c2)] - t2[idx(c1, c2, c2, c1)];
    }
    ints.core_energy = core;

    for (int p = 0; p < n_active; ++p)
        for (int q = 0; q < n_active; ++q) {
            double h = h_mo(n_frozen + p, n_frozen + q);
            for (int c1 = 0; c1 < n_frozen; ++c1)
                h += 2.0 * t2[idx(n_frozen + p, n_frozen + q, c1, c1)] -
                     t2[idx(n_frozen + p, c1, c1, n_frozen + q)];
            ints.one_body(p, q) = h;
        }
    for (int p = 0; p < n_active; ++p)
        for (int q = 0; q < n_active; ++q)
            for (int r = 0; r < n_active; ++r)
                for (int s_ = 0; s_ < n_active; ++s_)
                    ints.g2[ints.g2_index(p, q, r, s_)] =
                        t2[idx(n_frozen + p, n_frozen + q, n_frozen + r, n_frozen + s_)];
    return ints;
}

} // namespace fixturegen
