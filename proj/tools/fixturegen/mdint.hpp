// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

// McMurchie-Davidson evaluation of one- and two-electron integrals over
// contracted Cartesian Gaussians (s and p shells). Lengths are bohr
// throughout; energies Hartree.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fixturegen {

inline constexpr double pi = 3.14159265358979323846;

/// Boys function F_m(x) for m = 0..mmax, downward series for small x and
/// upward erf-based recursion for large x.
inline std::vector<double> boys(int mmax, double x) {
    std::vector<double> f(mmax + 1, 0.0);
    if (x < 1e-13) {
        for (int m = 0; m <= mmax; ++m) f[m] = 1.0 / (2 * m + 1);
        return f;
    }
    if (x <= 35.0) {
        const int mtop = mmax + 24;
        // F_mtop by the absolutely convergent series, then downward recursion
        double term = 1.0 / (2 * mtop + 1);
        double sum = term;
        for (int i = 1; i < 200; ++i) {
            term *= 2.0 * x / (2 * mtop + 2 * i + 1);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        const double ex = std::exp(-x);
        double fm = ex * sum;
        for (int m = mtop - 1; m >= 0; --m) {
            fm = (2.0 * x * fm + ex) / (2 * m + 1);
            if (m <= mmax) f[m] = fm;
        }
        return f;
    }
    const double ex = std::exp(-x);
    f[0] = 0.5 * std::sqrt(pi / x) * std::erf(std::sqrt(x));
    for (int m = 0; m < mmax; ++m) f[m + 1] = ((2 * m + 1) * f[m] - ex) / (2.0 * x);
    return f;
}

/// Hermite expansion coefficients E_t^{ij} for one dimension.
/// exps a, b; dist = A_x - B_x. Table indexed [i][j][t]; sized for l <= 2
/// plus the +2 shift used by the kinetic-energy formula.
struct Hermite1D {
    double table[5][5][9] = {};
    int imax = 0, jmax = 0;

    Hermite1D(int i_max, int j_max, double a, double b, double dist) : imax(i_max), jmax(j_max) {
        const double p = a + b;
        const double mu = a * b / p;
        const double xpa = -b / p * dist; // P - A
        const double xpb = a / p * dist;  // P - B
        table[0][0][0] = std::exp(-mu * dist * dist);
        for (int i = 0; i <= i_max; ++i) {
            for (int j = 0; j <= j_max; ++j) {
                if (i == 0 && j == 0) continue;
                for (int t = 0; t <= i + j; ++t) {
                    double v = 0.0;
                    if (i > 0) {
                        if (t > 0) v += 1.0 / (2.0 * p) * table[i - 1][j][t - 1];
                        v += xpa * table[i - 1][j][t];
                        if (t + 1 <= i - 1 + j) v += (t + 1) * table[i - 1][j][t + 1];
                    } else {
                        if (t > 0) v += 1.0 / (2.0 * p) * table[i][j - 1][t - 1];
                        v += xpb * table[i][j - 1][t];
                        if (t + 1 <= i + j - 1) v += (t + 1) * table[i][j - 1][t + 1];
                    }
                    table[i][j][t] = v;
                }
            }
        }
    }

    double operator()(int i, int j, int t) const {
        if (t < 0 || t > i + j) return 0.0;
        return table[i][j][t];
    }
};

/// Hermite Coulomb integrals R_{tuv} = R^0_{tuv}(p, PC).
struct HermiteCoulomb {
    int tmax;
    std::vector<double> r; // [n][t][u][v] flattened

    HermiteCoulomb(int t_max, double p, const std::array<double, 3>& pc) : tmax(t_max) {
        const int n_levels = 3 * t_max + 1;
        const int stride = t_max + 1;
        r.assign(static_cast<std::size_t>(n_levels + 1) * stride * stride * stride, 0.0);
        const double r2 = pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2];
        const auto f = boys(n_levels, p * r2);
        double pref = 1.0;
        for (int n = 0; n <= n_levels; ++n) {
            at(n, 0, 0, 0) = pref * f[n];
            pref *= -2.0 * p;
        }
        for (int total = 1; total <= 3 * t_max; ++total) {
            for (int t = 0; t <= std::min(total, t_max); ++t)
                for (int u = 0; u <= std::min(total - t, t_max); ++u) {
                    const int v = total - t - u;
                    if (v < 0 || v > t_max) continue;
                    for (int n = 0; n + total <= n_levels; ++n) {
                        double val = 0.0;
                        if (t > 0) {
                            if (t > 1) val += (t - 1) * get(n + 1, t - 2, u, v);
                            val += pc[0] * get(n + 1, t - 1, u, v);
                        } else if (u > 0) {
                            if (u > 1) val += (u - 1) * get(n + 1, t, u - 2, v);
                            val += pc[1] * get(n + 1, t, u - 1, v);
                        } else {
                            if (v > 1) val += (v - 1) * get(n + 1, t, u, v - 2);
                            val += pc[2] * get(n + 1, t, u, v - 1);
                        }
                        at(n, t, u, v) = val;
                    }
                }
        }
    }

    double operator()(int t, int u, int v) const { return get(0, t, u, v); }

  private:
    double& at(int n, int t, int u, int v) {
        const int stride = tmax + 1;
        return r[((static_cast<std::size_t>(n) * stride + t) * stride + u) * stride + v];
    }
    double get(int n, int t, int u, int v) const {
        if (t < 0 || u < 0 || v < 0 || t > tmax || u > tmax || v > tmax) return 0.0;
        const int stride = tmax + 1;
        return r[((static_cast<std::size_t>(n) * stride + t) * stride + u) * stride + v];
    }
};

/// One contracted Cartesian Gaussian basis function centered at `center`
/// with angular powers (lx, ly, lz); primitives carry normalized
/// coefficients after `normalize()`.
struct BasisFunction {
    std::array<double, 3> center{};
    std::array<int, 3> powers{};
    std::vector<double> exps;
    std::vector<double> coefs;

    int l() const { return powers[0] + powers[1] + powers[2]; }

    static double dfact(int n) { // (2n-1)!! with dfact(0) = 1
        double v = 1.0;
        for (int k = 2 * n - 1; k > 1; k -= 2) v *= k;
        return v;
    }

    void normalize() {
        const auto [lx, ly, lz] = powers;
        for (std::size_t k = 0; k < exps.size(); ++k) {
            const double a = exps[k];
            const double norm = std::pow(2.0 * a / pi, 0.75) *
                                std::pow(4.0 * a, 0.5 * l()) /
                                std::sqrt(dfact(lx) * dfact(ly) * dfact(lz));
            coefs[k] *= norm;
        }
        // exact renormalization of the contracted function
        double s = 0.0;
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (std::size_t j = 0; j < exps.size(); ++j) {
                const double p = exps[i] + exps[j];
                const double pref = std::pow(pi / p, 1.5) / std::pow(2.0 * p, l());
                s += coefs[i] * coefs[j] * pref * dfact(lx) * dfact(ly) * dfact(lz);
            }
        const double scale = 1.0 / std::sqrt(s);
        for (double& c : coefs) c *= scale;
    }
};

namespace detail {

inline std::array<double, 3> gaussian_product_center(double a, const std::array<double, 3>& A,
                                                     double b, const std::array<double, 3>& B) {
    const double p = a + b;
    return {(a * A[0] + b * B[0]) / p, (a * A[1] + b * B[1]) / p, (a * A[2] + b * B[2]) / p};
}

} // namespace detail

/// Contracted overlap <a|b>.
inline double overlap(const BasisFunction& fa, const BasisFunction& fb) {
    double s = 0.0;
    for (std::size_t i = 0; i < fa.exps.size(); ++i)
        for (std::size_t j = 0; j < fb.exps.size(); ++j) {
            const double a = fa.exps[i], b = fb.exps[j];
            const double p = a + b;
            double prim = std::pow(pi / p, 1.5);
            for (int d = 0; d < 3; ++d) {
                Hermite1D e(fa.powers[d], fb.powers[d], a, b, fa.center[d] - fb.center[d]);
                prim *= e(fa.powers[d], fb.powers[d], 0);
            }
            s += fa.coefs[i] * fb.coefs[j] * prim;
        }
    return s;
}

namespace detail {

/// 1D overlap factor E_0^{ij} for given primitive pair; used by kinetic.
inline double s1d(int i, int j, double a, double b, double dist) {
    Hermite1D e(i, j, a, b, dist);
    return e(i, j, 0);
}

} // namespace detail

/// Contracted kinetic energy <a| -laplacian/2 |b>.
inline double kinetic(const BasisFunction& fa, const BasisFunction& fb) {
    double t_total = 0.0;
    for (std::size_t i = 0; i < fa.exps.size(); ++i)
        for (std::size_t j = 0; j < fb.exps.size(); ++j) {
            const double a = fa.exps[i], b = fb.exps[j];
            const double p = a + b;
            const double pref = std::pow(pi / p, 1.5);
            double s[3], t[3];
            for (int d = 0; d < 3; ++d) {
                const int ia = fa.powers[d], jb = fb.powers[d];
                const double dist = fa.center[d] - fb.center[d];
                s[d] = detail::s1d(ia, jb, a, b, dist);
                // t_ij = -2 b^2 S_{i,j+2} + b(2j+1) S_{i,j} - j(j-1)/2 S_{i,j-2}
                double v = -2.0 * b * b * detail::s1d(ia, jb + 2, a, b, dist) +
                           b * (2 * jb + 1) * s[d];
                if (jb >= 2) v -= 0.5 * jb * (jb - 1) * detail::s1d(ia, jb - 2, a, b, dist);
                t[d] = v;
            }
            const double prim = t[0] * s[1] * s[2] + s[0] * t[1] * s[2] + s[0] * s[1] * t[2];
            t_total += fa.coefs[i] * fb.coefs[j] * pref * prim;
        }
    return t_total;
}

/// Contracted nuclear attraction <a| 1/|r - C| |b> (positive; caller applies
/// the -Z charge).
inline double nuclear(const BasisFunction& fa, const BasisFunction& fb,
                      const std::array<double, 3>& nucleus) {
    double v_total = 0.0;
    const int tmax = fa.l() + fb.l();
    for (std::size_t i = 0; i < fa.exps.size(); ++i)
        for (std::size_t j = 0; j < fb.exps.size(); ++j) {
            const double a = fa.exps[i], b = fb.exps[j];
            const double p = a + b;
            const auto P = detail::gaussian_product_center(a, fa.center, b, fb.center);
            const std::array<double, 3> pc = {P[0] - nucleus[0], P[1] - nucleus[1],
                                              P[2] - nucleus[2]};
            Hermite1D ex(fa.powers[0], fb.powers[0], a, b, fa.center[0] - fb.center[0]);
            Hermite1D ey(fa.powers[1], fb.powers[1], a, b, fa.center[1] - fb.center[1]);
            Hermite1D ez(fa.powers[2], fb.powers[2], a, b, fa.center[2] - fb.center[2]);
            HermiteCoulomb r(tmax, p, pc);
            double prim = 0.0;
            for (int t = 0; t <= fa.powers[0] + fb.powers[0]; ++t)
                for (int u = 0; u <= fa.powers[1] + fb.powers[1]; ++u)
                    for (int v = 0; v <= fa.powers[2] + fb.powers[2]; ++v)
                        prim += ex(fa.powers[0], fb.powers[0], t) *
                                ey(fa.powers[1], fb.powers[1], u) *
                                ez(fa.powers[2], fb.powers[2], v) * r(t, u, v);
            v_total += fa.coefs[i] * fb.coefs[j] * (2.0 * pi / p) * prim;
        }
    return v_total;
}

/// Contracted ERI (ab|cd) in chemist notation.
inline double eri(const BasisFunction& fa, const BasisFunction& fb, const BasisFunction& fc,
                  const BasisFunction& fd) {
    double total = 0.0;
    const int tmax = fa.l() + fb.l() + fc.l() + fd.l();
    for (std::size_t i = 0; i < fa.exps.size(); ++i)
        for (std::size_t j = 0; j < fb.exps.size(); ++j) {
            const double a = fa.exps[i], b = fb.exps[j];
            const double p = a + b;
            const auto P = detail::gaussian_product_center(a, fa.center, b, fb.center);
            Hermite1D e1x(fa.powers[0], fb.powers[0], a, b, fa.center[0] - fb.center[0]);
            Hermite1D e1y(fa.powers[1], fb.powers[1], a, b, fa.center[1] - fb.center[1]);
            Hermite1D e1z(fa.powers[2], fb.powers[2], a, b, fa.center[2] - fb.center[2]);
            for (std::size_t k = 0; k < fc.exps.size(); ++k)
                for (std::size_t l = 0; l < fd.exps.size(); ++l) {
                    const double c = fc.exps[k], d = fd.exps[l];
                    const double q = c + d;
                    const auto Q = detail::gaussian_product_center(c, fc.center, d, fd.center);
                    Hermite1D e2x(fc.powers[0], fd.powers[0], c, d, fc.center[0] - fd.center[0]);
                    Hermite1D e2y(fc.powers[1], fd.powers[1], c, d, fc.center[1] - fd.center[1]);
                    Hermite1D e2z(fc.powers[2], fd.powers[2], c, d, fc.center[2] - fd.center[2]);
                    const double alpha = p * q / (p + q);
                    const std::array<double, 3> pq = {P[0] - Q[0], P[1] - Q[1], P[2] - Q[2]};
                    HermiteCoulomb r(tmax, alpha, pq);
                    double prim = 0.0;
                    for (int t = 0; t <= fa.powers[0] + fb.powers[0]; ++t)
                        for (int u = 0; u <= fa.powers[1] + fb.powers[1]; ++u)
                            for (int v = 0; v <= fa.powers[2] + fb.powers[2]; ++v) {
                                const double e1 = e1x(fa.powers[0], fb.powers[0], t) *
                                                  e1y(fa.powers[1], fb.powers[1], u) *
                                                  e1z(fa.powers[2], fb.powers[2], v);
                                if (e1 == 0.0) continue;
                                for (int tt = 0; tt <= fc.powers[0] + fd.powers[0]; ++tt)
                                    for (int uu = 0; uu <= fc.powers[1] + fd.powers[1]; ++uu)
                                        for (int vv = 0; vv <= fc.powers[2] + fd.powers[2]; ++vv) {
                                            const double e2 =
                                                e2x(fc.powers[0], fd.powers[0], tt) *
                                                e2y(fc.powers[1], fd.powers[1], uu) *
                                                e2z(fc.powers[2], fd.powers[2], vv);
                                            if (e2 == 0.0) continue;
                                            const double sign =
                                                ((tt + uu + vv) & 1) ? -1.0 : 1.0;
                                            prim += e1 * e2 * sign * r(t + tt, u + uu, v + vv);
                                        }
                            }
                    const double pref = 2.0 * std::pow(pi, 2.5) / (p * q * std::sqrt(p + q));
                    total += fa.coefs[i] * fb.coefs[j] * fc.coefs[k] * fd.coefs[l] * pref * prim;
                }
        }
    return total;
}

} // namespace fixturegen
