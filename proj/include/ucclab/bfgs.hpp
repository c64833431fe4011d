// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ucclab {

struct BfgsOptions {
    double gtol = 1e-8;       // infinity-norm gradient stopping threshold
    int max_iterations = 10000;
    double wolfe_c1 = 1e-4;   // sufficient-decrease constant
    double wolfe_c2 = 0.9;    // curvature constant
    int max_line_search = 40;
};

struct BfgsResult {
    std::vector<double> x;
    double f = 0.0;
    std::vector<double> gradient;
    double gradient_norm = 0.0; // infinity norm
    int iterations = 0;
    int function_evaluations = 0;
    int gradient_evaluations = 0;
    bool converged = false;
    std::string message;
};

using ScalarFn = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Cubic minimizer from f(a), f'(a), f(b), f(c); NaN when degenerate.
inline double cubic_min(double a, double fa, double dfa, double b, double fb, double c, double fc) {
    const double db = b - a, dc = c - a;
    const double denom = db * db * dc * dc * (db - dc);
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double r1 = fb - fa - dfa * db;
    const double r2 = fc - fa - dfa * dc;
    const double A = (dc * dc * r1 - db * db * r2) / denom;
    const double B = (-dc * dc * dc * r1 + db * db * db * r2) / denom;
    const double disc = B * B - 3.0 * A * dfa;
    if (disc < 0.0 || A == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return a + (-B + std::sqrt(disc)) / (3.0 * A);
}

/// Quadratic minimizer from f(a), f'(a), f(b); exact for quadratics, NaN
/// when degenerate.
inline double quad_min(double a, double fa, double dfa, double b, double fb) {
    const double db = b - a;
    const double denom = fb - fa - dfa * db;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return a - 0.5 * dfa * db * db / denom;
}

} // namespace detail

struct LineSearchResult {
    double alpha = 0.0;         // 0 signals failure
    double f = 0.0;             // phi(alpha)
    std::vector<double> grad;   // gradient at the accepted point
};

/// Strong-Wolfe line search (bracket + zoom with safeguarded cubic
/// interpolation); phi(alpha) = f(x + alpha p). The accepted point's value
/// and gradient are returned so the caller never re-evaluates them.
inline LineSearchResult wolfe_line_search(const ScalarFn& f, const GradientFn& grad,
                                          const std::vector<double>& x, const std::vector<double>& p,
                                          double f0, const std::vector<double>& g0,
                                          const BfgsOptions& opts, int& fevals, int& gevals,
                                          double alpha0 = 1.0) {
    const std::size_t n = x.size();
    const double dphi0 = detail::dot(g0, p);
    LineSearchResult out;
    if (dphi0 >= 0.0) return out; // not a descent direction

    std::vector<double> xt(n), g_last(n);
    auto phi = [&](double alpha) {
        for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + alpha * p[i];
        ++fevals;
        return f(xt);
    };
    auto dphi = [&](double alpha) {
        for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + alpha * p[i];
        ++gevals;
        g_last = grad(xt);
        return detail::dot(g_last, p);
    };
    auto accept = [&](double alpha, double fa) {
        out.alpha = alpha;
        out.f = fa;
        out.grad = g_last;
        return out;
    };

    const double c1 = opts.wolfe_c1, c2 = opts.wolfe_c2;
    const double alpha_max = 1e10;

    // Approximate-Wolfe acceptance for the noise regime (Hager-Zhang):
    // when the expected sufficient decrease is smaller than the floating
    // point resolution of f, function comparisons are meaningless and the
    // step is judged by derivatives instead. Gradients stay precise there.
    const double f_noise = 1e-12 * (1.0 + std::abs(f0));
    auto noise_regime = [&](double alpha) { return std::abs(alpha * dphi0) <= f_noise; };
    auto approx_wolfe = [&](double alpha, double fa, double da) {
        return noise_regime(alpha) && fa <= f0 + f_noise && da >= c2 * dphi0 &&
               da <= (2.0 * c1 - 1.0) * dphi0;
    };
    // try derivative-based acceptance before any function-value branching
    auto try_noise_accept = [&](double alpha, double fa, bool& accepted) -> double {
        accepted = false;
        if (!noise_regime(alpha) || fa > f0 + f_noise) return 0.0;
        const double da = dphi(alpha);
        if (std::abs(da) <= -c2 * dphi0 || approx_wolfe(alpha, fa, da)) accepted = true;
        return da;
    };

    auto zoom = [&](double lo, double f_lo, double dphi_lo, double hi, double f_hi) {
        double last_alpha = lo, last_f = f_lo;
        for (int it = 0; it < opts.max_line_search; ++it) {
            // safeguarded interpolation: cubic, then quadratic, then bisection
            const double width = std::abs(hi - lo);
            const double lo_edge = std::min(lo, hi), hi_edge = std::max(lo, hi);
            double alpha = detail::cubic_min(lo, f_lo, dphi_lo, hi, f_hi, last_alpha, last_f);
            if (!(alpha == alpha) || alpha <= lo_edge + 0.2 * width || alpha >= hi_edge - 0.2 * width) {
                alpha = detail::quad_min(lo, f_lo, dphi_lo, hi, f_hi);
                if (!(alpha == alpha) || alpha <= lo_edge + 0.1 * width || alpha >= hi_edge - 0.1 * width)
                    alpha = 0.5 * (lo + hi);
            }
            const double fa = phi(alpha);
            bool accepted = false;
            if (noise_regime(alpha)) {
                try_noise_accept(alpha, fa, accepted);
                if (accepted) return accept(alpha, fa);
            }
            if (fa > f0 + c1 * alpha * dphi0 || fa >= f_lo) {
                last_alpha = hi;
                last_f = f_hi;
                hi = alpha;
                f_hi = fa;
            } else {
                const double da = dphi(alpha);
                if (std::abs(da) <= -c2 * dphi0) return accept(alpha, fa);
                if (approx_wolfe(alpha, fa, da)) return accept(alpha, fa);
                if (da * (hi - lo) >= 0.0) {
                    last_alpha = hi;
                    last_f = f_hi;
                    hi = lo;
                    f_hi = f_lo;
                } else {
                    last_alpha = lo;
                    last_f = f_lo;
                }
                lo = alpha;
                f_lo = fa;
                dphi_lo = da;
            }
            // interval exhausted by floating-point noise: take the best
            // point when it still strictly decreases, else report failure
            if (std::abs(hi - lo) < 1e-12 * (1.0 + std::abs(lo))) {
                if (lo > 0.0 && f_lo < f0 - 1e-16 * (1.0 + std::abs(f0))) {
                    const double da = dphi(lo);
                    (void)da;
                    return accept(lo, f_lo);
                }
                break;
            }
        }
        return out;
    };

    double alpha_prev = 0.0, f_prev = f0, dphi_prev = dphi0;
    double alpha = alpha0;
    for (int it = 0; it < opts.max_line_search; ++it) {
        const double fa = phi(alpha);
        if (noise_regime(alpha)) {
            bool accepted = false;
            const double da = try_noise_accept(alpha, fa, accepted);
            if (accepted) return accept(alpha, fa);
            if (fa <= f0 + f_noise && da < 0.0) {
                // derivative still descends: extend the bracket
                alpha_prev = alpha;
                f_prev = fa;
                dphi_prev = da;
                alpha = std::min(2.0 * alpha, alpha_max);
                continue;
            }
        }
        if (fa > f0 + c1 * alpha * dphi0 || (fa >= f_prev && it > 0))
            return zoom(alpha_prev, f_prev, dphi_prev, alpha, fa);
        const double da = dphi(alpha);
        if (std::abs(da) <= -c2 * dphi0) return accept(alpha, fa);
        if (approx_wolfe(alpha, fa, da)) return accept(alpha, fa);
        if (da >= 0.0) return zoom(alpha, fa, da, alpha_prev, f_prev);
        alpha_prev = alpha;
        f_prev = fa;
        dphi_prev = da;
        alpha = std::min(2.0 * alpha, alpha_max);
    }
    return out;
}

/// Quasi-Newton BFGS with inverse-Hessian update and a strong-Wolfe line
/// search. Terminates when the gradient infinity norm drops below gtol.
/// Accepted energies are monotone non-increasing. A failed line search
/// returns the best point so far with converged = false and a diagnostic.
inline BfgsResult minimize_bfgs(const ScalarFn& f, const GradientFn& grad,
                                std::vector<double> x0, const BfgsOptions& opts = {}) {
    const std::size_t n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);
    res.f = f(res.x);
    res.gradient = grad(res.x);
    res.function_evaluations = 1;
    res.gradient_evaluations = 1;

    if (n == 0) {
        res.converged = true;
        res.message = "nothing to optimize";
        return res;
    }

    // inverse Hessian estimate, row-major
    std::vector<double> H(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    auto reset_h = [&] {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) H[i * n + j] = (i == j) ? 1.0 : 0.0;
    };

    std::vector<double> p(n), s(n), y(n), Hy(n), g_new(n);
    bool retried_after_failure = false;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter;
        res.gradient_norm = detail::inf_norm(res.gradient);
        if (res.gradient_norm < opts.gtol) {
            res.converged = true;
            res.message = "gradient below gtol";
            return res;
        }

        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * res.gradient[j];
            p[i] = -acc;
        }
        if (detail::dot(p, res.gradient) >= 0.0) {
            // reset to steepest descent if H lost positive definiteness
            reset_h();
            for (std::size_t i = 0; i < n; ++i) p[i] = -res.gradient[i];
        }

        LineSearchResult ls = wolfe_line_search(f, grad, res.x, p, res.f, res.gradient, opts,
                                                res.function_evaluations,
                                                res.gradient_evaluations);
        if (ls.alpha == 0.0 && !retried_after_failure) {
            // one steepest-descent retry: a stale inverse Hessian is the
            // usual culprit this far from precision exhaustion
            retried_after_failure = true;
            reset_h();
            for (std::size_t i = 0; i < n; ++i) p[i] = -res.gradient[i];
            ls = wolfe_line_search(f, grad, res.x, p, res.f, res.gradient, opts,
                                   res.function_evaluations, res.gradient_evaluations);
        }
        if (ls.alpha == 0.0) {
            res.message = "line search failed to satisfy the strong Wolfe conditions";
            return res; // converged stays false; best-so-far point retained
        }

        for (std::size_t i = 0; i < n; ++i) {
            s[i] = ls.alpha * p[i];
            res.x[i] += s[i];
        }
        g_new = ls.grad;
        for (std::size_t i = 0; i < n; ++i) y[i] = g_new[i] - res.gradient[i];
        res.f = ls.f;
        res.gradient = g_new;

        const double sy = detail::dot(s, y);
        if (sy > 1e-14) {
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * y[j];
                Hy[i] = acc;
            }
            const double yHy = detail::dot(y, Hy);
            // H <- (I - rho s y')H(I - rho y s') + rho s s'
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i * n + j] += -rho * (s[i] * Hy[j] + Hy[i] * s[j]) +
                                    rho * (1.0 + rho * yHy) * s[i] * s[j];
        }
    }
    res.gradient_norm = detail::inf_norm(res.gradient);
    res.message = "maximum iterations reached";
    return res;
}

} // namespace ucclab
