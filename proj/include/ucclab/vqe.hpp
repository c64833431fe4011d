// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/ansatz.hpp"
#include "ucclab/bfgs.hpp"
#include "ucclab/pool.hpp"
#include "ucclab/rng.hpp"
#include "ucclab/statevector.hpp"
#include "ucclab/thread_pool.hpp"

namespace ucclab {

struct VqeOptions {
    BfgsOptions bfgs;
    double fd_step = 1e-5;      // central-difference step for untrotterized forms
    double exp_sum_tol = 1e-12; // L2 tolerance of the summed exponential
    int fd_threads = 1;         // worker threads for the finite-difference loop;
                                // leave 1 when the caller already parallelizes
};

struct VqeResult {
    double energy = 0.0; // Hartree
    std::vector<double> parameters;
    int iterations = 0;
    double final_gradient_norm = 0.0;
    bool converged = false;
    double wall_time_s = 0.0;
    std::string message;
};

/// A program bound to its pool with per-generator exponential groups
/// precomputed, so repeated energy/gradient evaluations allocate nothing
/// per factor.
class CompiledAnsatz {
  public:
    CompiledAnsatz(const GeneratorPool& pool, const AnsatzProgram& program,
                   double exp_sum_tol = 1e-12)
        : pool_(&pool), program_(&program), exp_sum_tol_(exp_sum_tol) {
        groups_.resize(pool.size());
        for (const auto& slot : program.slots) {
            auto& g = groups_[static_cast<std::size_t>(slot.generator_id)];
            if (g.empty()) g = detail::exp_groups(pool.at(slot.generator_id).pauli);
        }
    }

    const AnsatzProgram& program() const { return *program_; }
    const GeneratorPool& pool() const { return *pool_; }

    Statevector apply(const std::vector<double>& theta, const Statevector& reference) const {
        if (theta.size() != program_->parameter_count())
            throw std::invalid_argument("CompiledAnsatz::apply: parameter count mismatch");
        if (program_->form == AnsatzForm::untrotterized)
            return apply_program(*pool_, *program_, theta, reference, exp_sum_tol_);
        Statevector psi = reference;
        const double inv_n = 1.0 / program_->trotter_n;
        for (int rep = 0; rep < program_->trotter_n; ++rep)
            for (const auto& slot : program_->slots)
                apply_slot(slot, theta[slot.parameter_index] * inv_n, psi);
        return psi;
    }

    double energy(const std::vector<double>& theta, const PauliSum& hamiltonian,
                  const Statevector& reference) const {
        const Statevector psi = apply(theta, reference);
        return expectation(hamiltonian, psi);
    }

    /// Exact analytic dE/dtheta by the two-state reverse sweep: after the
    /// forward pass, lambda = H|psi> and phi = |psi> walk backwards through
    /// the factors; at factor f the contribution is 2 Re<lambda|G_f|phi>,
    /// with a 1/n chain-rule factor per Trotter repeat.
    std::vector<double> gradient(const std::vector<double>& theta, const PauliSum& hamiltonian,
                                 const Statevector& reference) const {
        if (program_->form != AnsatzForm::trotterized)
            throw std::logic_error("gradient: untrotterized form has no reverse sweep; use gradient_fd");
        if (theta.size() != program_->parameter_count())
            throw std::invalid_argument("gradient: parameter count mismatch");

        const double inv_n = 1.0 / program_->trotter_n;
        Statevector phi = apply(theta, reference);
        Statevector lambda = apply_hamiltonian(hamiltonian, phi);

        std::vector<double> grad(theta.size(), 0.0);
        for (int rep = program_->trotter_n - 1; rep >= 0; --rep) {
            for (auto it = program_->slots.rbegin(); it != program_->slots.rend(); ++it) {
                const auto& slot = *it;
                const Generator& gen = pool_->at(slot.generator_id);
                grad[slot.parameter_index] +=
                    2.0 * inv_n * matrix_element(gen.pauli, lambda, phi).real();
                const double angle = -theta[slot.parameter_index] * inv_n;
                apply_slot(slot, angle, phi);
                apply_slot(slot, angle, lambda);
            }
        }
        return grad;
    }

    /// Central finite differences (E(theta+h e_k) - E(theta-h e_k)) / 2h.
    /// Components are independent and can run on a worker pool.
    std::vector<double> gradient_fd(const std::vector<double>& theta, const PauliSum& hamiltonian,
                                    const Statevector& reference, double h = 1e-5,
                                    int threads = 1) const {
        if (h <= 0.0) throw std::invalid_argument("gradient_fd: step must be positive");
        std::vector<double> grad(theta.size(), 0.0);
        parallel_for(theta.size(), threads, [&](std::size_t k) {
            std::vector<double> probe = theta;
            probe[k] = theta[k] + h;
            const double ep = energy(probe, hamiltonian, reference);
            probe[k] = theta[k] - h;
            const double em = energy(probe, hamiltonian, reference);
            grad[k] = (ep - em) / (2.0 * h);
        });
        return grad;
    }

  private:
    void apply_slot(const AnsatzProgram::Slot& slot, double angle, Statevector& psi) const {
        if (angle == 0.0) return;
        for (const auto& grp : groups_[static_cast<std::size_t>(slot.generator_id)])
            detail::apply_exp_group(grp, angle, psi);
    }

    const GeneratorPool* pool_;
    const AnsatzProgram* program_;
    double exp_sum_tol_;
    std::vector<std::vector<detail::ExpGroup>> groups_;
};

inline double vqe_energy(const GeneratorPool& pool, const AnsatzProgram& program,
                         const std::vector<double>& theta, const PauliSum& hamiltonian,
                         const Statevector& reference, double exp_sum_tol = 1e-12) {
    return CompiledAnsatz(pool, program, exp_sum_tol).energy(theta, hamiltonian, reference);
}

inline std::vector<double> vqe_gradient(const GeneratorPool& pool, const AnsatzProgram& program,
                                        const std::vector<double>& theta, const PauliSum& hamiltonian,
                                        const Statevector& reference) {
    return CompiledAnsatz(pool, program).gradient(theta, hamiltonian, reference);
}

inline std::vector<double> vqe_gradient_fd(const GeneratorPool& pool, const AnsatzProgram& program,
                                           const std::vector<double>& theta,
                                           const PauliSum& hamiltonian, const Statevector& reference,
                                           double h = 1e-5) {
    return CompiledAnsatz(pool, program).gradient_fd(theta, hamiltonian, reference, h);
}

/// BFGS minimization of the program energy. Trotterized programs use the
/// analytic reverse-sweep gradient; untrotterized ones fall back to central
/// differences.
inline VqeResult minimize_vqe(const GeneratorPool& pool, const AnsatzProgram& program,
                              const std::vector<double>& theta0, const PauliSum& hamiltonian,
                              const Statevector& reference, const VqeOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    CompiledAnsatz compiled(pool, program, opts.exp_sum_tol);

    ScalarFn f = [&](const std::vector<double>& th) {
        return compiled.energy(th, hamiltonian, reference);
    };
    GradientFn g;
    if (program.form == AnsatzForm::trotterized)
        g = [&](const std::vector<double>& th) { return compiled.gradient(th, hamiltonian, reference); };
    else
        g = [&](const std::vector<double>& th) {
            return compiled.gradient_fd(th, hamiltonian, reference, opts.fd_step, opts.fd_threads);
        };

    const BfgsResult b = minimize_bfgs(f, g, theta0, opts.bfgs);

    VqeResult res;
    res.energy = b.f;
    res.parameters = b.x;
    res.iterations = b.iterations;
    res.final_gradient_norm = b.gradient_norm;
    res.converged = b.converged;
    res.message = b.message;
    res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// Componentwise initial-parameter distribution for restarted optimizations.
struct InitSpec {
    enum class Kind { zeros, uniform } kind = Kind::zeros;
    double low = -0.5;
    double high = 0.5;

    std::vector<double> draw(std::size_t count, std::uint64_t stream_seed) const {
        std::vector<double> theta(count, 0.0);
        if (kind == Kind::uniform) {
            SplitMix64 rng(stream_seed);
            for (double& t : theta) t = rng.uniform(low, high);
        }
        return theta;
    }
};

struct RestartOutcome {
    VqeResult best;
    std::vector<VqeResult> all;
};

/// m independent minimizations; restart r draws theta0 from the init
/// distribution on substream (seed, r) and the lowest energy wins.
inline RestartOutcome optimize_with_restarts(const GeneratorPool& pool, const AnsatzProgram& program,
                                             int m, const InitSpec& init, std::uint64_t seed,
                                             const PauliSum& hamiltonian, const Statevector& reference,
                                             const VqeOptions& opts = {}) {
    if (m < 1) throw std::invalid_argument("optimize_with_restarts: m must be >= 1");
    RestartOutcome out;
    for (int r = 0; r < m; ++r) {
        std::vector<double> theta0 =
            init.draw(program.parameter_count(), substream_seed(seed, static_cast<std::uint64_t>(r)));
        VqeResult res = minimize_vqe(pool, program, theta0, hamiltonian, reference, opts);
        out.all.push_back(res);
        if (r == 0 || res.energy < out.best.energy) out.best = std::move(res);
    }
    return out;
}

struct SgoStep {
    int step = 0;
    int chosen_id = -1;
    double score = 0.0;  // |<psi|[H,G]|psi>| at selection time
    double energy = 0.0; // optimized energy after the addition
    int iterations = 0;
};

struct SgoOutcome {
    AnsatzProgram program;
    std::vector<double> parameters;
    VqeResult final_result;
    std::vector<SgoStep> trace;
};

struct SgoOptions {
    VqeOptions vqe;
    /// Re-optimize every parameter after each addition (the ADAPT-style
    /// prescription). When false only the newly added parameter is
    /// optimized, as a cheap ablation.
    bool reoptimize_all = true;
};

/// Sequential gradient ordering: repeatedly append the pool generator with
/// the largest |<psi|[H,G]|psi>| at the current optimized state, each
/// generator used at most once, ties broken by lowest id.
inline SgoOutcome sgo_ordering(const GeneratorPool& pool, const PauliSum& hamiltonian,
                               const Statevector& reference, const SgoOptions& opts = {}) {
    if (pool.size() == 0) throw std::invalid_argument("sgo_ordering: empty pool");
    if (pool.kind == PoolKind::kupccgsd && pool.k > 1)
        throw std::invalid_argument(
            "sgo_ordering: ambiguous for k-UpCCGSD with k > 1 (identical operators across blocks)");

    SgoOutcome out;
    out.program.form = AnsatzForm::trotterized;
    out.program.trotter_n = 1;
    out.program.pool_hash = pool.hash();
    out.program.strategy = OrderingStrategy{OrderingKind::sgo, 0};

    std::vector<bool> used(pool.size(), false);
    std::vector<double> theta;

    for (std::size_t step = 0; step < pool.size(); ++step) {
        // current state and H|psi>
        Statevector psi = theta.empty()
                              ? reference
                              : CompiledAnsatz(pool, out.program, opts.vqe.exp_sum_tol).apply(theta, reference);
        Statevector lambda = apply_hamiltonian(hamiltonian, psi);

        int best_id = -1;
        double best_score = -1.0;
        for (std::size_t id = 0; id < pool.size(); ++id) {
            if (used[id]) continue;
            const double score = std::abs(2.0 * matrix_element(pool.at(static_cast<int>(id)).pauli,
                                                               lambda, psi)
                                                    .real());
            if (score > best_score) {
                best_score = score;
                best_id = static_cast<int>(id);
            }
        }
        used[static_cast<std::size_t>(best_id)] = true;

        AnsatzProgram::Slot slot;
        slot.generator_id = best_id;
        slot.parameter_index = static_cast<int>(out.program.slots.size());
        slot.block_id = pool.block_of[static_cast<std::size_t>(best_id)];
        out.program.slots.push_back(slot);
        theta.push_back(0.0);

        VqeResult res;
        if (opts.reoptimize_all) {
            res = minimize_vqe(pool, out.program, theta, hamiltonian, reference, opts.vqe);
            theta = res.parameters;
        } else {
            // 1-D optimization of the new parameter, earlier ones frozen
            CompiledAnsatz compiled(pool, out.program, opts.vqe.exp_sum_tol);
            const std::size_t last = theta.size() - 1;
            ScalarFn f1 = [&](const std::vector<double>& t) {
                std::vector<double> full = theta;
                full[last] = t[0];
                return compiled.energy(full, hamiltonian, reference);
            };
            GradientFn g1 = [&](const std::vector<double>& t) {
                std::vector<double> full = theta;
                full[last] = t[0];
                return std::vector<double>{compiled.gradient(full, hamiltonian, reference)[last]};
            };
            const BfgsResult b = minimize_bfgs(f1, g1, {0.0}, opts.vqe.bfgs);
            theta[last] = b.x[0];
            res.energy = b.f;
            res.parameters = theta;
            res.iterations = b.iterations;
            res.final_gradient_norm = b.gradient_norm;
            res.converged = b.converged;
            res.message = b.message;
        }

        out.trace.push_back(SgoStep{static_cast<int>(step), best_id, best_score, res.energy,
                                    res.iterations});
        out.final_result = res;
    }
    out.parameters = theta;
    return out;
}

} // namespace ucclab
