// Copyright 2026 The Bures-VQA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bures/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "bures/objective.hpp"

namespace bures {

std::string to_string(GradMethod method) {
    switch (method) {
    case GradMethod::CentralFd:
        return "central-fd";
    case GradMethod::Adjoint:
        return "adjoint";
    case GradMethod::Spsa:
        return "spsa";
    }
    return "unknown";
}

GradMethod grad_method_from_string(const std::string &name) {
    for (auto m : {GradMethod::CentralFd, GradMethod::Adjoint, GradMethod::Spsa}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw Error("unknown gradient method '" + name + "'");
}

void TrainConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error("learning rate must be positive");
    }
    if (epochs < 1 || restarts < 1) {
        throw Error("epochs and restarts must be at least 1");
    }
    if (grad_method != GradMethod::Adjoint && !(fd_step > 0.0)) {
        throw Error("fd_step must be positive");
    }
    if (shots && *shots < 1) {
        throw Error("shots must be at least 1");
    }
    if (threads < 1) {
        throw Error("threads must be at least 1");
    }
}

Objective::Objective(const PurificationPlan &plan, StateVector psi_fixed)
    : plan_(&plan), psi_(std::move(psi_fixed)) {
    if (psi_.num_qubits() != plan.total_qubits) {
        throw Error("fixed purification width " + std::to_string(psi_.num_qubits()) +
                    " does not match plan width " + std::to_string(plan.total_qubits));
    }
}

double Objective::fidelity(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != plan_->num_params()) {
        throw Error("objective: parameter count mismatch");
    }
    CVector phi = StateVector(plan_->total_qubits).amplitudes();
    for (const auto &op : plan_->circuit.ops()) {
        apply_in_place(phi, bind_op(op, theta));
    }
    return std::norm(psi_.amplitudes().dot(phi));
}

double Objective::cost(std::span<const double> theta) const {
    return 1.0 - std::sqrt(fidelity(theta) + kSqrtGuard);
}

double Objective::cost_and_adjoint_gradient(std::span<const double> theta,
                                            std::span<double> grad) const {
    const auto &ops = plan_->circuit.ops();
    if (static_cast<int>(theta.size()) != plan_->num_params() || grad.size() != theta.size()) {
        throw Error("adjoint gradient: parameter count mismatch");
    }
    std::vector<CircuitOp> bound;
    bound.reserve(ops.size());
    CVector phi = StateVector(plan_->total_qubits).amplitudes();
    for (const auto &op : ops) {
        bound.push_back(bind_op(op, theta));
        apply_in_place(phi, bound.back());
    }
    const Complex overlap = psi_.amplitudes().dot(phi);
    const double f = std::norm(overlap);
    const double root = std::sqrt(f + kSqrtGuard);

    // Reverse sweep: phi walks back to the input of op i, lambda holds
    // (U_L ... U_{i+1})^+ |Psi>.
    std::vector<Complex> d_overlap(theta.size(), 0.0);
    CVector lambda = psi_.amplitudes();
    for (std::size_t i = ops.size(); i-- > 0;) {
        apply_in_place(phi, bound[i], true);
        if (ops[i].has_params()) {
            const auto ms = local_transition_matrices(phi, lambda, bound[i]);
            for (std::size_t j = 0; j < ops[i].blocks.size(); ++j) {
                if (!ops[i].blocks[j].slots.empty()) {
                    ops[i].blocks[j].accumulate_contractions(theta, ms[j], d_overlap);
                }
            }
        }
        apply_in_place(lambda, bound[i], true);
    }
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double df = 2.0 * (std::conj(overlap) * d_overlap[k]).real();
        grad[k] = -df / (2.0 * root);
    }
    return 1.0 - root;
}

std::vector<double> Objective::central_fd_gradient(std::span<const double> theta,
                                                   double h) const {
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        // C(up) - C(down) = root(down) - root(up); differencing the roots
        // skips the rounding of 1 - root near C = 1.
        shifted[i] = theta[i] + h;
        const double up = std::sqrt(fidelity(shifted) + kSqrtGuard);
        shifted[i] = theta[i] - h;
        const double down = std::sqrt(fidelity(shifted) + kSqrtGuard);
        shifted[i] = theta[i];
        grad[i] = (down - up) / (2.0 * h);
    }
    return grad;
}

std::vector<double> Objective::spsa_gradient(std::span<const double> theta, double c,
                                             std::mt19937_64 &rng) const {
    std::bernoulli_distribution coin(0.5);
    std::vector<double> delta(theta.size());
    for (auto &d : delta) {
        d = coin(rng) ? 1.0 : -1.0;
    }
    std::vector<double> plus(theta.begin(), theta.end()), minus(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        plus[i] += c * delta[i];
        minus[i] -= c * delta[i];
    }
    const double diff = cost(plus) - cost(minus);
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        grad[i] = diff / (2.0 * c * delta[i]);
    }
    return grad;
}

std::vector<double> gradient(const PurificationPlan &plan, const StateVector &psi_fixed,
                             std::span<const double> theta, GradMethod method, double fd_step,
                             std::mt19937_64 *rng) {
    const Objective objective(plan, psi_fixed);
    std::vector<double> grad(theta.size());
    switch (method) {
    case GradMethod::Adjoint:
        objective.cost_and_adjoint_gradient(theta, grad);
        break;
    case GradMethod::CentralFd:
        grad = objective.central_fd_gradient(theta, fd_step);
        break;
    case GradMethod::Spsa:
        if (rng == nullptr) {
            throw Error("SPSA gradient needs a random generator");
        }
        grad = objective.spsa_gradient(theta, fd_step, *rng);
        break;
    }
    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw Error("non-finite gradient component");
        }
    }
    return grad;
}

std::pair<std::vector<double>, AdamState> adam_step(std::span<const double> theta,
                                                    std::span<const double> grad,
                                                    AdamState state, double eta, int t) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    if (t < 1) {
        throw Error("Adam step counter starts at 1");
    }
    if (grad.size() != theta.size()) {
        throw Error("Adam: gradient and parameter sizes differ");
    }
    if (state.m.empty()) {
        state.m.assign(theta.size(), 0.0);
        state.v.assign(theta.size(), 0.0);
    }
    if (state.m.size() != theta.size() || state.v.size() != theta.size()) {
        throw Error("Adam: state size does not match parameters");
    }
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    std::vector<double> out(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw Error("Adam: non-finite gradient");
        }
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        out[i] -= eta * m_hat / (std::sqrt(v_hat) + eps);
    }
    return {std::move(out), std::move(state)};
}

namespace {

// R/2 as plotted, from either the exact fidelity or a sampled estimate.
double reported_cost(double f, const TrainConfig &cfg, std::mt19937_64 &rng) {
    if (cfg.shots) {
        f = sample_swap_outcomes(f, *cfg.shots, rng()).value;
    }
    return 0.5 * bures_cost({f, FidelityMode::Exact, std::nullopt, std::nullopt});
}

}  // namespace

RestartResult run_restart(const Objective &objective, const TrainConfig &cfg, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffU),
                      static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> init(0.0, 2.0 * kPi);
    const auto n = static_cast<std::size_t>(objective.plan().num_params());
    std::vector<double> theta(n);
    for (auto &t : theta) {
        t = init(rng);
    }

    RestartResult result;
    result.cost_trace.reserve(static_cast<std::size_t>(cfg.epochs));
    AdamState adam;
    std::vector<double> grad(n);
    try {
        for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
            double f = 0.0;
            if (cfg.grad_method == GradMethod::Adjoint) {
                const double c = objective.cost_and_adjoint_gradient(theta, grad);
                f = std::pow(1.0 - c, 2) - kSqrtGuard;
            } else {
                f = objective.fidelity(theta);
                grad = gradient(objective.plan(), objective.psi_fixed(), theta, cfg.grad_method,
                                cfg.fd_step, &rng);
            }
            if (!std::isfinite(f)) {
                throw Error("non-finite cost at epoch " + std::to_string(epoch));
            }
            result.cost_trace.push_back(reported_cost(f, cfg, rng));
            auto [next, state] = adam_step(theta, grad, std::move(adam), cfg.eta, epoch);
            theta = std::move(next);
            adam = std::move(state);
        }
        const double f = objective.fidelity(theta);
        if (!std::isfinite(f)) {
            throw Error("non-finite final cost");
        }
        result.final_cost = reported_cost(f, cfg, rng);
    } catch (const Error &e) {
        result.failed = true;
        result.failure = e.what();
        result.final_cost = std::numeric_limits<double>::quiet_NaN();
    }
    result.final_params = std::move(theta);
    return result;
}

TrainReport train_plan(const PurificationPlan &plan, const DensityMatrix &rho,
                       const TrainConfig &cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const Objective objective(plan, fixed_purification_for(plan, rho));

    TrainReport report;
    report.restarts.resize(static_cast<std::size_t>(cfg.restarts));
    const int workers = std::min(cfg.threads, cfg.restarts);
    if (workers <= 1) {
        for (int r = 0; r < cfg.restarts; ++r) {
            report.restarts[static_cast<std::size_t>(r)] = run_restart(objective, cfg, r);
        }
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int r = w; r < cfg.restarts; r += workers) {
                    report.restarts[static_cast<std::size_t>(r)] = run_restart(objective, cfg, r);
                }
            });
        }
    }

    double sum = 0.0;
    int ok = 0;
    int best = -1;
    report.restart_stats.min = std::numeric_limits<double>::infinity();
    report.restart_stats.max = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        const auto &res = report.restarts[static_cast<std::size_t>(r)];
        if (res.failed) {
            ++report.failed_restarts;
            continue;
        }
        ++ok;
        sum += res.final_cost;
        report.restart_stats.max = std::max(report.restart_stats.max, res.final_cost);
        if (res.final_cost < report.restart_stats.min) {
            report.restart_stats.min = res.final_cost;
            best = r;
        }
    }
    if (best < 0) {
        throw Error("every restart failed: " + report.restarts.front().failure);
    }
    report.restart_stats.mean = sum / ok;
    const auto &winner = report.restarts[static_cast<std::size_t>(best)];
    report.best_cost = winner.final_cost;
    report.best_params = winner.final_params;
    report.cost_trace = winner.cost_trace;
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

TrainReport train_resource(const DensityMatrix &rho, const ResourceSpec &spec,
                           const AnsatzConfig &ansatz, const TrainConfig &cfg) {
    if (rho.num_qubits() != spec.system_qubits()) {
        throw Error("density matrix has " + std::to_string(rho.num_qubits()) +
                    " qubits but the partition covers " + std::to_string(spec.system_qubits()));
    }
    const auto plan = build_plan(spec, ansatz);
    return train_plan(plan, rho, cfg);
}

}  // namespace bures
