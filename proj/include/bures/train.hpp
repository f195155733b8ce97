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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bures/purify.hpp"

namespace bures {

enum class GradMethod { CentralFd, Adjoint, Spsa };

std::string to_string(GradMethod method);
GradMethod grad_method_from_string(const std::string &name);

struct TrainConfig {
    double eta = 0.01;
    int epochs = 1000;
    int restarts = 10;
    GradMethod grad_method = GradMethod::Adjoint;
    double fd_step = 1e-4;
    std::uint64_t seed = 0;
    /// When set, cost values come from the sampled SWAP-test estimator.
    std::optional<std::int64_t> shots;
    /// Worker threads for independent restarts.
    int threads = 1;

    void validate() const;
};

/// Overlap objective between a variational plan and a fixed purification:
/// cost(theta) = 1 - sqrt(F(theta) + eps) with F = |<Psi|Phi(theta)>|^2.
class Objective {
public:
    Objective(const PurificationPlan &plan, StateVector psi_fixed);

    const PurificationPlan &plan() const { return *plan_; }
    const StateVector &psi_fixed() const { return psi_; }

    double fidelity(std::span<const double> theta) const;
    double cost(std::span<const double> theta) const;

    /// Exact cost plus its analytic gradient from one forward and one reverse sweep.
    double cost_and_adjoint_gradient(std::span<const double> theta,
                                     std::span<double> grad) const;

    std::vector<double> central_fd_gradient(std::span<const double> theta, double h) const;

    /// (C(theta + c d) - C(theta - c d)) / (2 c d_i) with Rademacher d.
    std::vector<double> spsa_gradient(std::span<const double> theta, double c,
                                      std::mt19937_64 &rng) const;

private:
    const PurificationPlan *plan_;
    StateVector psi_;
};

/// Gradient of the guarded cost by the selected method. `rng` is only used by SPSA.
std::vector<double> gradient(const PurificationPlan &plan, const StateVector &psi_fixed,
                             std::span<const double> theta, GradMethod method,
                             double fd_step = 1e-4, std::mt19937_64 *rng = nullptr);

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
};

/// Adam with beta1 = 0.9, beta2 = 0.999, eps = 1e-8 and bias correction.
std::pair<std::vector<double>, AdamState> adam_step(std::span<const double> theta,
                                                    std::span<const double> grad,
                                                    AdamState state, double eta, int t);

struct RestartResult {
    std::vector<double> cost_trace;
    std::vector<double> final_params;
    double final_cost = 0.0;
    bool failed = false;
    std::string failure;
};

struct RestartStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct TrainReport {
    /// R/2 before each epoch's update, best restart.
    std::vector<double> cost_trace;
    std::vector<double> best_params;
    double best_cost = 0.0;
    RestartStats restart_stats;
    int failed_restarts = 0;
    double wall_time = 0.0;
    std::vector<RestartResult> restarts;
};

/// Runs one restart from uniform [0, 2pi) parameters seeded by (seed, index).
RestartResult run_restart(const Objective &objective, const TrainConfig &cfg, int index);

TrainReport train_plan(const PurificationPlan &plan, const DensityMatrix &rho,
                       const TrainConfig &cfg);

TrainReport train_resource(const DensityMatrix &rho, const ResourceSpec &spec,
                           const AnsatzConfig &ansatz, const TrainConfig &cfg);

}  // namespace bures
