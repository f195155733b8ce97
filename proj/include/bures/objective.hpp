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

#include "bures/simulator.hpp"

namespace bures {

enum class FidelityMode { Exact, Shots, SwapCircuit };

struct FidelityEstimate {
    double value = 0.0;
    FidelityMode mode = FidelityMode::Exact;
    std::optional<std::int64_t> shots;
    std::optional<double> std_error;
};

/// |<psi|phi>|^2.
FidelityEstimate overlap_fidelity(const StateVector &psi, const StateVector &phi);

/// Samples `shots` ancilla outcomes of the SWAP test with P0 = (1 + F)/2 and
/// returns 2 P0_hat - 1 (unclamped) with its propagated standard error.
FidelityEstimate swap_test_sample(const StateVector &psi, const StateVector &phi,
                                  std::int64_t shots, std::uint64_t rng_seed);

/// Same estimator from a known exact fidelity, for callers that already hold it.
FidelityEstimate sample_swap_outcomes(double exact_fidelity, std::int64_t shots,
                                      std::uint64_t rng_seed);

/// Simulates the 2m+1 qubit SWAP-test circuit and reads P0 exactly.
FidelityEstimate swap_circuit_fidelity(const StateVector &psi, const StateVector &phi);

/// Squared Bures distance 2(1 - sqrt(max(F, 0))). Half of it is the plotted R/2.
double bures_cost(const FidelityEstimate &f);

/// 1 - sqrt(F + eps): the guarded training cost.
inline constexpr double kSqrtGuard = 1e-12;

}  // namespace bures
