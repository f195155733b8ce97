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

#include "bures/objective.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bures {

FidelityEstimate overlap_fidelity(const StateVector &psi, const StateVector &phi) {
    return {std::norm(inner_product(psi, phi)), FidelityMode::Exact, std::nullopt, std::nullopt};
}

FidelityEstimate sample_swap_outcomes(double exact_fidelity, std::int64_t shots,
                                      std::uint64_t rng_seed) {
    if (shots < 1) {
        throw Error("SWAP test needs at least one shot");
    }
    const double p0 = std::clamp(0.5 * (1.0 + exact_fidelity), 0.0, 1.0);
    std::mt19937_64 rng(rng_seed);
    std::binomial_distribution<std::int64_t> draws(shots, p0);
    const double p0_hat = static_cast<double>(draws(rng)) / static_cast<double>(shots);
    FidelityEstimate est;
    est.value = 2.0 * p0_hat - 1.0;
    est.mode = FidelityMode::Shots;
    est.shots = shots;
    est.std_error = std::sqrt(4.0 * p0_hat * (1.0 - p0_hat) / static_cast<double>(shots));
    return est;
}

FidelityEstimate swap_test_sample(const StateVector &psi, const StateVector &phi,
                                  std::int64_t shots, std::uint64_t rng_seed) {
    return sample_swap_outcomes(overlap_fidelity(psi, phi).value, shots, rng_seed);
}

FidelityEstimate swap_circuit_fidelity(const StateVector &psi, const StateVector &phi) {
    if (psi.num_qubits() != phi.num_qubits()) {
        throw Error("SWAP test of states with different qubit counts");
    }
    const int m = psi.num_qubits();
    const int total = 2 * m + 1;
    if (total > kMaxQubits) {
        throw Error("SWAP circuit needs " + std::to_string(total) + " qubits");
    }
    // Layout: ancilla on qubit 0, psi on 1..m, phi on m+1..2m.
    const CVector joint = kron(kron(phi.amplitudes(), psi.amplitudes()),
                               CVector(CVector::Unit(2, 0)));
    StateVector state = StateVector::from_amplitudes(joint);
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;

    state = apply_op(state, CircuitOp::unitary({0}, h));
    for (int q = 0; q < m; ++q) {
        state = apply_op(state, CircuitOp::controlled({0}, {1 + q, 1 + m + q}, {CMatrix(), swap}));
    }
    state = apply_op(state, CircuitOp::unitary({0}, h));
    const int ancilla[] = {0};
    const double p0 = register_probabilities(state, ancilla)[0];
    return {2.0 * p0 - 1.0, FidelityMode::SwapCircuit, std::nullopt, std::nullopt};
}

double bures_cost(const FidelityEstimate &f) {
    return 2.0 * (1.0 - std::sqrt(std::max(f.value, 0.0)));
}

}  // namespace bures
