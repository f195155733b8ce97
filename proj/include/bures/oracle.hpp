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

#include <string>
#include <vector>

#include "bures/simulator.hpp"

/// Classical exact references used to validate variational results.
namespace bures::oracle {

struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;

    /// `side_a` and its complement in an n-qubit register.
    static Bipartition of(std::vector<int> side_a, int num_qubits);
    void validate(int num_qubits) const;
    /// 1-based label such as "1|23".
    std::string label() const;
};

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity_exact(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix &rho);

/// Closed-form two-qubit Bures fidelity with the separable set,
/// (1 + sqrt(1 - C^2)) / 2.
double two_qubit_separable_fidelity(const DensityMatrix &rho);

/// R/2 = 1 - sqrt(F_sep) for werner(p).
double werner_bures_reference(double p);

/// (||rho^{T_B}||_1 - 1) / 2 with the transpose taken over side_b.
double negativity(const DensityMatrix &rho, const Bipartition &cut);

/// Every 1-vs-rest bipartition of an n-qubit register, qubit order.
std::vector<Bipartition> single_qubit_cuts(int num_qubits);

}  // namespace bures::oracle
