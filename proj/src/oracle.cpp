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

#include "bures/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bures/states.hpp"

namespace bures::oracle {

Bipartition Bipartition::of(std::vector<int> side_a, int num_qubits) {
    Bipartition cut;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(side_a.begin(), side_a.end(), q) == side_a.end()) {
            cut.side_b.push_back(q);
        }
    }
    cut.side_a = std::move(side_a);
    cut.validate(num_qubits);
    return cut;
}

void Bipartition::validate(int num_qubits) const {
    std::vector<int> seen(static_cast<std::size_t>(num_qubits), 0);
    for (const auto *side : {&side_a, &side_b}) {
        if (side->empty()) {
            throw Error("bipartition sides must be non-empty");
        }
        for (int q : *side) {
            if (q < 0 || q >= num_qubits || seen[static_cast<std::size_t>(q)]++) {
                throw Error("bipartition sides must be disjoint qubit indices in range");
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != num_qubits) {
        throw Error("bipartition does not cover the register");
    }
}

std::string Bipartition::label() const {
    auto side = [](std::vector<int> qs) {
        std::sort(qs.begin(), qs.end());
        std::string s;
        for (int q : qs) {
            s += std::to_string(q + 1);
        }
        return s;
    };
    return side(side_a) + "|" + side(side_b);
}

double fidelity_exact(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw Error("fidelity of density matrices with different dimensions");
    }
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the nuclear norm of sqrt(rho) sqrt(sigma).
    // Summing singular values avoids taking roots of round-off sized
    // eigenvalues, which would cost about 1e-8 on rank-deficient inputs.
    // Eigenvalues at or below 1e-9 (including small negative ones from channel
    // arithmetic) count as zero in the square roots.
    const CMatrix prod = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
    const double tr = Eigen::JacobiSVD<CMatrix>(prod).singularValues().sum();
    return tr * tr;
}

double concurrence(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw Error("concurrence is defined for two-qubit states only");
    }
    const CMatrix yy = kron(pauli(2), pauli(2));
    const CMatrix tilde = yy * rho.matrix().conjugate() * yy;
    // The roots of the eigenvalues of rho * tilde are the singular values of
    // sqrt(rho) sqrt(tilde).
    const CMatrix prod = psd_sqrt(rho.matrix()) * psd_sqrt(tilde);
    const RVector sv = Eigen::JacobiSVD<CMatrix>(prod).singularValues();
    std::vector<double> l(sv.data(), sv.data() + sv.size());
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double two_qubit_separable_fidelity(const DensityMatrix &rho) {
    const double c = concurrence(rho);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
}

double werner_bures_reference(double p) {
    return 1.0 - std::sqrt(two_qubit_separable_fidelity(werner(p)));
}

double negativity(const DensityMatrix &rho, const Bipartition &cut) {
    cut.validate(rho.num_qubits());
    const CMatrix pt = partial_transpose(rho, cut.side_b);
    // (||pt||_1 - 1)/2 equals the magnitude of the negative spectrum, which
    // keeps round-off from producing tiny negative values.
    double neg = 0.0;
    for (double v : hermitian_eigen(pt).values) {
        neg += v < 0.0 ? -v : 0.0;
    }
    return neg;
}

std::vector<Bipartition> single_qubit_cuts(int num_qubits) {
    std::vector<Bipartition> cuts;
    for (int q = 0; q < num_qubits; ++q) {
        cuts.push_back(Bipartition::of({q}, num_qubits));
    }
    return cuts;
}

}  // namespace bures::oracle
