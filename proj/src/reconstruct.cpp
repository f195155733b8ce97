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

#include "bures/reconstruct.hpp"

#include <cmath>
#include <string>

namespace bures {

void SeparableEnsemble::validate() const {
    if (probabilities.size() != components.size()) {
        throw Error("ensemble needs one component list per probability");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0)) {
            throw Error("ensemble probabilities must be non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error("ensemble probabilities sum to " + std::to_string(total));
    }
    for (const auto &parts : components) {
        for (const auto &v : parts) {
            if (std::abs(v.norm() - 1.0) > 1e-9) {
                throw Error("ensemble component is not normalized");
            }
        }
    }
}

FreeComponents to_components(const SeparableEnsemble &ensemble,
                             const std::vector<std::vector<int>> &parts) {
    FreeComponents out;
    for (std::size_t j = 0; j < ensemble.probabilities.size(); ++j) {
        FreeTerm t{ensemble.probabilities[j], {}};
        for (std::size_t m = 0; m < parts.size(); ++m) {
            const auto &v = ensemble.components[j][m];
            t.factors.push_back({parts[m], v * v.adjoint()});
        }
        out.push_back(std::move(t));
    }
    return out;
}

Reconstruction reconstruct_free_state(const PurificationPlan &plan,
                                      std::span<const double> theta) {
    if (plan.spec.family != Family::Separable) {
        throw Error("reconstruction is implemented for the separable family only");
    }
    const auto ops = bind(plan.circuit, theta);
    CVector amps = StateVector(plan.total_qubits).amplitudes();
    for (const auto &op : ops) {
        apply_in_place(amps, op);
    }
    const auto u_c = plan.segments.at("u_c");
    for (std::size_t i = u_c.end; i-- > u_c.begin;) {
        apply_in_place(amps, ops[i], true);
    }
    const auto undone = StateVector::from_amplitudes(std::move(amps), 1e-9);
    auto probs = register_probabilities(undone, plan.purifying_register);

    const int n = plan.system_qubits;
    const Eigen::Index dsys = Eigen::Index{1} << n;
    double kept = 0.0;
    for (auto &p : probs) {
        if (p < 1e-12) {
            p = 0.0;
        }
        kept += p;
    }

    SeparableEnsemble ensemble;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        std::vector<CVector> factors;
        if (probs[j] == 0.0) {
            // Dropped branch: placeholder |0...0> keeps one entry per control value.
            for (const auto &part : plan.parts) {
                factors.push_back(CVector::Unit(Eigen::Index{1} << part.size(), 0));
            }
        } else {
            // The purifying register sits directly above the system qubits.
            CVector slice = undone.amplitudes().segment(static_cast<Eigen::Index>(j) * dsys, dsys);
            slice /= slice.norm();
            const auto conditional = StateVector::from_amplitudes(slice, 1e-9);
            for (const auto &part : plan.parts) {
                const auto marginal = partial_trace(conditional, part);
                if (marginal.purity() < 1.0 - 1e-8) {
                    throw Error("conditional state of branch " + std::to_string(j) +
                                " is not a product state");
                }
                const auto eig = hermitian_eigen(marginal.matrix());
                CVector v = eig.vectors.col(eig.values.size() - 1);
                fix_global_phase(v);
                factors.push_back(std::move(v));
            }
        }
        ensemble.probabilities.push_back(probs[j] / kept);
        ensemble.components.push_back(std::move(factors));
    }
    ensemble.validate();
    auto state = classical_free_state(plan.spec, to_components(ensemble, plan.parts));
    return {std::move(ensemble), std::move(state)};
}

}  // namespace bures
