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

#include <span>
#include <utility>
#include <vector>

#include "bures/purify.hpp"

namespace bures {

/// sum_j p_j (x)_m |psi_jm><psi_jm|; components[j][m] lives on part m.
struct SeparableEnsemble {
    std::vector<double> probabilities;
    std::vector<std::vector<CVector>> components;

    void validate() const;
};

struct Reconstruction {
    SeparableEnsemble ensemble;
    DensityMatrix state;
};

/// Undoes U_C on the trained purification, reads p_j off the cardinality
/// register and slices out each conditional product state. Separable plans only.
Reconstruction reconstruct_free_state(const PurificationPlan &plan, std::span<const double> theta);

/// The ensemble as free-state components for classical_free_state.
FreeComponents to_components(const SeparableEnsemble &ensemble,
                             const std::vector<std::vector<int>> &parts);

}  // namespace bures
