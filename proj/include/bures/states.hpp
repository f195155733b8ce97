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

#include <vector>

#include "bures/simulator.hpp"

namespace bures {

/// Set of Kraus operators on one qubit (or a small register).
struct KrausChannel {
    std::vector<CMatrix> kraus_ops;

    /// Throws unless sum_i K_i^+ K_i = I within `tol`.
    void validate(double tol = 1e-10) const;
};

/// Checks 0 <= p <= 1.
double check_noise_parameter(double p);

/// p |Phi+><Phi+| + (1 - p) I / 4.
DensityMatrix werner(double p);

/// Local dephasing K0 = |0><0| + sqrt(1-p)|1><1|, K1 = sqrt(p)|1><1|.
KrausChannel dephasing_channel(double p);

/// |L3> = (|+0+> + |-1->)/sqrt(2) after dephasing every qubit.
DensityMatrix dephased_cluster(double p);

/// |Phi_jk> = (|j,0> + e^{i pi k}|(j+1) mod 2, 1>)/sqrt(2), first label on the
/// lower qubit.
CVector bell_state(int j, int k);

/// (1 - p) rho_S + p I / 16, rho_S the four-qubit Smolin state on (AB)(CD).
DensityMatrix noisy_smolin(double p);

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, int target);

}  // namespace bures
