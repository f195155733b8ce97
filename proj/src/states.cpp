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

#include "bures/states.hpp"

#include <cmath>
#include <string>

namespace bures {

void KrausChannel::validate(double tol) const {
    if (kraus_ops.empty()) {
        throw Error("Kraus channel has no operators");
    }
    const Eigen::Index d = kraus_ops.front().rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto &k : kraus_ops) {
        if (k.rows() != d || k.cols() != d) {
            throw Error("Kraus operators must be square and equally sized");
        }
        sum += k.adjoint() * k;
    }
    if (max_abs(sum - CMatrix::Identity(d, d)) > tol) {
        throw Error("Kraus operators are not complete");
    }
}

double check_noise_parameter(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("noise parameter must lie in [0, 1], got " + std::to_string(p));
    }
    return p;
}

DensityMatrix werner(double p) {
    check_noise_parameter(p);
    CVector phi = CVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const CMatrix m = p * (phi * phi.adjoint()) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    return DensityMatrix::from_matrix(m);
}

KrausChannel dephasing_channel(double p) {
    check_noise_parameter(p);
    CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    k1(1, 1) = std::sqrt(p);
    return {{k0, k1}};
}

DensityMatrix dephased_cluster(double p) {
    check_noise_parameter(p);
    CVector plus(2), minus(2), zero(2), one(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    // The ket is palindromic, so qubit k of the ket maps to qubit k - 1 here.
    const CVector l3 = (kron(kron(plus, zero), plus) + kron(kron(minus, one), minus)) /
                       std::sqrt(2.0);
    auto rho = DensityMatrix::from_pure(l3);
    const auto channel = dephasing_channel(p);
    for (int q = 0; q < 3; ++q) {
        rho = apply_channel(rho, channel, q);
    }
    return rho;
}

CVector bell_state(int j, int k) {
    if (j < 0 || j > 1 || k < 0 || k > 1) {
        throw Error("Bell state labels must be 0 or 1");
    }
    CVector v = CVector::Zero(4);
    // |a, b> with a on qubit 0 and b on qubit 1 has index a + 2b.
    v(j) += 1.0 / std::sqrt(2.0);
    v(((j + 1) % 2) + 2) += (k == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
    return v;
}

DensityMatrix noisy_smolin(double p) {
    check_noise_parameter(p);
    CMatrix smolin = CMatrix::Zero(16, 16);
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const CVector b = bell_state(j, k);
            const CMatrix proj = b * b.adjoint();
            // (AB) on qubits 0-1 is the less significant factor.
            smolin += kron(proj, proj) / 4.0;
        }
    }
    return DensityMatrix::from_matrix((1.0 - p) * smolin +
                                      p * CMatrix::Identity(16, 16) / 16.0);
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, int target) {
    channel.validate();
    const int width = log2_exact(channel.kraus_ops.front().rows());
    if (target < 0 || target + width > rho.num_qubits()) {
        throw Error("channel target outside the register");
    }
    std::vector<int> targets;
    for (int q = 0; q < width; ++q) {
        targets.push_back(target + q);
    }
    // Embed each Kraus operator as an uncontrolled block and act on columns, then rows.
    const Eigen::Index d = rho.dim();
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto &k : channel.kraus_ops) {
        CMatrix kr = rho.matrix();
        CircuitOp op;
        op.targets = targets;
        op.blocks = {k};
        for (Eigen::Index c = 0; c < d; ++c) {
            CVector col = kr.col(c);
            apply_in_place(col, op);
            kr.col(c) = col;
        }
        CMatrix krk = kr.adjoint();
        for (Eigen::Index c = 0; c < d; ++c) {
            CVector col = krk.col(c);
            apply_in_place(col, op);
            krk.col(c) = col;
        }
        out += krk.adjoint();
    }
    return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()), 1e-9);
}

}  // namespace bures
