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

#include "bures/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bures {

HermitianEigen hermitian_eigen(const CMatrix &m) {
    // Symmetrize first; callers pass matrices that are Hermitian only up to rounding.
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

bool is_unitary(const CMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    const CMatrix prod = u.adjoint() * u;
    return max_abs(prod - CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_hermitian(const CMatrix &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix &m, double clip) {
    const auto eig = hermitian_eigen(m);
    RVector roots(eig.values.size());
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        const double v = eig.values(i);
        roots(i) = v <= clip ? 0.0 : std::sqrt(v);
    }
    return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double trace_norm_hermitian(const CMatrix &m) {
    return hermitian_eigen(m).values.cwiseAbs().sum();
}

double von_neumann_entropy(const CMatrix &rho) {
    const auto eig = hermitian_eigen(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values(i);
        if (v > 1e-15) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

void fix_global_phase(CVector &v, double tol) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > tol) {
            v *= std::conj(v(i)) / mag;
            v(i) = mag;
            return;
        }
    }
}

CMatrix pauli(int index) {
    CMatrix p(2, 2);
    switch (index) {
    case 0:
        p << 1, 0, 0, 1;
        break;
    case 1:
        p << 0, 1, 1, 0;
        break;
    case 2:
        p << 0, -kI, kI, 0;
        break;
    case 3:
        p << 1, 0, 0, -1;
        break;
    default:
        throw Error("pauli index must be in [0, 3]");
    }
    return p;
}

double max_abs(const CMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

int log2_exact(Eigen::Index n) {
    if (!is_power_of_two(n)) {
        throw Error("dimension " + std::to_string(n) + " is not a power of two");
    }
    int k = 0;
    while ((Eigen::Index{1} << k) < n) {
        ++k;
    }
    return k;
}

}  // namespace bures
