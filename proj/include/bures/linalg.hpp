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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bures {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Raised for precondition and invariant violations across the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Spectrum of a Hermitian matrix, eigenvalues ascending, eigenvectors in columns.
struct HermitianEigen {
    RVector values;
    CMatrix vectors;
};

HermitianEigen hermitian_eigen(const CMatrix &m);

bool is_unitary(const CMatrix &u, double tol = 1e-10);
bool is_hermitian(const CMatrix &m, double tol = 1e-10);

/// Kronecker product with `a` as the most significant factor.
CMatrix kron(const CMatrix &a, const CMatrix &b);
CVector kron(const CVector &a, const CVector &b);

/// Square root of a positive semidefinite matrix. Eigenvalues below `clip`
/// in magnitude (or negative) are treated as zero.
CMatrix psd_sqrt(const CMatrix &m, double clip = 1e-9);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const CMatrix &m);

/// Von Neumann entropy in bits; eigenvalues below 1e-15 contribute nothing.
double von_neumann_entropy(const CMatrix &rho);

/// Rotates `v` so that its first component with magnitude above `tol` is real
/// and positive.
void fix_global_phase(CVector &v, double tol = 1e-12);

/// Single-qubit Pauli matrix by index: 0=I, 1=X, 2=Y, 3=Z.
CMatrix pauli(int index);

double max_abs(const CMatrix &m);

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n);

}  // namespace bures
