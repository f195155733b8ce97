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

#include <cstddef>
#include <span>
#include <vector>

#include "bures/linalg.hpp"

/// Dense statevector engine. Qubit ordering is little-endian everywhere:
/// qubit q is bit q of the basis index, and any qubit list passed to an
/// operation maps its first entry to the least significant bit of the local
/// index.
namespace bures {

/// Largest register the engine will allocate.
inline constexpr int kMaxQubits = 26;

class StateVector {
public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(int num_qubits, std::size_t index);
    /// Validates length (power of two) and unit norm within `tol`.
    static StateVector from_amplitudes(CVector amplitudes, double tol = 1e-10);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const CVector &amplitudes() const { return amplitudes_; }
    CVector &mutable_amplitudes() { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

private:
    StateVector(int num_qubits, CVector amplitudes);

    int num_qubits_;
    CVector amplitudes_;
};

class DensityMatrix {
public:
    /// Validates Hermiticity and trace within `tol`, minimum eigenvalue >= -1e-9.
    static DensityMatrix from_matrix(CMatrix m, double tol = 1e-10);
    static DensityMatrix from_pure(const CVector &psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    double purity() const;

private:
    explicit DensityMatrix(CMatrix m);

    int num_qubits_;
    CMatrix m_;
};

enum class OpKind { SingleQubit, TwoQubit, MultiQubit, ControlledBlock, BasisShift };

/// A bound circuit element. Uncontrolled ops carry one block; controlled ops
/// carry one block per control-register basis value (control[0] is the least
/// significant control bit). An empty block matrix means identity.
struct CircuitOp {
    OpKind kind = OpKind::SingleQubit;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<CMatrix> blocks;

    static CircuitOp unitary(std::vector<int> targets, CMatrix u);
    static CircuitOp controlled(std::vector<int> controls, std::vector<int> targets,
                                std::vector<CMatrix> blocks);
    /// X(shift)|k> = |(shift + k) mod 2^|targets|>.
    static CircuitOp basis_shift(std::vector<int> targets, std::size_t shift);
    /// Sum_j |j><j|_controls (x) X(j)_targets.
    static CircuitOp controlled_shift(std::vector<int> controls, std::vector<int> targets);

    /// Checks index ranges, disjointness, block shapes and unitarity.
    void validate(int num_qubits, double tol = 1e-10) const;
};

CMatrix shift_matrix(int width, std::size_t shift);

StateVector apply_op(const StateVector &state, const CircuitOp &op);
StateVector apply_ops(const StateVector &state, std::span<const CircuitOp> ops);

/// Hot-path kernel: applies `op` (or its adjoint) to a caller-owned buffer.
/// No validation is performed.
void apply_in_place(CVector &amplitudes, const CircuitOp &op, bool adjoint = false);

Complex inner_product(const StateVector &a, const StateVector &b);

DensityMatrix partial_trace(const StateVector &state, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

std::vector<double> register_probabilities(const StateVector &state,
                                           std::span<const int> reg);

/// Partial transpose over the listed qubits. The result is Hermitian with unit
/// trace but may be indefinite, so a raw matrix is returned.
CMatrix partial_transpose(const DensityMatrix &rho, std::span<const int> qubits);

/// For every control value j: M_j(b, a) = sum over the remaining qubits of
/// ket[..b..] * conj(bra[..a..]), so that <bra| (|j><j| (x) D) |ket> = Tr(D M_j).
std::vector<CMatrix> local_transition_matrices(const CVector &ket, const CVector &bra,
                                               const CircuitOp &op);

}  // namespace bures
