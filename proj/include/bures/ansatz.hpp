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
#include <vector>

#include "bures/linalg.hpp"
#include "bures/simulator.hpp"

namespace bures {

enum class GateKind {
    Identity,
    Fixed,
    /// R_Y(theta) = exp(-i theta Y / 2).
    RY,
    /// General single-qubit rotation RZ(omega) RY(theta) RZ(phi), slots (phi, theta, omega).
    Rot,
    /// exp(-i sum_k theta_k P_k) over all non-identity Pauli words of the target
    /// register. Word k+1, read in base 4 with digit q acting on local qubit q
    /// (0=I, 1=X, 2=Y, 3=Z), owns slot k.
    PauliExp,
};

/// One block of a parameterized op: a gate family plus the parameter slots it reads.
struct ParamGate {
    GateKind kind = GateKind::Identity;
    std::vector<int> slots;
    CMatrix fixed;
    int width = 1;

    static ParamGate identity(int width = 1) { return {GateKind::Identity, {}, {}, width}; }
    static ParamGate constant(CMatrix u);
    static ParamGate ry(int slot) { return {GateKind::RY, {slot}, {}, 1}; }
    static ParamGate rot(int first_slot) {
        return {GateKind::Rot, {first_slot, first_slot + 1, first_slot + 2}, {}, 1};
    }
    static ParamGate pauli_exp(int width, int first_slot);

    /// Empty matrix for Identity.
    CMatrix matrix(std::span<const double> theta) const;

    /// For each slot s of this gate adds Tr(dU/dtheta_s * m) to grad[s].
    void accumulate_contractions(std::span<const double> theta, const CMatrix &m,
                                 std::span<Complex> grad) const;
};

struct ParamOp {
    OpKind kind = OpKind::SingleQubit;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<ParamGate> blocks;

    bool has_params() const;
};

/// Ordered parameterized gate sequence. Immutable once built by the ansatz
/// and purification builders.
class ParamCircuit {
public:
    explicit ParamCircuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    int num_params() const { return num_params_; }
    const std::vector<ParamOp> &ops() const { return ops_; }

    /// Reserves `count` new slots and returns the first one.
    int add_params(int count);
    void push(ParamOp op);
    void push_gate(std::vector<int> targets, ParamGate gate);
    void push_cnot(int control, int target);

    /// Appends `sub` with its qubit q mapped to qubit_map[q] and its slots
    /// shifted past the current parameter count.
    void append(const ParamCircuit &sub, std::span<const int> qubit_map);

    /// Throws unless every slot in [0, num_params) is referenced and all ops are
    /// well formed.
    void validate() const;

private:
    int num_qubits_;
    int num_params_ = 0;
    std::vector<ParamOp> ops_;
};

struct AnsatzConfig {
    int l1 = 1;
    int l2 = 1;
    bool use_arbitrary_u = false;
};

/// l1 layers of [R_Y per qubit, then CNOT(i, i+1) along an open chain].
ParamCircuit build_vc(int num_qubits, int l1);

/// l2 layers of [Rot per qubit, then controlled-Rot for every pair i<j,
/// control i, target j, lexicographic order].
ParamCircuit build_uc(int num_qubits, int l2);

inline constexpr int kMaxArbitraryUnitaryQubits = 6;

/// Single PauliExp block over the whole register; 4^n - 1 parameters.
ParamCircuit build_arbitrary_unitary(int num_qubits);

/// U_C according to the ansatz config (arbitrary unitary or layered). An empty
/// circuit is returned for l2 = 0 in layered mode.
ParamCircuit build_expressive(int num_qubits, const AnsatzConfig &config);

/// Binds parameters; every bound block is checked for unitarity at 1e-10.
std::vector<CircuitOp> bind(const ParamCircuit &circuit, std::span<const double> theta);
CircuitOp bind_op(const ParamOp &op, std::span<const double> theta);

}  // namespace bures
