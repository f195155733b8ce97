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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bures/ansatz.hpp"
#include "bures/oracle.hpp"
#include "bures/simulator.hpp"

namespace bures {

enum class Family { Separable, Biseparable, QuantumClassical, Incoherent, Product };

std::string to_string(Family family);
Family family_from_string(const std::string &name);

/// Free-state family plus the partition of the system qubits into parts. Part m
/// occupies consecutive qubits starting after parts 0..m-1.
struct ResourceSpec {
    Family family = Family::Separable;
    std::vector<int> partition;
    /// Width n_C of the cardinality register (separable, biseparable); effective
    /// cardinality is 2^n_C. The remaining families size their ancillas from the
    /// partition.
    int control_qubits = 1;

    int system_qubits() const;
    std::vector<std::vector<int>> parts() const;
    void validate() const;
};

struct ParamSlice {
    int begin = 0;
    int end = 0;
    int size() const { return end - begin; }
};

/// Named parameter ranges; together they partition [0, num_params).
struct ParamLayout {
    ParamSlice v_c;
    ParamSlice controlled_blocks;
    ParamSlice u_c;
    ParamSlice extra;
};

struct OpRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Variational purification of a free-state family. System qubits come first,
/// then the register holding the fixed purification's index, then any extra
/// registers.
struct PurificationPlan {
    ResourceSpec spec;
    AnsatzConfig ansatz;
    int system_qubits = 0;
    int total_qubits = 0;
    std::vector<std::vector<int>> parts;
    std::map<std::string, std::vector<int>> registers;
    /// Register onto which fixed_purification writes |j>; also the register
    /// acted on by the expressive unitary U_C.
    std::vector<int> purifying_register;
    ParamCircuit circuit{1};
    ParamLayout param_layout;
    /// Op ranges of the named circuit stages.
    std::map<std::string, OpRange> segments;
    /// Biseparable only: bipartition selected by C_2 value k.
    std::vector<oracle::Bipartition> bipartitions;

    int num_params() const { return circuit.num_params(); }
    /// Qubits traced out to obtain the free state (everything but the system).
    std::vector<int> ancilla_qubits() const;
    std::vector<int> system_register() const;
    std::span<const ParamOp> segment(const std::string &name) const;

    /// |Phi(theta)> = circuit(theta)|0...0>.
    StateVector prepare(std::span<const double> theta) const;
    /// Tr over the ancillas of |Phi(theta)>.
    DensityMatrix free_state(std::span<const double> theta) const;
    /// Zero-pads a fixed purification on (system, purifying register) to the plan width.
    StateVector embed_fixed(const StateVector &fixed) const;
};

/// sum_j sqrt(r_j)|phi_j>_sys |j>_C from the eigendecomposition of rho,
/// eigenvalues descending. Eigenvalues below 1e-12 are dropped.
StateVector fixed_purification(const DensityMatrix &rho, int n_c);

/// Fixed purification laid out for `plan`.
StateVector fixed_purification_for(const PurificationPlan &plan, const DensityMatrix &rho);

PurificationPlan separable_purification(const ResourceSpec &spec, const AnsatzConfig &config);
PurificationPlan biseparable_purification(const ResourceSpec &spec, const AnsatzConfig &config);
PurificationPlan qc_purification(const ResourceSpec &spec, const AnsatzConfig &config);
PurificationPlan incoherent_purification(const ResourceSpec &spec, const AnsatzConfig &config);
PurificationPlan product_purification(const ResourceSpec &spec, const AnsatzConfig &config);

/// Dispatches on spec.family.
PurificationPlan build_plan(const ResourceSpec &spec, const AnsatzConfig &config);

/// A state on a subset of system qubits (qubits[0] is the local LSB).
struct Factor {
    std::vector<int> qubits;
    CMatrix rho;
};

struct FreeTerm {
    double weight = 0.0;
    std::vector<Factor> factors;
};

using FreeComponents = std::vector<FreeTerm>;

/// Assembles sum_t w_t (x)_f rho_f directly after checking the components fit
/// the family's structure.
DensityMatrix classical_free_state(const ResourceSpec &spec, const FreeComponents &components);

/// Reads the components of the free state prepared by `plan` at `theta`
/// straight from the bound stage blocks, without simulating the whole circuit.
FreeComponents extract_components(const PurificationPlan &plan, std::span<const double> theta);

}  // namespace bures
