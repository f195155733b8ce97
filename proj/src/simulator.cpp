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

#include "bures/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bures {

namespace {

std::size_t dim_of(int qubits) { return std::size_t{1} << qubits; }

void check_indices(std::span<const int> qubits, int num_qubits, const char *what) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= num_qubits) {
            throw Error(std::string(what) + ": qubit index " + std::to_string(qubits[i]) +
                        " out of range for " + std::to_string(num_qubits) + " qubits");
        }
        for (std::size_t k = 0; k < i; ++k) {
            if (qubits[k] == qubits[i]) {
                throw Error(std::string(what) + ": duplicated qubit index " +
                            std::to_string(qubits[i]));
            }
        }
    }
}

// Offsets of the local basis states of `qubits` inside the full index.
std::vector<std::size_t> local_offsets(std::span<const int> qubits) {
    std::vector<std::size_t> off(dim_of(static_cast<int>(qubits.size())), 0);
    for (std::size_t t = 0; t < off.size(); ++t) {
        std::size_t o = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            if ((t >> b) & 1U) {
                o |= std::size_t{1} << qubits[b];
            }
        }
        off[t] = o;
    }
    return off;
}

// All full indices whose bits on `qubits` are zero, in increasing order.
std::vector<std::size_t> base_indices(std::span<const int> qubits, int num_qubits) {
    std::vector<int> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t count = dim_of(num_qubits - static_cast<int>(qubits.size()));
    std::vector<std::size_t> bases(count);
    for (std::size_t r = 0; r < count; ++r) {
        std::size_t idx = r;
        for (int q : sorted) {
            const std::size_t low = idx & ((std::size_t{1} << q) - 1);
            idx = ((idx >> q) << (q + 1)) | low;
        }
        bases[r] = idx;
    }
    return bases;
}

std::size_t gather_bits(std::size_t index, std::span<const int> qubits) {
    std::size_t v = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
        v |= ((index >> qubits[b]) & 1U) << b;
    }
    return v;
}

}  // namespace

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw Error("state vector needs between 1 and " + std::to_string(kMaxQubits) +
                    " qubits, got " + std::to_string(num_qubits));
    }
    amplitudes_ = CVector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    amplitudes_(0) = 1.0;
}

StateVector::StateVector(int num_qubits, CVector amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= dim_of(num_qubits)) {
        throw Error("basis index out of range");
    }
    s.amplitudes_(0) = 0.0;
    s.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(CVector amplitudes, double tol) {
    const int n = log2_exact(amplitudes.size());
    if (n < 1 || n > kMaxQubits) {
        throw Error("state vector length must be 2^n with 1 <= n <= " +
                    std::to_string(kMaxQubits));
    }
    if (std::abs(amplitudes.norm() - 1.0) > tol) {
        throw Error("state vector is not normalized (norm " +
                    std::to_string(amplitudes.norm()) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(CMatrix m)
    : num_qubits_(log2_exact(m.rows())), m_(std::move(m)) {}

DensityMatrix DensityMatrix::from_matrix(CMatrix m, double tol) {
    if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
        throw Error("density matrix must be square with power-of-two dimension");
    }
    if (!m.allFinite()) {
        throw Error("density matrix has non-finite entries");
    }
    if (!is_hermitian(m, tol)) {
        throw Error("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0)) > tol) {
        throw Error("density matrix trace is " + std::to_string(m.trace().real()) +
                    ", expected 1");
    }
    const double min_eig = hermitian_eigen(m).values.minCoeff();
    if (min_eig < -1e-9) {
        throw Error("density matrix is not positive semidefinite (min eigenvalue " +
                    std::to_string(min_eig) + ")");
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const CVector &psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw Error("pure state is not normalized");
    }
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
    return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

CMatrix shift_matrix(int width, std::size_t shift) {
    const auto d = static_cast<Eigen::Index>(dim_of(width));
    CMatrix x = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        x((k + static_cast<Eigen::Index>(shift)) % d, k) = 1.0;
    }
    return x;
}

CircuitOp CircuitOp::unitary(std::vector<int> targets, CMatrix u) {
    CircuitOp op;
    op.kind = targets.size() == 1   ? OpKind::SingleQubit
              : targets.size() == 2 ? OpKind::TwoQubit
                                    : OpKind::MultiQubit;
    op.targets = std::move(targets);
    op.blocks.push_back(std::move(u));
    return op;
}

CircuitOp CircuitOp::controlled(std::vector<int> controls, std::vector<int> targets,
                                std::vector<CMatrix> blocks) {
    CircuitOp op;
    op.kind = OpKind::ControlledBlock;
    op.controls = std::move(controls);
    op.targets = std::move(targets);
    op.blocks = std::move(blocks);
    return op;
}

CircuitOp CircuitOp::basis_shift(std::vector<int> targets, std::size_t shift) {
    CircuitOp op;
    op.kind = OpKind::BasisShift;
    const int width = static_cast<int>(targets.size());
    op.targets = std::move(targets);
    op.blocks.push_back(shift_matrix(width, shift));
    return op;
}

CircuitOp CircuitOp::controlled_shift(std::vector<int> controls, std::vector<int> targets) {
    CircuitOp op;
    op.kind = OpKind::BasisShift;
    const std::size_t values = dim_of(static_cast<int>(controls.size()));
    const int width = static_cast<int>(targets.size());
    op.controls = std::move(controls);
    op.targets = std::move(targets);
    op.blocks.reserve(values);
    for (std::size_t j = 0; j < values; ++j) {
        op.blocks.push_back(shift_matrix(width, j));
    }
    return op;
}

void CircuitOp::validate(int num_qubits, double tol) const {
    if (targets.empty()) {
        throw Error("circuit op has no target qubits");
    }
    check_indices(targets, num_qubits, "targets");
    check_indices(controls, num_qubits, "controls");
    for (int c : controls) {
        if (std::find(targets.begin(), targets.end(), c) != targets.end()) {
            throw Error("control and target registers overlap at qubit " + std::to_string(c));
        }
    }
    if (blocks.size() != dim_of(static_cast<int>(controls.size()))) {
        throw Error("circuit op needs one block per control value");
    }
    const auto d = static_cast<Eigen::Index>(dim_of(static_cast<int>(targets.size())));
    for (const auto &b : blocks) {
        if (b.size() == 0) {
            continue;
        }
        if (b.rows() != d || b.cols() != d) {
            throw Error("block matrix shape does not match target register");
        }
        if (!is_unitary(b, tol)) {
            throw Error("block matrix is not unitary");
        }
    }
}

void apply_in_place(CVector &amps, const CircuitOp &op, bool adjoint) {
    const int n = log2_exact(amps.size());
    const auto bases = base_indices(op.targets, n);
    const auto off = local_offsets(op.targets);
    const std::size_t k = off.size();
    const bool controlled = !op.controls.empty();

    if (k == 2) {
        const std::size_t o1 = off[1];
        for (std::size_t base : bases) {
            const auto &u = op.blocks[controlled ? gather_bits(base, op.controls) : 0];
            if (u.size() == 0) {
                continue;
            }
            const Complex a0 = amps(static_cast<Eigen::Index>(base));
            const Complex a1 = amps(static_cast<Eigen::Index>(base + o1));
            if (adjoint) {
                amps(static_cast<Eigen::Index>(base)) =
                    std::conj(u(0, 0)) * a0 + std::conj(u(1, 0)) * a1;
                amps(static_cast<Eigen::Index>(base + o1)) =
                    std::conj(u(0, 1)) * a0 + std::conj(u(1, 1)) * a1;
            } else {
                amps(static_cast<Eigen::Index>(base)) = u(0, 0) * a0 + u(0, 1) * a1;
                amps(static_cast<Eigen::Index>(base + o1)) = u(1, 0) * a0 + u(1, 1) * a1;
            }
        }
        return;
    }

    std::vector<Complex> in(k);
    for (std::size_t base : bases) {
        const auto &u = op.blocks[controlled ? gather_bits(base, op.controls) : 0];
        if (u.size() == 0) {
            continue;
        }
        for (std::size_t t = 0; t < k; ++t) {
            in[t] = amps(static_cast<Eigen::Index>(base + off[t]));
        }
        for (std::size_t r = 0; r < k; ++r) {
            Complex acc = 0.0;
            if (adjoint) {
                for (std::size_t c = 0; c < k; ++c) {
                    acc += std::conj(u(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r))) *
                           in[c];
                }
            } else {
                for (std::size_t c = 0; c < k; ++c) {
                    acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
                }
            }
            amps(static_cast<Eigen::Index>(base + off[r])) = acc;
        }
    }
}

StateVector apply_op(const StateVector &state, const CircuitOp &op) {
    op.validate(state.num_qubits());
    StateVector out = state;
    apply_in_place(out.mutable_amplitudes(), op);
    return out;
}

StateVector apply_ops(const StateVector &state, std::span<const CircuitOp> ops) {
    StateVector out = state;
    for (const auto &op : ops) {
        op.validate(state.num_qubits());
        apply_in_place(out.mutable_amplitudes(), op);
    }
    return out;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw Error("inner product of states with different qubit counts");
    }
    return a.amplitudes().dot(b.amplitudes());
}

namespace {

std::vector<int> complement(std::span<const int> keep, int n) {
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            rest.push_back(q);
        }
    }
    return rest;
}

void check_keep(std::span<const int> keep, int n) {
    if (keep.empty()) {
        throw Error("partial trace needs a non-empty keep list");
    }
    check_indices(keep, n, "keep");
}

}  // namespace

DensityMatrix partial_trace(const StateVector &state, std::span<const int> keep) {
    const int n = state.num_qubits();
    check_keep(keep, n);
    const auto rest = complement(keep, n);
    const auto keep_off = local_offsets(keep);
    const auto rest_off = local_offsets(rest);
    // Reshape into (kept, traced) and form psi psi^dagger.
    CMatrix psi(static_cast<Eigen::Index>(keep_off.size()),
                static_cast<Eigen::Index>(rest_off.size()));
    for (std::size_t r = 0; r < rest_off.size(); ++r) {
        for (std::size_t k = 0; k < keep_off.size(); ++k) {
            psi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r)) =
                state.amplitudes()(static_cast<Eigen::Index>(keep_off[k] + rest_off[r]));
        }
    }
    return DensityMatrix::from_matrix(psi * psi.adjoint(), 1e-9);
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    const int n = rho.num_qubits();
    check_keep(keep, n);
    const auto rest = complement(keep, n);
    const auto keep_off = local_offsets(keep);
    const auto rest_off = local_offsets(rest);
    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    CMatrix out = CMatrix::Zero(dk, dk);
    const auto &m = rho.matrix();
    for (std::size_t r = 0; r < rest_off.size(); ++r) {
        for (Eigen::Index a = 0; a < dk; ++a) {
            for (Eigen::Index b = 0; b < dk; ++b) {
                out(a, b) += m(static_cast<Eigen::Index>(keep_off[a] + rest_off[r]),
                               static_cast<Eigen::Index>(keep_off[b] + rest_off[r]));
            }
        }
    }
    return DensityMatrix::from_matrix(out, 1e-9);
}

std::vector<double> register_probabilities(const StateVector &state, std::span<const int> reg) {
    if (reg.empty()) {
        throw Error("register_probabilities needs a non-empty register");
    }
    check_indices(reg, state.num_qubits(), "register");
    std::vector<double> probs(dim_of(static_cast<int>(reg.size())), 0.0);
    const auto &a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        probs[gather_bits(static_cast<std::size_t>(i), reg)] += std::norm(a(i));
    }
    return probs;
}

CMatrix partial_transpose(const DensityMatrix &rho, std::span<const int> qubits) {
    check_indices(qubits, rho.num_qubits(), "partial transpose");
    std::size_t mask = 0;
    for (int q : qubits) {
        mask |= std::size_t{1} << q;
    }
    const auto &m = rho.matrix();
    const Eigen::Index d = m.rows();
    CMatrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            // Swap the bits of i and j that belong to the transposed qubits.
            const std::size_t ni = (ui & ~mask) | (uj & mask);
            const std::size_t nj = (uj & ~mask) | (ui & mask);
            out(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(nj)) = m(i, j);
        }
    }
    return out;
}

std::vector<CMatrix> local_transition_matrices(const CVector &ket, const CVector &bra,
                                               const CircuitOp &op) {
    const int n = log2_exact(ket.size());
    const auto bases = base_indices(op.targets, n);
    const auto off = local_offsets(op.targets);
    const auto k = static_cast<Eigen::Index>(off.size());
    std::vector<CMatrix> ms(op.blocks.size(), CMatrix::Zero(k, k));
    const bool controlled = !op.controls.empty();
    for (std::size_t base : bases) {
        auto &m = ms[controlled ? gather_bits(base, op.controls) : 0];
        for (Eigen::Index b = 0; b < k; ++b) {
            const Complex kb = ket(static_cast<Eigen::Index>(base + off[static_cast<std::size_t>(b)]));
            for (Eigen::Index a = 0; a < k; ++a) {
                m(b, a) += kb * std::conj(bra(static_cast<Eigen::Index>(
                                    base + off[static_cast<std::size_t>(a)])));
            }
        }
    }
    return ms;
}

}  // namespace bures
