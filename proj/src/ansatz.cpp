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

#include "bures/ansatz.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace bures {

namespace {

struct PauliWord {
    std::size_t xmask = 0;
    std::size_t phase_mask = 0;  // qubits carrying Y or Z
    Complex prefactor = 1.0;      // i^{#Y}
};

// Words 1 .. 4^w - 1 for a register of `width` qubits.
const std::vector<PauliWord> &pauli_words(int width) {
    static const auto tables = [] {
        std::array<std::vector<PauliWord>, kMaxArbitraryUnitaryQubits + 1> t;
        for (int w = 1; w <= kMaxArbitraryUnitaryQubits; ++w) {
            const std::size_t count = (std::size_t{1} << (2 * w)) - 1;
            t[static_cast<std::size_t>(w)].reserve(count);
            for (std::size_t k = 1; k <= count; ++k) {
                PauliWord pw;
                int num_y = 0;
                for (int q = 0; q < w; ++q) {
                    const std::size_t digit = (k >> (2 * q)) & 3U;
                    const std::size_t bit = std::size_t{1} << q;
                    if (digit == 1 || digit == 2) {
                        pw.xmask |= bit;
                    }
                    if (digit == 2 || digit == 3) {
                        pw.phase_mask |= bit;
                    }
                    num_y += digit == 2 ? 1 : 0;
                }
                static constexpr std::array<Complex, 4> powers{
                    Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
                pw.prefactor = powers[static_cast<std::size_t>(num_y % 4)];
                t[static_cast<std::size_t>(w)].push_back(pw);
            }
        }
        return t;
    }();
    if (width < 1 || width > kMaxArbitraryUnitaryQubits) {
        throw Error("Pauli-word generator supports 1.." +
                    std::to_string(kMaxArbitraryUnitaryQubits) + " qubits");
    }
    return tables[static_cast<std::size_t>(width)];
}

// <b ^ x| P |b> for the word.
Complex word_element(const PauliWord &pw, std::size_t b) {
    return (std::popcount(b & pw.phase_mask) & 1) ? -pw.prefactor : pw.prefactor;
}

CMatrix ry_matrix(double t) {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    CMatrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

CMatrix ry_derivative(double t) {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    CMatrix m(2, 2);
    m << -s / 2, -c / 2, c / 2, -s / 2;
    return m;
}

CMatrix rz_matrix(double t) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (t / 2));
    m(1, 1) = std::exp(kI * (t / 2));
    return m;
}

CMatrix rz_derivative(double t) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = -0.5 * kI * std::exp(-kI * (t / 2));
    m(1, 1) = 0.5 * kI * std::exp(kI * (t / 2));
    return m;
}

Complex contract(const CMatrix &du, const CMatrix &m) {
    return du.cwiseProduct(m.transpose()).sum();
}

CMatrix pauli_generator(int width, std::span<const double> theta, std::span<const int> slots) {
    const auto &words = pauli_words(width);
    const auto d = Eigen::Index{1} << width;
    CMatrix h = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < words.size(); ++k) {
        const double c = theta[static_cast<std::size_t>(slots[k])];
        if (c == 0.0) {
            continue;
        }
        const auto &pw = words[k];
        for (Eigen::Index b = 0; b < d; ++b) {
            const auto ub = static_cast<std::size_t>(b);
            h(static_cast<Eigen::Index>(ub ^ pw.xmask), b) += c * word_element(pw, ub);
        }
    }
    return h;
}

}  // namespace

ParamGate ParamGate::constant(CMatrix u) {
    const int w = log2_exact(u.rows());
    return {GateKind::Fixed, {}, std::move(u), w};
}

ParamGate ParamGate::pauli_exp(int width, int first_slot) {
    const int count = static_cast<int>(pauli_words(width).size());
    ParamGate g{GateKind::PauliExp, {}, {}, width};
    g.slots.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        g.slots.push_back(first_slot + k);
    }
    return g;
}

CMatrix ParamGate::matrix(std::span<const double> theta) const {
    auto at = [&](std::size_t i) { return theta[static_cast<std::size_t>(slots[i])]; };
    switch (kind) {
    case GateKind::Identity:
        return {};
    case GateKind::Fixed:
        return fixed;
    case GateKind::RY:
        return ry_matrix(at(0));
    case GateKind::Rot:
        return rz_matrix(at(2)) * ry_matrix(at(1)) * rz_matrix(at(0));
    case GateKind::PauliExp: {
        const auto eig = hermitian_eigen(pauli_generator(width, theta, slots));
        const CVector phases = (-kI * eig.values.cast<Complex>()).array().exp();
        return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    }
    }
    return {};
}

void ParamGate::accumulate_contractions(std::span<const double> theta, const CMatrix &m,
                                        std::span<Complex> grad) const {
    auto at = [&](std::size_t i) { return theta[static_cast<std::size_t>(slots[i])]; };
    auto slot = [&](std::size_t i) { return static_cast<std::size_t>(slots[i]); };
    switch (kind) {
    case GateKind::Identity:
    case GateKind::Fixed:
        return;
    case GateKind::RY:
        grad[slot(0)] += contract(ry_derivative(at(0)), m);
        return;
    case GateKind::Rot: {
        const CMatrix z0 = rz_matrix(at(0)), y = ry_matrix(at(1)), z2 = rz_matrix(at(2));
        grad[slot(0)] += contract(z2 * y * rz_derivative(at(0)), m);
        grad[slot(1)] += contract(z2 * ry_derivative(at(1)) * z0, m);
        grad[slot(2)] += contract(rz_derivative(at(2)) * y * z0, m);
        return;
    }
    case GateKind::PauliExp: {
        // Frechet derivative of exp(-iH) in the eigenbasis of H:
        // d/dt Tr(exp(-i(H + tP)) M) = Tr(P G), G = V (L o V^+ M V) V^+,
        // L_ab = (f(l_a) - f(l_b)) / (l_a - l_b), f(x) = exp(-ix).
        const auto eig = hermitian_eigen(pauli_generator(width, theta, slots));
        const Eigen::Index d = eig.values.size();
        CMatrix y = eig.vectors.adjoint() * m * eig.vectors;
        for (Eigen::Index a = 0; a < d; ++a) {
            for (Eigen::Index b = 0; b < d; ++b) {
                const double mid = 0.5 * (eig.values(a) + eig.values(b));
                const double half = 0.5 * (eig.values(a) - eig.values(b));
                const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                                          : std::sin(half) / half;
                y(a, b) *= -kI * std::exp(-kI * mid) * sinc;
            }
        }
        const CMatrix g = eig.vectors * y * eig.vectors.adjoint();
        const auto &words = pauli_words(width);
        for (std::size_t k = 0; k < words.size(); ++k) {
            const auto &pw = words[k];
            Complex acc = 0.0;
            for (Eigen::Index b = 0; b < d; ++b) {
                const auto ub = static_cast<std::size_t>(b);
                acc += word_element(pw, ub) * g(b, static_cast<Eigen::Index>(ub ^ pw.xmask));
            }
            grad[slot(k)] += acc;
        }
        return;
    }
    }
}

bool ParamOp::has_params() const {
    for (const auto &b : blocks) {
        if (!b.slots.empty()) {
            return true;
        }
    }
    return false;
}

ParamCircuit::ParamCircuit(int num_qubits)
    : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw Error("parameterized circuit needs at least one qubit");
    }
}

int ParamCircuit::add_params(int count) {
    const int first = num_params_;
    num_params_ += count;
    return first;
}

void ParamCircuit::push(ParamOp op) {
    for (const auto &b : op.blocks) {
        for (int s : b.slots) {
            if (s < 0 || s >= num_params_) {
                throw Error("parameter slot " + std::to_string(s) + " not reserved");
            }
        }
    }
    ops_.push_back(std::move(op));
}

void ParamCircuit::push_gate(std::vector<int> targets, ParamGate gate) {
    ParamOp op;
    op.kind = targets.size() == 1   ? OpKind::SingleQubit
              : targets.size() == 2 ? OpKind::TwoQubit
                                    : OpKind::MultiQubit;
    op.targets = std::move(targets);
    op.blocks.push_back(std::move(gate));
    push(std::move(op));
}

void ParamCircuit::push_cnot(int control, int target) {
    ParamOp op;
    op.kind = OpKind::ControlledBlock;
    op.controls = {control};
    op.targets = {target};
    op.blocks = {ParamGate::identity(), ParamGate::constant(pauli(1))};
    push(std::move(op));
}

void ParamCircuit::append(const ParamCircuit &sub, std::span<const int> qubit_map) {
    if (static_cast<int>(qubit_map.size()) != sub.num_qubits()) {
        throw Error("qubit map size does not match appended circuit");
    }
    const int offset = add_params(sub.num_params());
    auto remap = [&](std::vector<int> qs) {
        for (int &q : qs) {
            q = qubit_map[static_cast<std::size_t>(q)];
            if (q < 0 || q >= num_qubits_) {
                throw Error("appended circuit maps outside the register");
            }
        }
        return qs;
    };
    for (const auto &op : sub.ops()) {
        ParamOp mapped = op;
        mapped.targets = remap(op.targets);
        mapped.controls = remap(op.controls);
        for (auto &b : mapped.blocks) {
            for (int &s : b.slots) {
                s += offset;
            }
        }
        ops_.push_back(std::move(mapped));
    }
}

void ParamCircuit::validate() const {
    std::vector<bool> seen(static_cast<std::size_t>(num_params_), false);
    for (const auto &op : ops_) {
        for (const auto &b : op.blocks) {
            for (int s : b.slots) {
                if (s < 0 || s >= num_params_) {
                    throw Error("parameter slot out of range");
                }
                seen[static_cast<std::size_t>(s)] = true;
            }
            if (b.kind != GateKind::Identity && b.width != static_cast<int>(op.targets.size())) {
                throw Error("gate width does not match its target register");
            }
        }
        if (op.blocks.size() != (std::size_t{1} << op.controls.size())) {
            throw Error("parameterized op needs one block per control value");
        }
    }
    for (std::size_t s = 0; s < seen.size(); ++s) {
        if (!seen[s]) {
            throw Error("parameter slot " + std::to_string(s) + " is never used");
        }
    }
}

ParamCircuit build_vc(int num_qubits, int l1) {
    if (num_qubits < 1 || l1 < 1) {
        throw Error("build_vc needs num_qubits >= 1 and l1 >= 1");
    }
    ParamCircuit c(num_qubits);
    for (int layer = 0; layer < l1; ++layer) {
        for (int q = 0; q < num_qubits; ++q) {
            c.push_gate({q}, ParamGate::ry(c.add_params(1)));
        }
        for (int q = 0; q + 1 < num_qubits; ++q) {
            c.push_cnot(q, q + 1);
        }
    }
    return c;
}

ParamCircuit build_uc(int num_qubits, int l2) {
    if (num_qubits < 1 || l2 < 1) {
        throw Error("build_uc needs num_qubits >= 1 and l2 >= 1");
    }
    ParamCircuit c(num_qubits);
    for (int layer = 0; layer < l2; ++layer) {
        for (int q = 0; q < num_qubits; ++q) {
            c.push_gate({q}, ParamGate::rot(c.add_params(3)));
        }
        for (int i = 0; i < num_qubits; ++i) {
            for (int j = i + 1; j < num_qubits; ++j) {
                ParamOp op;
                op.kind = OpKind::ControlledBlock;
                op.controls = {i};
                op.targets = {j};
                op.blocks = {ParamGate::identity(), ParamGate::rot(c.add_params(3))};
                c.push(std::move(op));
            }
        }
    }
    return c;
}

ParamCircuit build_arbitrary_unitary(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxArbitraryUnitaryQubits) {
        throw Error("arbitrary unitary supports 1.." +
                    std::to_string(kMaxArbitraryUnitaryQubits) + " qubits");
    }
    ParamCircuit c(num_qubits);
    const int count = (1 << (2 * num_qubits)) - 1;
    std::vector<int> all(static_cast<std::size_t>(num_qubits));
    for (int q = 0; q < num_qubits; ++q) {
        all[static_cast<std::size_t>(q)] = q;
    }
    c.push_gate(std::move(all), ParamGate::pauli_exp(num_qubits, c.add_params(count)));
    return c;
}

ParamCircuit build_expressive(int num_qubits, const AnsatzConfig &config) {
    if (config.use_arbitrary_u) {
        return build_arbitrary_unitary(num_qubits);
    }
    if (config.l2 < 0) {
        throw Error("l2 must be non-negative");
    }
    return config.l2 == 0 ? ParamCircuit(num_qubits) : build_uc(num_qubits, config.l2);
}

CircuitOp bind_op(const ParamOp &op, std::span<const double> theta) {
    CircuitOp out;
    out.kind = op.kind;
    out.targets = op.targets;
    out.controls = op.controls;
    out.blocks.reserve(op.blocks.size());
    for (const auto &b : op.blocks) {
        out.blocks.push_back(b.matrix(theta));
    }
    return out;
}

std::vector<CircuitOp> bind(const ParamCircuit &circuit, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != circuit.num_params()) {
        throw Error("bind: expected " + std::to_string(circuit.num_params()) +
                    " parameters, got " + std::to_string(theta.size()));
    }
    for (double t : theta) {
        if (!std::isfinite(t)) {
            throw Error("bind: non-finite parameter value");
        }
    }
    std::vector<CircuitOp> ops;
    ops.reserve(circuit.ops().size());
    for (const auto &op : circuit.ops()) {
        ops.push_back(bind_op(op, theta));
        ops.back().validate(circuit.num_qubits());
    }
    return ops;
}

}  // namespace bures
