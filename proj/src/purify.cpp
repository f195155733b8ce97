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

#include "bures/purify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bures {

namespace {

std::vector<int> qubit_range(int begin, int count) {
    std::vector<int> qs(static_cast<std::size_t>(count));
    std::iota(qs.begin(), qs.end(), begin);
    return qs;
}

std::vector<int> concat(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool contains_all(std::span<const int> outer, std::span<const int> inner) {
    return std::all_of(inner.begin(), inner.end(), [&](int q) {
        return std::find(outer.begin(), outer.end(), q) != outer.end();
    });
}

bool contains_none(std::span<const int> outer, std::span<const int> inner) {
    return std::none_of(inner.begin(), inner.end(), [&](int q) {
        return std::find(outer.begin(), outer.end(), q) != outer.end();
    });
}

int ceil_log2(int v) {
    int k = 0;
    while ((1 << k) < v) {
        ++k;
    }
    return k;
}

// Rot for one qubit, full Pauli exponential for wider registers.
ParamGate general_unitary(ParamCircuit &c, int width) {
    if (width == 1) {
        return ParamGate::rot(c.add_params(3));
    }
    const int count = (1 << (2 * width)) - 1;
    return ParamGate::pauli_exp(width, c.add_params(count));
}

ParamOp fixed_controlled_shift(const std::vector<int> &controls, const std::vector<int> &targets) {
    ParamOp op;
    op.kind = OpKind::BasisShift;
    op.controls = controls;
    op.targets = targets;
    const std::size_t values = std::size_t{1} << controls.size();
    for (std::size_t j = 0; j < values; ++j) {
        op.blocks.push_back(
            ParamGate::constant(shift_matrix(static_cast<int>(targets.size()), j)));
    }
    return op;
}

// Tracks named op ranges while a plan's circuit is assembled.
class StageRecorder {
public:
    explicit StageRecorder(PurificationPlan &plan) : plan_(plan) {}

    void begin() { start_ = plan_.circuit.ops().size(); }
    void end(const std::string &name) {
        plan_.segments[name] = {start_, plan_.circuit.ops().size()};
    }
    int params() const { return plan_.circuit.num_params(); }

private:
    PurificationPlan &plan_;
    std::size_t start_ = 0;
};

PurificationPlan new_plan(const ResourceSpec &spec, const AnsatzConfig &config, int total) {
    PurificationPlan plan;
    plan.spec = spec;
    plan.ansatz = config;
    plan.system_qubits = spec.system_qubits();
    plan.total_qubits = total;
    plan.parts = spec.parts();
    plan.circuit = ParamCircuit(total);
    if (total > kMaxQubits) {
        throw Error("purification needs " + std::to_string(total) + " qubits");
    }
    return plan;
}

void check_ansatz(const AnsatzConfig &config) {
    if (config.l1 < 1 || config.l2 < 0) {
        throw Error("ansatz needs l1 >= 1 and l2 >= 0");
    }
}

void finish_plan(PurificationPlan &plan, int vc_end, int controlled_end, int uc_end) {
    plan.param_layout.v_c = {0, vc_end};
    plan.param_layout.controlled_blocks = {vc_end, controlled_end};
    plan.param_layout.u_c = {controlled_end, uc_end};
    plan.param_layout.extra = {uc_end, plan.circuit.num_params()};
    plan.circuit.validate();
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
    case Family::Separable:
        return "separable";
    case Family::Biseparable:
        return "biseparable";
    case Family::QuantumClassical:
        return "quantum-classical";
    case Family::Incoherent:
        return "incoherent";
    case Family::Product:
        return "product";
    }
    return "unknown";
}

Family family_from_string(const std::string &name) {
    for (auto f : {Family::Separable, Family::Biseparable, Family::QuantumClassical,
                   Family::Incoherent, Family::Product}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw Error("unknown free-state family '" + name + "'");
}

int ResourceSpec::system_qubits() const {
    return std::accumulate(partition.begin(), partition.end(), 0);
}

std::vector<std::vector<int>> ResourceSpec::parts() const {
    std::vector<std::vector<int>> out;
    int next = 0;
    for (int w : partition) {
        out.push_back(qubit_range(next, w));
        next += w;
    }
    return out;
}

void ResourceSpec::validate() const {
    if (partition.empty()) {
        throw Error("resource spec needs a partition");
    }
    for (int w : partition) {
        if (w < 1) {
            throw Error("partition parts must hold at least one qubit");
        }
    }
    const auto parts_count = partition.size();
    switch (family) {
    case Family::Separable:
        if (parts_count < 2) {
            throw Error("separable family needs at least two parts");
        }
        break;
    case Family::Biseparable:
        if (parts_count < 3) {
            throw Error("biseparable family needs at least three parts");
        }
        break;
    case Family::QuantumClassical:
    case Family::Product:
        if (parts_count != 2) {
            throw Error(to_string(family) + " family needs exactly two parts (A, B)");
        }
        break;
    case Family::Incoherent:
        if (parts_count != 1) {
            throw Error("incoherent family needs exactly one part");
        }
        break;
    }
    if ((family == Family::Separable || family == Family::Biseparable) &&
        control_qubits < system_qubits()) {
        throw Error("control register must hold at least as many qubits as the system");
    }
}

std::vector<int> PurificationPlan::ancilla_qubits() const {
    return qubit_range(system_qubits, total_qubits - system_qubits);
}

std::vector<int> PurificationPlan::system_register() const {
    return qubit_range(0, system_qubits);
}

std::span<const ParamOp> PurificationPlan::segment(const std::string &name) const {
    const auto it = segments.find(name);
    if (it == segments.end()) {
        throw Error("plan has no stage named '" + name + "'");
    }
    return std::span<const ParamOp>(circuit.ops()).subspan(it->second.begin,
                                                           it->second.end - it->second.begin);
}

StateVector PurificationPlan::prepare(std::span<const double> theta) const {
    const auto ops = bind(circuit, theta);
    return apply_ops(StateVector(total_qubits), ops);
}

DensityMatrix PurificationPlan::free_state(std::span<const double> theta) const {
    return partial_trace(prepare(theta), system_register());
}

StateVector PurificationPlan::embed_fixed(const StateVector &fixed) const {
    const int width = static_cast<int>(purifying_register.size());
    if (fixed.num_qubits() != system_qubits + width) {
        throw Error("fixed purification width does not match the plan");
    }
    if (purifying_register != qubit_range(system_qubits, width)) {
        throw Error("purifying register must follow the system qubits");
    }
    CVector amps = CVector::Zero(Eigen::Index{1} << total_qubits);
    amps.head(fixed.dim()) = fixed.amplitudes();
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector fixed_purification(const DensityMatrix &rho, int n_c) {
    const DensityMatrix checked = DensityMatrix::from_matrix(rho.matrix());
    const int n = checked.num_qubits();
    if (n_c < n) {
        throw Error("purifying register needs at least " + std::to_string(n) + " qubits");
    }
    const auto eig = hermitian_eigen(checked.matrix());
    struct Term {
        double value;
        CVector vec;
    };
    std::vector<Term> terms;
    double kept = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) < 1e-12) {
            continue;
        }
        CVector v = eig.vectors.col(i);
        fix_global_phase(v);
        terms.push_back({eig.values(i), std::move(v)});
        kept += eig.values(i);
    }
    auto lexicographic_less = [](const CVector &a, const CVector &b) {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a(i).real() != b(i).real()) {
                return a(i).real() < b(i).real();
            }
            if (a(i).imag() != b(i).imag()) {
                return a(i).imag() < b(i).imag();
            }
        }
        return false;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const Term &a, const Term &b) {
        if (std::abs(a.value - b.value) > 1e-10) {
            return a.value > b.value;
        }
        return lexicographic_less(a.vec, b.vec);
    });
    const Eigen::Index dsys = checked.dim();
    CVector amps = CVector::Zero(dsys << n_c);
    for (std::size_t j = 0; j < terms.size(); ++j) {
        amps.segment(static_cast<Eigen::Index>(j) * dsys, dsys) =
            std::sqrt(terms[j].value / kept) * terms[j].vec;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector fixed_purification_for(const PurificationPlan &plan, const DensityMatrix &rho) {
    if (rho.num_qubits() != plan.system_qubits) {
        throw Error("density matrix has " + std::to_string(rho.num_qubits()) +
                    " qubits, plan expects " + std::to_string(plan.system_qubits));
    }
    return plan.embed_fixed(
        fixed_purification(rho, static_cast<int>(plan.purifying_register.size())));
}

PurificationPlan separable_purification(const ResourceSpec &spec, const AnsatzConfig &config) {
    spec.validate();
    check_ansatz(config);
    if (spec.family != Family::Separable) {
        throw Error("separable_purification called with family " + to_string(spec.family));
    }
    const int n = spec.system_qubits();
    const int nc = spec.control_qubits;
    auto plan = new_plan(spec, config, n + nc);
    const auto c = qubit_range(n, nc);
    plan.registers["C"] = c;
    plan.purifying_register = c;
    StageRecorder rec(plan);

    rec.begin();
    plan.circuit.append(build_vc(nc, config.l1), c);
    rec.end("v_c");
    const int vc_end = rec.params();

    // One controlled block per system qubit: sum_j |j><j|_C (x) Rot_j.
    rec.begin();
    const std::size_t values = std::size_t{1} << nc;
    for (const auto &part : plan.parts) {
        for (int q : part) {
            ParamOp op;
            op.kind = OpKind::ControlledBlock;
            op.controls = c;
            op.targets = {q};
            for (std::size_t j = 0; j < values; ++j) {
                op.blocks.push_back(ParamGate::rot(plan.circuit.add_params(3)));
            }
            plan.circuit.push(std::move(op));
        }
    }
    rec.end("controlled");
    const int controlled_end = rec.params();

    rec.begin();
    plan.circuit.append(build_expressive(nc, config), c);
    rec.end("u_c");
    finish_plan(plan, vc_end, controlled_end, rec.params());
    return plan;
}

PurificationPlan biseparable_purification(const ResourceSpec &spec, const AnsatzConfig &config) {
    spec.validate();
    check_ansatz(config);
    if (spec.family != Family::Biseparable) {
        throw Error("biseparable_purification called with family " + to_string(spec.family));
    }
    const int n = spec.system_qubits();
    const int nc = spec.control_qubits;
    const int num_parts = static_cast<int>(spec.partition.size());
    const int num_bip = (1 << (num_parts - 1)) - 1;
    const int w2 = ceil_log2(num_bip);
    auto plan = new_plan(spec, config, n + nc + w2);
    const auto c1 = qubit_range(n, nc);
    const auto c2 = qubit_range(n + nc, w2);
    const auto control = concat(c1, c2);
    plan.registers["C1"] = c1;
    plan.registers["C2"] = c2;
    plan.purifying_register = c1;

    // Side B collects the parts named by a non-empty subset of parts 1..M-1;
    // part 0 always sits on the complementary side.
    for (int mask = 1; mask <= num_bip; ++mask) {
        std::vector<int> side_b;
        for (int m = 1; m < num_parts; ++m) {
            if ((mask >> (m - 1)) & 1) {
                const auto &part = plan.parts[static_cast<std::size_t>(m)];
                side_b.insert(side_b.end(), part.begin(), part.end());
            }
        }
        auto cut = oracle::Bipartition::of(side_b, n);
        std::swap(cut.side_a, cut.side_b);
        plan.bipartitions.push_back(std::move(cut));
    }

    StageRecorder rec(plan);
    rec.begin();
    plan.circuit.append(build_vc(nc + w2, config.l1), control);
    rec.end("v_c");
    const int vc_end = rec.params();

    // C_2 values beyond the last bipartition reuse bipartition k mod num_bip
    // with their own parameters, so every slot prepares a biseparable term.
    rec.begin();
    const std::size_t values = std::size_t{1} << (nc + w2);
    for (int slot = 0; slot < (1 << w2); ++slot) {
        const auto &cut = plan.bipartitions[static_cast<std::size_t>(slot % num_bip)];
        for (const auto *side : {&cut.side_a, &cut.side_b}) {
            const int width = static_cast<int>(side->size());
            ParamOp op;
            op.kind = OpKind::ControlledBlock;
            op.controls = control;
            op.targets = *side;
            for (std::size_t v = 0; v < values; ++v) {
                if (static_cast<int>(v >> nc) == slot) {
                    op.blocks.push_back(general_unitary(plan.circuit, width));
                } else {
                    op.blocks.push_back(ParamGate::identity(width));
                }
            }
            plan.circuit.push(std::move(op));
        }
    }
    rec.end("controlled");
    const int controlled_end = rec.params();

    rec.begin();
    plan.circuit.append(build_expressive(nc + w2, config), control);
    rec.end("u_c");
    finish_plan(plan, vc_end, controlled_end, rec.params());
    return plan;
}

PurificationPlan qc_purification(const ResourceSpec &spec, const AnsatzConfig &config) {
    spec.validate();
    check_ansatz(config);
    if (spec.family != Family::QuantumClassical) {
        throw Error("qc_purification called with family " + to_string(spec.family));
    }
    const int a = spec.partition[0];
    const int b = spec.partition[1];
    const int n = a + b;
    auto plan = new_plan(spec, config, 2 * n);
    const auto reg_a = qubit_range(0, a);
    const auto reg_b = qubit_range(a, b);
    const auto c1 = qubit_range(n, b);
    const auto c2 = qubit_range(n + b, a);
    plan.registers["A"] = reg_a;
    plan.registers["B"] = reg_b;
    plan.registers["C1"] = c1;
    plan.registers["C2"] = c2;
    plan.purifying_register = concat(c1, c2);
    StageRecorder rec(plan);

    rec.begin();
    plan.circuit.append(build_vc(b, config.l1), reg_b);
    rec.end("v_b");
    const int vc_end = rec.params();

    rec.begin();
    plan.circuit.push(fixed_controlled_shift(reg_b, c1));
    rec.end("copy_b");

    // V_j on C2 keyed by C1: layers of C1-controlled R_Y followed by a CNOT chain.
    rec.begin();
    const std::size_t b_values = std::size_t{1} << b;
    for (int layer = 0; layer < config.l1; ++layer) {
        for (int q : c2) {
            ParamOp op;
            op.kind = OpKind::ControlledBlock;
            op.controls = c1;
            op.targets = {q};
            for (std::size_t j = 0; j < b_values; ++j) {
                op.blocks.push_back(ParamGate::ry(plan.circuit.add_params(1)));
            }
            plan.circuit.push(std::move(op));
        }
        for (std::size_t i = 0; i + 1 < c2.size(); ++i) {
            plan.circuit.push_cnot(c2[i], c2[i + 1]);
        }
    }
    rec.end("v_j");

    rec.begin();
    plan.circuit.push(fixed_controlled_shift(c2, reg_a));
    rec.end("shift_a");

    rec.begin();
    {
        ParamOp op;
        op.kind = OpKind::ControlledBlock;
        op.controls = reg_b;
        op.targets = reg_a;
        for (std::size_t j = 0; j < b_values; ++j) {
            op.blocks.push_back(general_unitary(plan.circuit, a));
        }
        plan.circuit.push(std::move(op));
    }
    rec.end("u_j");
    const int controlled_end = rec.params();

    rec.begin();
    plan.circuit.append(build_expressive(n, config), plan.purifying_register);
    rec.end("u_c");
    const int uc_end = rec.params();

    rec.begin();
    plan.circuit.push_gate(reg_b, general_unitary(plan.circuit, b));
    rec.end("u_b");
    finish_plan(plan, vc_end, controlled_end, uc_end);
    return plan;
}

PurificationPlan incoherent_purification(const ResourceSpec &spec, const AnsatzConfig &config) {
    spec.validate();
    check_ansatz(config);
    if (spec.family != Family::Incoherent) {
        throw Error("incoherent_purification called with family " + to_string(spec.family));
    }
    const int n = spec.system_qubits();
    auto plan = new_plan(spec, config, 2 * n);
    const auto reg_a = qubit_range(0, n);
    const auto reg_b = qubit_range(n, n);
    plan.registers["A"] = reg_a;
    plan.registers["B"] = reg_b;
    plan.purifying_register = reg_b;
    StageRecorder rec(plan);

    rec.begin();
    plan.circuit.append(build_vc(n, config.l1), reg_a);
    rec.end("v_a");
    const int vc_end = rec.params();

    rec.begin();
    plan.circuit.push(fixed_controlled_shift(reg_a, reg_b));
    rec.end("copy");

    rec.begin();
    plan.circuit.append(build_expressive(n, config), reg_b);
    rec.end("u_c");
    finish_plan(plan, vc_end, vc_end, rec.params());
    return plan;
}

PurificationPlan product_purification(const ResourceSpec &spec, const AnsatzConfig &config) {
    spec.validate();
    check_ansatz(config);
    if (spec.family != Family::Product) {
        throw Error("product_purification called with family " + to_string(spec.family));
    }
    const int a = spec.partition[0];
    const int b = spec.partition[1];
    const int n = a + b;
    auto plan = new_plan(spec, config, 2 * n);
    const auto reg_a = qubit_range(0, a);
    const auto reg_b = qubit_range(a, b);
    const auto c1 = qubit_range(n, a);
    const auto c2 = qubit_range(n + a, b);
    plan.registers["A"] = reg_a;
    plan.registers["B"] = reg_b;
    plan.registers["C1"] = c1;
    plan.registers["C2"] = c2;
    plan.purifying_register = concat(c1, c2);
    StageRecorder rec(plan);

    rec.begin();
    plan.circuit.append(build_vc(a, config.l1), c1);
    plan.circuit.append(build_vc(b, config.l1), c2);
    rec.end("v_c");
    const int vc_end = rec.params();

    rec.begin();
    plan.circuit.push(fixed_controlled_shift(c1, reg_a));
    plan.circuit.push(fixed_controlled_shift(c2, reg_b));
    rec.end("shift");

    rec.begin();
    plan.circuit.append(build_expressive(n, config), plan.purifying_register);
    rec.end("u_c");
    const int uc_end = rec.params();

    rec.begin();
    plan.circuit.push_gate(reg_a, general_unitary(plan.circuit, a));
    rec.end("u_a");
    rec.begin();
    plan.circuit.push_gate(reg_b, general_unitary(plan.circuit, b));
    rec.end("u_b");
    finish_plan(plan, vc_end, vc_end, uc_end);
    return plan;
}

PurificationPlan build_plan(const ResourceSpec &spec, const AnsatzConfig &config) {
    switch (spec.family) {
    case Family::Separable:
        return separable_purification(spec, config);
    case Family::Biseparable:
        return biseparable_purification(spec, config);
    case Family::QuantumClassical:
        return qc_purification(spec, config);
    case Family::Incoherent:
        return incoherent_purification(spec, config);
    case Family::Product:
        return product_purification(spec, config);
    }
    throw Error("unknown family");
}

namespace {

bool same_set(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool is_pure(const CMatrix &rho) {
    return std::abs((rho * rho).trace().real() - 1.0) <= 1e-8;
}

std::size_t gather(std::size_t index, const std::vector<int> &qubits) {
    std::size_t v = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
        v |= ((index >> qubits[b]) & 1U) << b;
    }
    return v;
}

CMatrix assemble_term(const FreeTerm &term, int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    CMatrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Complex v = 1.0;
            for (const auto &f : term.factors) {
                v *= f.rho(static_cast<Eigen::Index>(gather(static_cast<std::size_t>(i), f.qubits)),
                           static_cast<Eigen::Index>(gather(static_cast<std::size_t>(j), f.qubits)));
            }
            out(i, j) = v;
        }
    }
    return out;
}

bool is_union_of_parts(const std::vector<int> &qubits, const std::vector<std::vector<int>> &parts) {
    std::size_t covered = 0;
    for (const auto &p : parts) {
        if (contains_all(qubits, p)) {
            covered += p.size();
        } else if (!contains_none(qubits, p)) {
            return false;
        }
    }
    return covered == qubits.size();
}

void check_structure(const ResourceSpec &spec, const FreeComponents &components) {
    const auto parts = spec.parts();
    const int n = spec.system_qubits();
    for (const auto &t : components) {
        std::vector<int> all;
        for (const auto &f : t.factors) {
            const auto d = Eigen::Index{1} << f.qubits.size();
            if (f.rho.rows() != d || f.rho.cols() != d) {
                throw Error("factor matrix does not match its qubit list");
            }
            if (!is_hermitian(f.rho, 1e-9) || std::abs(f.rho.trace().real() - 1.0) > 1e-9 ||
                hermitian_eigen(f.rho).values.minCoeff() < -1e-9) {
                throw Error("factor is not a density matrix");
            }
            all.insert(all.end(), f.qubits.begin(), f.qubits.end());
        }
        if (!same_set(all, qubit_range(0, n)) || static_cast<int>(all.size()) != n) {
            throw Error("term factors must cover every system qubit exactly once");
        }
    }
    switch (spec.family) {
    case Family::Separable:
        for (const auto &t : components) {
            if (t.factors.size() != parts.size()) {
                throw Error("separable term needs one factor per part");
            }
            for (const auto &f : t.factors) {
                const bool matches = std::any_of(parts.begin(), parts.end(), [&](const auto &p) {
                    return same_set(p, f.qubits);
                });
                if (!matches || !is_pure(f.rho)) {
                    throw Error("separable factor must be a pure state on one part");
                }
            }
        }
        break;
    case Family::Biseparable:
        for (const auto &t : components) {
            if (t.factors.size() != 2) {
                throw Error("biseparable term needs two factors");
            }
            for (const auto &f : t.factors) {
                if (!is_union_of_parts(f.qubits, parts) || !is_pure(f.rho)) {
                    throw Error("biseparable factor must be a pure state on a union of parts");
                }
            }
        }
        break;
    case Family::QuantumClassical:
        for (std::size_t i = 0; i < components.size(); ++i) {
            const auto &t = components[i];
            if (t.factors.size() != 2 || !same_set(t.factors[0].qubits, parts[0]) ||
                !same_set(t.factors[1].qubits, parts[1]) || !is_pure(t.factors[1].rho)) {
                throw Error("quantum-classical term needs (A state, pure B state)");
            }
            for (std::size_t k = 0; k < i; ++k) {
                const double overlap =
                    (t.factors[1].rho * components[k].factors[1].rho).trace().real();
                if (overlap > 1e-8) {
                    throw Error("quantum-classical B states must be orthogonal");
                }
            }
        }
        break;
    case Family::Incoherent:
        for (const auto &t : components) {
            const auto &rho = t.factors.front().rho;
            if (t.factors.size() != 1 || !is_pure(rho) ||
                max_abs(rho - CMatrix(rho.diagonal().asDiagonal())) > 1e-10) {
                throw Error("incoherent term must be a computational basis projector");
            }
        }
        break;
    case Family::Product:
        if (components.size() != 1 || components[0].factors.size() != 2 ||
            !same_set(components[0].factors[0].qubits, parts[0])) {
            throw Error("product state needs one term with factors on A and B");
        }
        break;
    }
}

// Runs `ops` on a local register holding `qubits`, starting from basis state
// `initial`. Ops controlled from outside the register use block `external`;
// ops acting outside the register are skipped.
CVector local_state(std::span<const ParamOp> ops, std::span<const double> theta,
                    const std::vector<int> &qubits, std::size_t external,
                    std::size_t initial = 0) {
    CVector amps = CVector::Zero(Eigen::Index{1} << qubits.size());
    amps(static_cast<Eigen::Index>(initial)) = 1.0;
    auto local = [&](const std::vector<int> &qs) {
        std::vector<int> out;
        for (int q : qs) {
            out.push_back(static_cast<int>(std::find(qubits.begin(), qubits.end(), q) -
                                           qubits.begin()));
        }
        return out;
    };
    for (const auto &op : ops) {
        if (contains_none(qubits, op.targets)) {
            continue;
        }
        if (!contains_all(qubits, op.targets)) {
            throw Error("stage op straddles the extracted register");
        }
        CircuitOp bound;
        bound.targets = local(op.targets);
        if (op.controls.empty()) {
            bound.blocks = {op.blocks[0].matrix(theta)};
        } else if (contains_all(qubits, op.controls)) {
            bound.controls = local(op.controls);
            for (const auto &b : op.blocks) {
                bound.blocks.push_back(b.matrix(theta));
            }
        } else if (contains_none(qubits, op.controls)) {
            bound.blocks = {op.blocks[external].matrix(theta)};
        } else {
            throw Error("stage op has controls on both sides of the extracted register");
        }
        apply_in_place(amps, bound);
    }
    return amps;
}

std::vector<double> probabilities_of(const CVector &amps) {
    std::vector<double> p(static_cast<std::size_t>(amps.size()));
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(amps(i));
    }
    return p;
}

CMatrix projector(const CVector &v) { return v * v.adjoint(); }

}  // namespace

DensityMatrix classical_free_state(const ResourceSpec &spec, const FreeComponents &components) {
    spec.validate();
    if (components.empty()) {
        throw Error("free state needs at least one term");
    }
    double total = 0.0;
    for (const auto &t : components) {
        if (!(t.weight >= -1e-12) || !std::isfinite(t.weight)) {
            throw Error("term weights must be non-negative");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw Error("term weights sum to " + std::to_string(total) + ", expected 1");
    }
    check_structure(spec, components);
    const int n = spec.system_qubits();
    const Eigen::Index d = Eigen::Index{1} << n;
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto &t : components) {
        if (t.weight > 0.0) {
            out += t.weight * assemble_term(t, n);
        }
    }
    return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()), 1e-9);
}

FreeComponents extract_components(const PurificationPlan &plan, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != plan.num_params()) {
        throw Error("extract_components: parameter count mismatch");
    }
    FreeComponents out;
    const auto &regs = plan.registers;
    switch (plan.spec.family) {
    case Family::Separable: {
        const auto &c = regs.at("C");
        const auto p = probabilities_of(local_state(plan.segment("v_c"), theta, c, 0));
        for (std::size_t j = 0; j < p.size(); ++j) {
            FreeTerm t{p[j], {}};
            for (const auto &part : plan.parts) {
                t.factors.push_back(
                    {part, projector(local_state(plan.segment("controlled"), theta, part, j))});
            }
            out.push_back(std::move(t));
        }
        break;
    }
    case Family::Biseparable: {
        const auto control = concat(regs.at("C1"), regs.at("C2"));
        const int nc = static_cast<int>(regs.at("C1").size());
        const auto p = probabilities_of(local_state(plan.segment("v_c"), theta, control, 0));
        for (std::size_t v = 0; v < p.size(); ++v) {
            const std::size_t slot = v >> nc;
            const auto &cut = plan.bipartitions[slot % plan.bipartitions.size()];
            // Each slot owns two consecutive ops (side a, side b); the others
            // act trivially for this control value.
            const auto ops = plan.segment("controlled").subspan(2 * slot, 2);
            FreeTerm t{p[v], {}};
            for (const auto *side : {&cut.side_a, &cut.side_b}) {
                t.factors.push_back({*side, projector(local_state(ops, theta, *side, v))});
            }
            out.push_back(std::move(t));
        }
        break;
    }
    case Family::QuantumClassical: {
        const auto &a = regs.at("A");
        const auto &b = regs.at("B");
        const auto &c2 = regs.at("C2");
        const auto p = probabilities_of(local_state(plan.segment("v_b"), theta, b, 0));
        const auto &u_j = plan.segment("u_j").front();
        for (std::size_t j = 0; j < p.size(); ++j) {
            const auto alpha = probabilities_of(local_state(plan.segment("v_j"), theta, c2, j));
            CMatrix diag = CMatrix::Zero(Eigen::Index{1} << a.size(), Eigen::Index{1} << a.size());
            for (std::size_t k = 0; k < alpha.size(); ++k) {
                diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = alpha[k];
            }
            const CMatrix u = u_j.blocks[j].matrix(theta);
            const CVector phi = local_state(plan.segment("u_b"), theta, b, 0, j);
            out.push_back({p[j], {{a, u * diag * u.adjoint()}, {b, projector(phi)}}});
        }
        break;
    }
    case Family::Incoherent: {
        const auto &a = regs.at("A");
        const auto p = probabilities_of(local_state(plan.segment("v_a"), theta, a, 0));
        for (std::size_t j = 0; j < p.size(); ++j) {
            CMatrix proj = CMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                         static_cast<Eigen::Index>(p.size()));
            proj(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
            out.push_back({p[j], {{a, proj}}});
        }
        break;
    }
    case Family::Product: {
        auto marginal = [&](const std::string &anc, const std::string &sys, const char *rot) {
            const auto p = probabilities_of(local_state(plan.segment("v_c"), theta, regs.at(anc), 0));
            const CMatrix u = plan.segment(rot).front().blocks[0].matrix(theta);
            CMatrix diag = CMatrix::Zero(static_cast<Eigen::Index>(p.size()),
                                         static_cast<Eigen::Index>(p.size()));
            for (std::size_t k = 0; k < p.size(); ++k) {
                diag(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = p[k];
            }
            return Factor{regs.at(sys), u * diag * u.adjoint()};
        };
        out.push_back({1.0, {marginal("C1", "A", "u_a"), marginal("C2", "B", "u_b")}});
        break;
    }
    }
    return out;
}

}  // namespace bures
