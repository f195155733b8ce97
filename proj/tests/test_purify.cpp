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

#include <gtest/gtest.h>

#include <cmath>

#include "bures/purify.hpp"
#include "bures/states.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace bures {
namespace {

using testing::Rng;

std::vector<int> range(int begin, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) {
        v[i] = begin + i;
    }
    return v;
}

CMatrix traced(const PurificationPlan &plan, std::span<const double> theta) {
    return testing::brute_partial_trace(plan.prepare(theta).amplitudes(),
                                        range(0, plan.system_qubits));
}

struct Case {
    ResourceSpec spec;
    AnsatzConfig ansatz;
};

std::vector<Case> small_cases() {
    return {
        {{Family::Separable, {1, 1}, 2}, {1, 1, false}},
        {{Family::Separable, {1, 2}, 3}, {2, 1, false}},
        {{Family::Separable, {1, 1, 1}, 3}, {1, 0, false}},
        {{Family::Biseparable, {1, 1, 1}, 3}, {1, 1, false}},
        {{Family::QuantumClassical, {1, 1}, 1}, {1, 1, false}},
        {{Family::QuantumClassical, {2, 1}, 1}, {2, 1, false}},
        {{Family::QuantumClassical, {1, 2}, 1}, {1, 0, true}},
        {{Family::Incoherent, {2}, 1}, {1, 1, false}},
        {{Family::Incoherent, {3}, 1}, {2, 1, false}},
        {{Family::Product, {1, 1}, 1}, {1, 1, false}},
        {{Family::Product, {1, 2}, 1}, {2, 1, true}},
    };
}

TEST(FixedPurification, MaximallyMixedQubit) {
    const auto psi = fixed_purification(DensityMatrix::maximally_mixed(1), 1);
    // Tied eigenvalues: lexicographic order on (re, im) puts |1> before |0>.
    CVector expected = CVector::Zero(4);
    expected(1 + 2 * 0) = 1.0 / std::sqrt(2.0);
    expected(0 + 2 * 1) = 1.0 / std::sqrt(2.0);
    EXPECT_LE((psi.amplitudes() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FixedPurification, PureStateUsesFirstSlot) {
    Rng rng(1);
    const CVector v = testing::random_ket(2, rng);
    const auto psi = fixed_purification(DensityMatrix::from_pure(v), 2);
    CVector expected = CVector::Zero(16);
    expected.head(4) = v;
    EXPECT_TRUE(testing::equal_up_to_phase(psi.amplitudes(), expected, 1e-10));
    EXPECT_GT(psi.amplitudes().head(4).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FixedPurification, WernerWeights) {
    const double p = 0.5;
    const auto psi = fixed_purification(werner(p), 2);
    const double expected[] = {std::sqrt(0.625), std::sqrt(0.125), std::sqrt(0.125),
                               std::sqrt(0.125)};
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(psi.amplitudes().segment(4 * j, 4).norm(), expected[j], 1e-12);
    }
    const auto again = fixed_purification(werner(p), 2);
    EXPECT_EQ(psi.amplitudes(), again.amplitudes());
}

TEST(FixedPurification, TracesBackToRho) {
    Rng rng(2);
    for (int n = 1; n <= 4; ++n) {
        for (int rank : {1, 2, 1 << n}) {
            const auto rho = testing::random_density(n, rng, std::min(rank, 1 << n));
            for (int nc = n; nc <= n + 1; ++nc) {
                const auto psi = fixed_purification(rho, nc);
                EXPECT_EQ(psi.num_qubits(), n + nc);
                const CMatrix r = testing::brute_partial_trace(psi.amplitudes(), range(0, n));
                EXPECT_LE((r - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
            }
        }
    }
    EXPECT_THROW(fixed_purification(DensityMatrix::maximally_mixed(2), 1), Error);
}

TEST(Plans, SeparableZeroParameters) {
    const auto plan = build_plan({Family::Separable, {1, 1}, 2}, {1, 1, false});
    EXPECT_EQ(plan.total_qubits, 4);
    const std::vector<double> zero(plan.num_params(), 0.0);
    EXPECT_NEAR(std::abs(plan.prepare(zero).amplitudes()(0)), 1.0, 1e-12);
    EXPECT_NEAR(plan.free_state(zero).matrix()(0, 0).real(), 1.0, 1e-12);
}

TEST(Plans, WernerConfigurationCounts) {
    const auto plan = build_plan({Family::Separable, {1, 1}, 2}, {1, 16, false});
    EXPECT_EQ(plan.total_qubits, 4);
    EXPECT_EQ(plan.param_layout.v_c.size(), 2);
    // Two parts, four control values, one rotation of three angles each.
    EXPECT_EQ(plan.param_layout.controlled_blocks.size(), 24);
    EXPECT_EQ(plan.param_layout.u_c.size(), 16 * 9);
    EXPECT_EQ(plan.num_params(), 2 + 24 + 144);
}

TEST(Plans, SmolinConfigurationCounts) {
    const auto plan = build_plan({Family::Separable, {1, 1, 1, 1}, 5}, {2, 36, false});
    EXPECT_EQ(plan.total_qubits, 9);
    EXPECT_EQ(plan.param_layout.v_c.size(), 10);
    EXPECT_EQ(plan.param_layout.controlled_blocks.size(), 4 * 32 * 3);
    EXPECT_EQ(plan.param_layout.u_c.size(), 1620);
}

TEST(Plans, LayoutPartitionsParameters) {
    for (const auto &c : small_cases()) {
        const auto plan = build_plan(c.spec, c.ansatz);
        const auto &l = plan.param_layout;
        EXPECT_EQ(l.v_c.begin, 0);
        EXPECT_EQ(l.v_c.end, l.controlled_blocks.begin);
        EXPECT_EQ(l.controlled_blocks.end, l.u_c.begin);
        EXPECT_EQ(l.u_c.end, l.extra.begin);
        EXPECT_EQ(l.extra.end, plan.num_params());
        plan.circuit.validate();
    }
}

TEST(Plans, FreeStateMatchesClassicalAssembly) {
    Rng rng(3);
    for (const auto &c : small_cases()) {
        const auto plan = build_plan(c.spec, c.ansatz);
        for (int trial = 0; trial < 10; ++trial) {
            const auto theta = testing::random_angles(plan.num_params(), rng);
            const CMatrix sigma = traced(plan, theta);
            EXPECT_LE((plan.free_state(theta).matrix() - sigma).cwiseAbs().maxCoeff(), 1e-10);
            const auto assembled = classical_free_state(c.spec, extract_components(plan, theta));
            EXPECT_LE((assembled.matrix() - sigma).cwiseAbs().maxCoeff(), 1e-10)
                << to_string(c.spec.family);
        }
    }
}

TEST(Plans, PreparedStatesAreNormalized) {
    Rng rng(4);
    for (const auto &c : small_cases()) {
        const auto plan = build_plan(c.spec, c.ansatz);
        const auto theta = testing::random_angles(plan.num_params(), rng);
        EXPECT_NEAR(plan.prepare(theta).norm(), 1.0, 1e-12);
    }
}

TEST(Plans, BiseparableRegisters) {
    const auto plan = build_plan({Family::Biseparable, {1, 1, 1}, 3}, {1, 1, false});
    EXPECT_EQ(plan.registers.at("C2").size(), 2u);
    EXPECT_EQ(plan.bipartitions.size(), 3u);
    EXPECT_EQ(plan.total_qubits, 8);
    const std::vector<double> zero(plan.num_params(), 0.0);
    const CMatrix sigma = traced(plan, zero);
    EXPECT_NEAR(sigma(0, 0).real(), 1.0, 1e-12);
    // Four parts: 2^3 - 1 = 7 bipartitions on three C2 qubits.
    const auto four = build_plan({Family::Biseparable, {1, 1, 1, 1}, 4}, {1, 0, false});
    EXPECT_EQ(four.registers.at("C2").size(), 3u);
    EXPECT_EQ(four.bipartitions.size(), 7u);
}

TEST(Plans, IncoherentExamples) {
    const auto plan = build_plan({Family::Incoherent, {1}, 1}, {1, 1, false});
    std::vector<double> theta(plan.num_params(), 0.0);
    EXPECT_NEAR(traced(plan, theta)(0, 0).real(), 1.0, 1e-12);
    theta[0] = kPi / 2;
    const CMatrix sigma = traced(plan, theta);
    EXPECT_LE((sigma - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Plans, QuantumClassicalExamples) {
    Rng rng(5);
    const auto plan = build_plan({Family::QuantumClassical, {1, 1}, 1}, {1, 1, false});
    EXPECT_EQ(plan.total_qubits, 4);
    const std::vector<double> zero(plan.num_params(), 0.0);
    EXPECT_NEAR(traced(plan, zero)(0, 0).real(), 1.0, 1e-12);
    const auto theta = testing::random_angles(plan.num_params(), rng);
    const auto probs = register_probabilities(plan.prepare(theta), plan.registers.at("C1"));
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Plans, ProductExamples) {
    const auto plan = build_plan({Family::Product, {1, 1}, 1}, {1, 1, false});
    const std::vector<double> zero(plan.num_params(), 0.0);
    EXPECT_NEAR(traced(plan, zero)(0, 0).real(), 1.0, 1e-12);
}

TEST(Plans, SpecValidation) {
    EXPECT_THROW(build_plan({Family::Separable, {2}, 2}, {}), Error);
    EXPECT_THROW(build_plan({Family::Separable, {1, 1}, 1}, {}), Error);
    EXPECT_THROW(build_plan({Family::Biseparable, {1, 1}, 2}, {}), Error);
    EXPECT_THROW(build_plan({Family::Incoherent, {1, 1}, 2}, {}), Error);
    EXPECT_THROW(build_plan({Family::Product, {1, 1, 1}, 1}, {}), Error);
    EXPECT_THROW(build_plan({Family::QuantumClassical, {1}, 1}, {}), Error);
    EXPECT_THROW(build_plan({Family::Separable, {1, 0}, 2}, {}), Error);
    EXPECT_THROW(build_plan({Family::Separable, {1, 1}, 2}, {0, 1, false}), Error);
    EXPECT_THROW(family_from_string("entangled"), Error);
    EXPECT_EQ(family_from_string("quantum-classical"), Family::QuantumClassical);
}

TEST(Plans, EmbedFixedPadsExtraRegisters) {
    const auto plan = build_plan({Family::QuantumClassical, {1, 1}, 1}, {1, 1, false});
    Rng rng(6);
    const auto rho = testing::random_density(2, rng);
    const auto psi = fixed_purification_for(plan, rho);
    EXPECT_EQ(psi.num_qubits(), plan.total_qubits);
    const CMatrix r = testing::brute_partial_trace(psi.amplitudes(), range(0, 2));
    EXPECT_LE((r - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_THROW(fixed_purification_for(plan, testing::random_density(3, rng)), Error);
}

TEST(ClassicalFreeState, Examples) {
    const ResourceSpec spec{Family::Separable, {1, 1}, 2};
    CMatrix zero = CMatrix::Zero(2, 2), one = CMatrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    one(1, 1) = 1.0;
    const FreeComponents single{{1.0, {{{0}, zero}, {{1}, one}}}};
    const CMatrix s1 = classical_free_state(spec, single).matrix();
    // |0> on qubit 0, |1> on qubit 1: index 2.
    EXPECT_NEAR(s1(2, 2).real(), 1.0, 1e-15);
    const FreeComponents pair{{0.5, {{{0}, zero}, {{1}, zero}}}, {0.5, {{{0}, one}, {{1}, one}}}};
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    EXPECT_LE((classical_free_state(spec, pair).matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
    const FreeComponents bad{{0.7, {{{0}, zero}, {{1}, zero}}}};
    EXPECT_THROW(classical_free_state(spec, bad), Error);
    const FreeComponents negative{{1.5, {{{0}, zero}, {{1}, zero}}}, {-0.5, {{{0}, one}, {{1}, one}}}};
    EXPECT_THROW(classical_free_state(spec, negative), Error);
    const FreeComponents mixed_factor{{1.0, {{{0}, CMatrix(CMatrix::Identity(2, 2) / 2.0)}, {{1}, zero}}}};
    EXPECT_THROW(classical_free_state(spec, mixed_factor), Error);
}

TEST(Plans, FamilyMembership) {
    Rng rng(7);
    for (const auto &[spec, ansatz] : testing::small_plan_specs()) {
        const auto plan = build_plan(spec, ansatz);
        for (int trial = 0; trial < 20; ++trial) {
            const auto theta = testing::random_angles(plan.num_params(), rng);
            EXPECT_LE(testing::family_residual(plan, theta), 1e-10) << to_string(spec.family);
        }
    }
}

TEST(Plans, ProductStateHasNoMutualInformation) {
    Rng rng(8);
    const auto plan = build_plan({Family::Product, {1, 2}, 1}, {2, 1, false});
    for (int trial = 0; trial < 10; ++trial) {
        const auto theta = testing::random_angles(plan.num_params(), rng);
        const CMatrix sigma = plan.free_state(theta).matrix();
        const double mi = von_neumann_entropy(testing::brute_partial_trace(sigma, {0})) +
                          von_neumann_entropy(testing::brute_partial_trace(sigma, {1, 2})) -
                          von_neumann_entropy(sigma);
        EXPECT_NEAR(mi, 0.0, 1e-9);
    }
}

}  // namespace
}  // namespace bures
