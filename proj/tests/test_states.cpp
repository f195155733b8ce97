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

#include "bures/oracle.hpp"
#include "bures/states.hpp"
#include "support/oracles.hpp"

namespace bures {
namespace {

using testing::Rng;

CVector phi_plus() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

TEST(States, WernerLimitsAndSpectrum) {
    EXPECT_LE((werner(0.0).matrix() - CMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((werner(1.0).matrix() - phi_plus() * phi_plus().adjoint()).cwiseAbs().maxCoeff(),
              1e-15);
    const auto ev = hermitian_eigen(werner(1.0 / 3.0).matrix()).values;
    EXPECT_NEAR(ev(0), 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(ev(1), 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(ev(2), 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(ev(3), 0.5, 1e-12);
    EXPECT_THROW(werner(-0.1), Error);
    EXPECT_THROW(werner(1.1), Error);
}

TEST(States, WernerSeparableExactlyBelowOneThird) {
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        const double c = oracle::concurrence(werner(p));
        if (p <= 1.0 / 3.0) {
            EXPECT_NEAR(c, 0.0, 1e-12) << p;
        } else {
            EXPECT_GT(c, 1e-12) << p;
        }
    }
}

TEST(States, ClusterPureAtZero) {
    const auto rho = dephased_cluster(0.0);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    // |L3> = (|+0+> + |-1->)/sqrt(2) with the first label on qubit 0.
    CVector plus(2), minus(2), zero(2), one(2);
    plus << 1, 1;
    minus << 1, -1;
    plus /= std::sqrt(2.0);
    minus /= std::sqrt(2.0);
    zero << 1, 0;
    one << 0, 1;
    const CVector l3 = (kron(plus, kron(zero, plus)) + kron(minus, kron(one, minus))) / std::sqrt(2.0);
    EXPECT_NEAR(std::norm(l3.dot(rho.matrix() * l3)), 1.0, 1e-12);
}

TEST(States, ClusterFullyDephasedIsDiagonal) {
    CMatrix m = dephased_cluster(1.0).matrix();
    m.diagonal().setZero();
    EXPECT_LE(m.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(States, ClusterMatchesKrausSum) {
    // Independent check: sum over all 8 Kraus products applied to |L3><L3|.
    const double p = 0.37;
    const auto ch = dephasing_channel(p);
    const CMatrix pure = dephased_cluster(0.0).matrix();
    CMatrix expected = CMatrix::Zero(8, 8);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                const CMatrix k = kron(ch.kraus_ops[c], kron(ch.kraus_ops[b], ch.kraus_ops[a]));
                expected += k * pure * k.adjoint();
            }
        }
    }
    EXPECT_LE((dephased_cluster(p).matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(States, ClusterBoundEntanglementInsideWindow) {
    const auto rho = dephased_cluster(0.87);
    EXPECT_LE(oracle::negativity(rho, oracle::Bipartition::of({0}, 3)), 1e-10);
    EXPECT_LE(oracle::negativity(rho, oracle::Bipartition::of({2}, 3)), 1e-10);
    EXPECT_GT(oracle::negativity(rho, oracle::Bipartition::of({1}, 3)), 1e-10);
}

TEST(States, SmolinLimits) {
    EXPECT_LE((noisy_smolin(1.0).matrix() - CMatrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff(),
              1e-15);
    const auto ev = hermitian_eigen(noisy_smolin(0.0).matrix()).values;
    for (int i = 0; i < 12; ++i) {
        EXPECT_NEAR(ev(i), 0.0, 1e-12);
    }
    for (int i = 12; i < 16; ++i) {
        EXPECT_NEAR(ev(i), 0.25, 1e-12);
    }
}

TEST(States, SmolinSingleQubitMarginalsAreMaximallyMixed) {
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
        const auto rho = noisy_smolin(p);
        for (int q = 0; q < 4; ++q) {
            const CMatrix m = testing::brute_partial_trace(rho.matrix(), {q});
            EXPECT_LE((m - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(States, SmolinIsPptAcrossEveryPairSplit) {
    // The bound entanglement of the Smolin state lives in its 2|2 splits.
    for (int k = 0; k <= 20; ++k) {
        const auto rho = noisy_smolin(k / 20.0);
        for (const auto &side : {std::vector<int>{0, 1}, {0, 2}, {0, 3}}) {
            EXPECT_LE(oracle::negativity(rho, oracle::Bipartition::of(side, 4)), 1e-10);
        }
    }
}

TEST(States, SmolinSingleQubitCutNegativity) {
    // rho_S = (I + XXXX + YYYY + ZZZZ)/16. Transposing one qubit flips the
    // YYYY sign, leaving a fourfold eigenvalue (3p - 2)/16.
    for (int k = 0; k <= 20; ++k) {
        const double p = k / 20.0;
        const double expected = std::max(0.0, (2.0 - 3.0 * p) / 4.0);
        for (const auto &cut : oracle::single_qubit_cuts(4)) {
            EXPECT_NEAR(oracle::negativity(noisy_smolin(p), cut), expected, 1e-10) << p;
        }
    }
}

TEST(States, SmolinPauliExpansion) {
    CMatrix expected = CMatrix::Identity(16, 16);
    for (int s = 1; s <= 3; ++s) {
        expected += kron(pauli(s), kron(pauli(s), kron(pauli(s), pauli(s))));
    }
    expected /= 16.0;
    EXPECT_LE((noisy_smolin(0.0).matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(States, BellStatesAreOrthonormal) {
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const Complex ov = bell_state(a / 2, a % 2).dot(bell_state(b / 2, b % 2));
            EXPECT_NEAR(std::abs(ov), a == b ? 1.0 : 0.0, 1e-15);
        }
    }
    EXPECT_LE((bell_state(0, 0) - phi_plus()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(States, ChannelExamples) {
    Rng rng(1);
    const auto rho = testing::random_density(2, rng);
    const KrausChannel id{{CMatrix::Identity(2, 2)}};
    EXPECT_LE((apply_channel(rho, id, 1).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);

    CVector plus(2);
    plus << 1, 1;
    plus /= std::sqrt(2.0);
    const auto out = apply_channel(DensityMatrix::from_pure(plus), dephasing_channel(1.0), 0);
    EXPECT_LE((out.matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);

    for (int trial = 0; trial < 10; ++trial) {
        // Random valid channel from a Stinespring isometry: K_i = (<i| (x) I) V.
        const CMatrix u = testing::random_unitary(4, rng);
        const KrausChannel ch{{u.block(0, 0, 2, 2), u.block(2, 0, 2, 2)}};
        const auto r = testing::random_density(3, rng);
        const auto o = apply_channel(r, ch, trial % 3);
        EXPECT_NEAR(o.matrix().trace().real(), 1.0, 1e-12);
    }
    EXPECT_THROW(apply_channel(rho, KrausChannel{{0.5 * CMatrix::Identity(2, 2)}}, 0), Error);
    EXPECT_THROW(apply_channel(rho, id, 2), Error);
}

TEST(States, ConstructorsProduceValidStates) {
    for (int k = 0; k <= 10; ++k) {
        const double p = k / 10.0;
        for (const auto &rho : {werner(p), dephased_cluster(p), noisy_smolin(p)}) {
            EXPECT_TRUE(is_hermitian(rho.matrix(), 1e-12));
            EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
            EXPECT_GE(hermitian_eigen(rho.matrix()).values.minCoeff(), -1e-12);
        }
    }
}

}  // namespace
}  // namespace bures
