// Copyright 2026 The cqo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "cqo/analytics.hpp"
#include "cqo/mps.hpp"
#include "oracles.hpp"

using namespace cqo;
using Eigen::MatrixXcd;

namespace {

DenseState random_dense(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_state(n, rng);
}

}  // namespace

TEST(Mps, DenseRoundTrip) {
    for (int n = 1; n <= 7; ++n) {
        const DenseState psi = random_dense(n, 100 + n);
        const Mps m = from_dense(psi);
        m.validate();
        EXPECT_TRUE(is_left_canonical(m));
        EXPECT_NEAR(fidelity(m, psi), 1.0, 1e-12);
        const DenseState back = to_dense(m);
        EXPECT_NEAR(fidelity(back, psi), 1.0, 1e-12);
        const auto bonds = m.bond_dims();
        for (int b = 0; b + 1 < n; ++b) EXPECT_LE(bonds[b], 1 << std::min(b + 1, n - b - 1));
    }
}

TEST(Mps, ProductConstructors) {
    EXPECT_NEAR(fidelity(to_dense(plus_state(5)), DenseState::plus(5)), 1.0, 1e-14);
    const Bitstring bits = bits_from_string("10110");
    EXPECT_NEAR(fidelity(to_dense(basis_mps(bits)), DenseState::basis(bits)), 1.0, 1e-14);
    EXPECT_EQ(plus_state(5).max_bond(), 1);
}

TEST(Mps, AmplitudeAndProbabilitiesMatchDense) {
    const DenseState psi = random_dense(6, 3);
    const Mps m = from_dense(psi);
    const auto probs = probabilities(m);
    for (std::uint64_t s = 0; s < psi.dim(); ++s) {
        EXPECT_NEAR(std::abs(amplitude(m, bits_from_index(s, 6)) - psi.amplitudes[s]), 0.0, 1e-12);
        EXPECT_NEAR(probs[s], std::norm(psi.amplitudes[s]), 1e-12);
    }
}

TEST(Mps, OverlapMatchesDenseInnerProduct) {
    std::mt19937_64 rng(9);
    const Mps a = random_mps(6, 3, rng), b = random_mps(6, 4, rng);
    const DenseState da = to_dense(a), db = to_dense(b);
    const cplx expect = inner(da, db) * norm(a) * norm(b);
    EXPECT_NEAR(std::abs(overlap(a, b) - expect), 0.0, 1e-10 * std::abs(expect) + 1e-12);
    EXPECT_NEAR(fidelity(a, b), fidelity(da, db), 1e-10);
}

TEST(Mps, TruncationMatchesDenseSvdOnCentralBond) {
    // n = 4 has bonds (2, 4, 2); chi = 2 only cuts the middle one, which a dense SVD can check.
    const DenseState psi = random_dense(4, 21);
    MatrixXcd mat(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) mat(r, c) = psi.amplitudes[4 * r + c];
    Eigen::JacobiSVD<MatrixXcd> svd(mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto s = svd.singularValues();
    const double kept = s[0] * s[0] + s[1] * s[1];
    MatrixXcd approx = svd.matrixU().leftCols(2) * s.head(2).asDiagonal() * svd.matrixV().leftCols(2).adjoint();
    approx /= approx.norm();

    const TruncationResult t = canonical_truncate(from_dense(psi), 2);
    EXPECT_NEAR(t.error, std::sqrt(1.0 - kept), 1e-10);
    EXPECT_NEAR(norm(t.mps), 1.0, 1e-12);
    EXPECT_TRUE(is_left_canonical(t.mps));
    EXPECT_NEAR(fidelity(t.mps, psi), kept, 1e-10);
    const DenseState d = to_dense(t.mps);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::norm(d.amplitudes[4 * r + c]), std::norm(approx(r, c)), 1e-10);
}

TEST(Mps, TruncationErrorBoundsInfidelity) {
    const DenseState psi = random_dense(8, 5);
    for (int chi : {1, 2, 4, 8}) {
        const TruncationResult t = canonical_truncate(from_dense(psi), chi);
        EXPECT_LE(t.mps.max_bond(), chi);
        // 1 - F <= 2 * eps^2 for the sequential sweep bound.
        EXPECT_LE(1.0 - fidelity(t.mps, psi), 2.0 * t.error * t.error + 1e-12);
    }
    EXPECT_NEAR(canonical_truncate(from_dense(psi), 16).error, 0.0, 1e-12);
    EXPECT_THROW(canonical_truncate(from_dense(psi), 0), std::invalid_argument);
}

TEST(Mps, TwoSiteGateMatchesDenseKronecker) {
    std::mt19937_64 rng(4);
    const DenseState psi = random_dense(5, 8);
    for (int i = 0; i + 1 < 5; ++i) {
        const Eigen::Matrix4cd g = oracle::random_unitary4(rng);
        MatrixXcd full = MatrixXcd::Identity(1 << i, 1 << i);
        full = Eigen::kroneckerProduct(full, MatrixXcd(g)).eval();
        full = Eigen::kroneckerProduct(full, MatrixXcd::Identity(1 << (5 - i - 2), 1 << (5 - i - 2))).eval();
        const Eigen::VectorXcd expect = full * psi.amplitudes;
        const Mps out = apply_two_site_gate(from_dense(psi), i, g);
        const DenseState d = to_dense(out);
        EXPECT_NEAR(std::abs(expect.dot(d.amplitudes)), 1.0, 1e-10);
    }
}

TEST(Mps, SamplingFollowsBornRule) {
    const DenseState psi = random_dense(3, 11);
    const Mps m = from_dense(psi);
    const int k = 40000;
    const auto draws = sample(m, k, 7);
    ASSERT_EQ(static_cast<int>(draws.size()), k);
    std::map<std::uint64_t, int> counts;
    for (const auto& b : draws) ++counts[index_from_bits(b)];
    for (std::uint64_t s = 0; s < psi.dim(); ++s) {
        const double p = std::norm(psi.amplitudes[s]);
        const double sd = std::sqrt(p * (1 - p) / k);
        EXPECT_NEAR(counts[s] / static_cast<double>(k), p, 5 * sd + 1e-4);
    }
    const auto again = sample(m, 50, 7), other = sample(m, 50, 8);
    EXPECT_EQ(std::vector<Bitstring>(draws.begin(), draws.begin() + 50), again);
    EXPECT_NE(again, other);
}

TEST(Mps, ValidateRejectsMismatchedBonds) {
    Mps m = plus_state(3);
    m.sites[1][0] = MatrixXcd::Zero(2, 1);
    EXPECT_THROW(m.validate(), std::invalid_argument);
}
