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

#include <random>

#include "cqo/analytics.hpp"
#include "cqo/stats.hpp"
#include "oracles.hpp"

using namespace cqo;

namespace {

Spectrum small_spectrum(std::uint64_t seed, int n = 6) { return brute_spectrum(maxcut_to_ising(random_graph(n, 0.5, seed))); }

}  // namespace

TEST(Entropy, KnownValues) {
    EXPECT_NEAR(diagonal_entropy(DenseState::plus(5)), 5.0, 1e-12);
    EXPECT_NEAR(diagonal_entropy(DenseState::basis(4, 3)), 0.0, 1e-12);
    EXPECT_NEAR(diagonal_entropy_nats(DenseState::plus(3)), 3.0 * kLn2, 1e-12);
    const std::vector<double> p{0.5, 0.25, 0.25};
    EXPECT_NEAR(shannon_entropy_bits(p), 1.5, 1e-12);
}

TEST(Gibbs, ProbabilitiesMatchBoltzmannOracle) {
    const Spectrum sp = small_spectrum(4);
    for (double t : {0.0, 0.3, 2.0, -1.0}) {
        const auto p = gibbs_probabilities(sp, t);
        const Eigen::VectorXd q = oracle::boltzmann_probabilities(sp.energies, t);
        for (std::size_t s = 0; s < p.size(); ++s) EXPECT_NEAR(p[s], q[s], 1e-12);
        const DenseState psi = exact_gibbs(sp, t);
        for (std::size_t s = 0; s < p.size(); ++s) EXPECT_NEAR(std::norm(psi.amplitudes[s]), q[s], 1e-12);
    }
}

TEST(Gibbs, TemperatureConventionUsesAmplitudeWeights) {
    // Amplitudes e^{-E/T}, so probabilities e^{-2E/T}.
    const Spectrum sp = small_spectrum(5);
    const DenseState psi = gibbs_at_temperature(sp, 0.5);
    const double ratio = std::abs(psi.amplitudes[1]) / std::abs(psi.amplitudes[0]);
    EXPECT_NEAR(ratio, std::exp(-(sp.energies[1] - sp.energies[0]) / 0.5), 1e-12);
    EXPECT_DOUBLE_EQ(gibbs_t_for_evolution_time(3.0), 6.0);
}

TEST(Gibbs, FreeEnergyMinimizedByGibbsProbabilities) {
    const Spectrum sp = small_spectrum(6);
    const double T = 1.3;
    // Probability-space Gibbs distribution at T minimizes E - T S_nats.
    const DenseState g = exact_gibbs(sp, 1.0 / T);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        const DenseState r = random_state(sp.n, rng);
        EXPECT_LE(free_energy(g, sp, T), free_energy(r, sp, T) + 1e-12);
    }
}

TEST(Boltzmann, BoundaryBoundsEntropyOfRandomStates) {
    const Spectrum sp = small_spectrum(7);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const DenseState r = random_state(sp.n, rng);
        const auto pt = energy_entropy_point(r, sp);
        EXPECT_LE(pt.entropy_bits, boltzmann_entropy_at(sp, pt.energy) + 1e-9);
    }
}

TEST(Boltzmann, CurveIsSortedAndPeaksAtInfiniteTemperature) {
    const Spectrum sp = small_spectrum(8);
    const auto grid = symmetric_t_grid(4.0, 20);
    const BoltzmannCurve c = boltzmann_curve(sp, grid);
    ASSERT_FALSE(c.samples.empty());
    double peak = 0.0;
    for (std::size_t i = 1; i < c.samples.size(); ++i) EXPECT_LE(c.samples[i - 1].energy, c.samples[i].energy);
    for (const auto& s : c.samples) peak = std::max(peak, s.entropy_bits);
    EXPECT_NEAR(peak, sp.n, 1e-9);
}

TEST(Boltzmann, InverseTemperatureForEnergy) {
    const Spectrum sp = small_spectrum(9);
    for (double t : {0.2, 1.0, 2.5, -0.5}) {
        const double e = mean_energy(exact_gibbs(sp, t), sp);
        EXPECT_NEAR(gibbs_t_for_energy(sp, e), t, 1e-6);
    }
}

TEST(Ratios, SignConvention) {
    const Spectrum sp = small_spectrum(10);
    EXPECT_DOUBLE_EQ(approximation_ratio(sp.e_min, sp), 0.0);
    EXPECT_LT(approximation_ratio(sp.e_min + 1.0, sp), 0.0);
    // Positive when the second energy is lower.
    EXPECT_GT(relative_ratio(sp.e_min + 2.0, sp.e_min + 1.0, sp), 0.0);
    EXPECT_NEAR(relative_ratio(-1.0, -2.0, sp), 1.0 / std::abs(sp.e_min), 1e-12);
}

TEST(Gaussian, SitsAtTargetEnergyAndOrdersEntropy) {
    const Spectrum sp = small_spectrum(11, 8);
    const double e = mean_energy(gibbs_at_temperature(sp, 3.0), sp);
    double prev = -1.0;
    for (double sigma : {0.3, 1.0, 3.0}) {
        const DenseState g = gaussian_at_energy(sp, e, sigma);
        EXPECT_NEAR(mean_energy(g, sp), e, 1e-6);
        const double s = diagonal_entropy(g);
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(Ladder, EvenlySpacedEntropiesAtFixedEnergy) {
    const Spectrum sp = small_spectrum(12, 8);
    const double e = mean_energy(gibbs_at_temperature(sp, 3.0), sp);
    const auto ladder = entropy_ladder(sp, e, 5);
    ASSERT_EQ(ladder.size(), 5u);
    std::vector<double> s;
    for (const auto& st : ladder) {
        EXPECT_NEAR(mean_energy(st, sp), e, 1e-6);
        s.push_back(diagonal_entropy(st));
    }
    const double step = (s.back() - s.front()) / 4.0;
    EXPECT_GT(step, 0.0);
    for (int k = 1; k < 5; ++k) EXPECT_NEAR(s[k] - s[k - 1], step, 1e-3 * std::max(1.0, step));
    EXPECT_NEAR(s.back(), boltzmann_entropy_at(sp, e), 1e-6);
    EXPECT_THROW(entropy_ladder(sp, e, 1), std::invalid_argument);
}

TEST(ClosestBasis, PicksNearestEnergy) {
    const Spectrum sp = small_spectrum(13);
    const double target = 0.5 * (sp.e_min + sp.e_max) + 0.1;
    const auto s = closest_basis_index(sp, target);
    for (double e : sp.energies) EXPECT_LE(std::abs(sp.energies[s] - target), std::abs(e - target) + 1e-15);
}

TEST(Stats, PearsonSpearmanLinearFit) {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 6, 8, 10}, z{1, 4, 9, 16, 100};
    EXPECT_NEAR(pearson(x, y), 1.0, 1e-12);
    EXPECT_NEAR(spearman(x, z), 1.0, 1e-12);
    const LinearFit f = linear_fit(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 0.0, 1e-12);
    const std::vector<double> ties{1, 1, 2};
    const auto r = ranks(ties);
    EXPECT_DOUBLE_EQ(r[0], 1.5);
    EXPECT_DOUBLE_EQ(r[2], 3.0);
    const std::vector<double> flat{3, 3, 3, 3, 3};
    EXPECT_TRUE(std::isnan(pearson(x, flat)));
    // Hand value: x = (1,2,3), y = (1,3,2) gives r = 0.5.
    const std::vector<double> a{1, 2, 3}, b{1, 3, 2};
    EXPECT_NEAR(pearson(a, b), 0.5, 1e-12);
}
