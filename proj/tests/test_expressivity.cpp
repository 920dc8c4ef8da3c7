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
#include <sstream>

#include "cqo/analytics.hpp"
#include "cqo/expressivity.hpp"

using namespace cqo;

namespace {

Spectrum spectrum_for(std::uint64_t seed, int n = 4) { return brute_spectrum(maxcut_to_ising(random_graph(n, 0.6, seed))); }

}  // namespace

TEST(Pca, MatchesSvdOfCentredData) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXd x(40, 5);
    for (int r = 0; r < 40; ++r)
        for (int c = 0; c < 5; ++c) x(r, c) = (c + 1) * g(rng);
    const PcaResult p = pca(x);
    const Eigen::MatrixXd centred = x.rowwise() - x.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinV);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(p.variances[k], svd.singularValues()[k] * svd.singularValues()[k] / 39.0, 1e-10);
    EXPECT_LT((p.components.transpose() * p.components - Eigen::MatrixXd::Identity(5, 5)).norm(), 1e-10);
    // Projected coordinates carry the leading variances.
    for (int k = 0; k < 2; ++k) {
        const Eigen::VectorXd col = p.projected.col(k);
        EXPECT_NEAR(col.squaredNorm() / 39.0, p.variances[k], 1e-10);
        EXPECT_NEAR(col.mean(), 0.0, 1e-12);
    }
}

TEST(Pca, RankProxyCountsSignificantDirections) {
    Eigen::MatrixXd x(30, 4);
    for (int r = 0; r < 30; ++r) x.row(r) << r, 2.0 * r, 0.0, 1e-3 * std::sin(r);
    const PcaResult p = pca(x);
    EXPECT_EQ(significant_rank(p.variances, 0.01), 1);
    EXPECT_EQ(significant_rank(p.variances, 1e-12), 2);
}

TEST(Sweep, RowsAreDistributions) {
    const Spectrum sp = spectrum_for(2);
    const DenseState psi0 = DenseState::plus(4);
    const DistributionMatrix m = sweep_p1(psi0, sp, 8, 8);
    ASSERT_EQ(m.rows.rows(), 64);
    ASSERT_EQ(m.rows.cols(), 16);
    for (int r = 0; r < 64; ++r) EXPECT_NEAR(m.rows.row(r).sum(), 1.0, 1e-12);
    const auto p0 = dephase(psi0);
    for (int s = 0; s < 16; ++s) EXPECT_NEAR(m.rows(0, s), p0[s], 1e-12);
    EXPECT_THROW(sweep_p1(psi0, sp, 4, 8), std::invalid_argument);
}

TEST(Sweep, BasisStateIgnoresCostAngle) {
    // The cost layer only adds a phase to a basis state, so rows depend on xi alone.
    const Spectrum sp = spectrum_for(3);
    const DistributionMatrix m = sweep_p1(DenseState::basis(4, 5), sp, 8, 8);
    for (int i = 1; i < 8; ++i)
        for (int j = 0; j < 8; ++j) EXPECT_LT((m.rows.row(i * 8 + j) - m.rows.row(j)).norm(), 1e-12);
    // Outcome probabilities go through cos^2(xi), so xi and pi - xi coincide: 5 distinct rows on 8 points.
    EXPECT_EQ(epsilon_distinct_count(m, 1e-9), 5);
}

TEST(Sweep, SuperpositionHasPositiveArea) {
    const Spectrum sp = spectrum_for(4);
    const ExpressivitySummary s = analyze(sweep_p1(DenseState::plus(4), sp, 16, 16));
    EXPECT_GT(s.area, 0.0);
    EXPECT_GE(s.rank, 2);
}

TEST(Distance, TotalVariationAndEuclidean) {
    const Eigen::VectorXd a = (Eigen::VectorXd(4) << 1, 0, 0, 0).finished();
    const Eigen::VectorXd b = (Eigen::VectorXd(4) << 0, 0, 0.5, 0.5).finished();
    EXPECT_NEAR(distribution_distance(a, b, DistanceMetric::TotalVariation), 1.0, 1e-15);
    EXPECT_NEAR(distribution_distance(a, b, DistanceMetric::Euclidean), std::sqrt(1.5), 1e-15);
    EXPECT_EQ(parse_metric("tv"), DistanceMetric::TotalVariation);
    EXPECT_EQ(parse_metric("euclidean"), DistanceMetric::Euclidean);
    EXPECT_THROW(parse_metric("kl"), std::invalid_argument);
}

TEST(Distance, EpsilonDistinctCountLimits) {
    const Spectrum sp = spectrum_for(5);
    const DistributionMatrix m = sweep_p1(DenseState::plus(4), sp, 8, 8);
    EXPECT_EQ(epsilon_distinct_count(m, 2.0), 1);
    const int fine = epsilon_distinct_count(m, 1e-3), coarse = epsilon_distinct_count(m, 0.2);
    EXPECT_GE(fine, coarse);
    EXPECT_LE(fine, 64);
}

TEST(Csv, HeadersAndRowCounts) {
    const Spectrum sp = spectrum_for(6, 3);
    const DistributionMatrix m = sweep_p1(DenseState::plus(3), sp, 8, 8);
    std::ostringstream d, p;
    write_distribution_csv(d, m);
    write_projection_csv(p, m, pca(m));
    const std::string dist = d.str(), proj = p.str();
    EXPECT_EQ(dist.substr(0, dist.find('\n')), "gamma,xi,p000,p001,p010,p011,p100,p101,p110,p111");
    EXPECT_EQ(proj.substr(0, proj.find('\n')), "gamma,xi,pc1,pc2");
    EXPECT_EQ(std::count(proj.begin(), proj.end(), '\n'), 65);
}
