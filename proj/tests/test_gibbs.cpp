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

#include <sstream>

#include "cqo/analytics.hpp"
#include "cqo/gibbs.hpp"

using namespace cqo;

TEST(GibbsQuality, ExactGibbsRecoversTemperature) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(7, 0.5, 3));
    const Spectrum sp = brute_spectrum(h);
    for (double T : {0.5, 1.0, 3.0}) {
        const Mps psi = from_dense(gibbs_at_temperature(sp, T));
        std::vector<Bitstring> all;
        for (std::uint64_t s = 0; s < sp.energies.size(); ++s) all.push_back(bits_from_index(s, h.n));
        const GibbsQualityReport r = quality_from_bitstrings(psi, h, all);
        EXPECT_FALSE(r.degenerate);
        ASSERT_TRUE(r.temperature_defined);
        EXPECT_NEAR(r.slope, -1.0 / T, 1e-9);
        EXPECT_NEAR(r.temperature, T, 1e-8);
        EXPECT_NEAR(r.pearson_r, -1.0, 1e-12);
        EXPECT_EQ(r.distinct_count, static_cast<int>(all.size()));
    }
}

TEST(GibbsQuality, SampledRegressionIsDeterministic) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(6, 0.5, 5));
    const Mps psi = from_dense(gibbs_at_temperature(brute_spectrum(h), 1.0));
    const auto a = quality_from_samples(psi, h, 500, 11), b = quality_from_samples(psi, h, 500, 11);
    EXPECT_EQ(a.slope, b.slope);
    EXPECT_EQ(a.distinct_count, b.distinct_count);
    EXPECT_EQ(a.sample_count, 500);
    EXPECT_LE(a.distinct_count, 64);
    EXPECT_THROW(quality_from_samples(psi, h, 0, 1), std::invalid_argument);
}

TEST(GibbsQuality, FlatAmplitudesHaveNoTemperature) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(5, 0.6, 1));
    const GibbsQualityReport r = quality_from_samples(plus_state(5), h, 400, 2);
    EXPECT_FALSE(r.temperature_defined);
    EXPECT_NEAR(r.slope, 0.0, 1e-12);
}

TEST(GibbsQuality, BasisStateIsDegenerate) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(5, 0.6, 1));
    const GibbsQualityReport r = quality_from_samples(basis_mps(bits_from_string("01011")), h, 200, 2);
    EXPECT_TRUE(r.degenerate);
    EXPECT_FALSE(r.temperature_defined);
    EXPECT_EQ(r.distinct_count, 1);
}

TEST(GibbsQuality, AmplitudeIsNormalized) {
    Mps psi = plus_state(3);
    psi.sites[0][0] *= 3.0;
    psi.sites[0][1] *= 3.0;
    EXPECT_NEAR(std::abs(amplitude_of(psi, bits_from_string("010"))), 1.0 / std::sqrt(8.0), 1e-12);
}

TEST(GibbsQuality, ScatterCsvHasOneRowPerPoint) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(4, 0.8, 1));
    const GibbsQualityReport r = quality_from_samples(from_dense(gibbs_at_temperature(brute_spectrum(h), 1.0)), h, 300, 4);
    std::ostringstream s;
    write_scatter_csv(s, r);
    const std::string text = s.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "bitstring,energy,log_amplitude");
    EXPECT_EQ(static_cast<int>(std::count(text.begin(), text.end(), '\n')), 1 + static_cast<int>(r.points.size()));
}
