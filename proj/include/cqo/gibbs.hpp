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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cqo/mps.hpp"
#include "cqo/problems.hpp"

namespace cqo {

cplx amplitude_of(const Mps& mps, const Bitstring& s);

struct ScatterPoint {
    Bitstring bits;
    double energy = 0.0;
    double log_amplitude = 0.0;  // ln|c_s|
};

struct GibbsQualityReport {
    double slope = 0.0;
    double intercept = 0.0;
    double pearson_r = 0.0;          // NaN when the amplitudes or energies do not vary
    int sample_count = 0;            // draws requested
    int distinct_count = 0;          // distinct bitstrings kept for the fit
    bool degenerate = false;         // fewer than three distinct bitstrings
    bool temperature_defined = false;
    double temperature = 0.0;        // -1 / slope when the slope is negative
    std::vector<ScatterPoint> points;
};

inline constexpr double kMinAmplitude = 1e-14;

GibbsQualityReport quality_from_samples(const Mps& mps, const IsingHamiltonian& h, int k, std::uint64_t seed);

// Same regression on an explicit set of bitstrings (duplicates removed).
GibbsQualityReport quality_from_bitstrings(const Mps& mps, const IsingHamiltonian& h,
                                           const std::vector<Bitstring>& bitstrings);

void write_scatter_csv(std::ostream& out, const GibbsQualityReport& report);

}  // namespace cqo
