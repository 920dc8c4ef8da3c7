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

#include "cqo/gibbs.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "cqo/stats.hpp"

namespace cqo {

cplx amplitude_of(const Mps& mps, const Bitstring& s) {
    const double nrm = norm(mps);
    if (!(nrm > 0.0)) throw std::domain_error("amplitude of a zero-norm MPS");
    return amplitude(mps, s) / nrm;
}

GibbsQualityReport quality_from_bitstrings(const Mps& input, const IsingHamiltonian& h,
                                           const std::vector<Bitstring>& bitstrings) {
    if (input.size() != h.n)
        throw std::invalid_argument(fmt::format("MPS has {} sites, Hamiltonian {} qubits", input.size(), h.n));
    const Mps mps = left_canonicalize(input, true);
    GibbsQualityReport report;
    report.sample_count = static_cast<int>(bitstrings.size());
    std::set<Bitstring> seen;
    std::vector<double> energies, logs;
    for (const auto& bits : bitstrings) {
        if (!seen.insert(bits).second) continue;
        const double a = std::abs(amplitude(mps, bits));
        if (a < kMinAmplitude) continue;
        ScatterPoint p{bits, energy_of(h, bits), std::log(a)};
        energies.push_back(p.energy);
        logs.push_back(p.log_amplitude);
        report.points.push_back(std::move(p));
    }
    report.distinct_count = static_cast<int>(report.points.size());
    if (report.distinct_count < 3) {
        report.degenerate = true;
        report.pearson_r = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    const double e0 = energies.front();
    bool energy_varies = false;
    for (double e : energies) energy_varies |= std::abs(e - e0) > 1e-12 * std::max(1.0, std::abs(e0));
    if (!energy_varies) {
        report.degenerate = true;
        report.pearson_r = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    const LinearFit fit = linear_fit(energies, logs);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.pearson_r = fit.pearson_r;
    // Flat amplitudes give a slope at rounding level; treat that as no temperature.
    double spread = 0.0;
    for (double v : logs) spread = std::max(spread, std::abs(v - logs.front()));
    if (fit.slope < 0.0 && spread > 1e-10) {
        report.temperature_defined = true;
        report.temperature = -1.0 / fit.slope;
    }
    return report;
}

GibbsQualityReport quality_from_samples(const Mps& mps, const IsingHamiltonian& h, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample count must be positive");
    return quality_from_bitstrings(mps, h, sample(mps, k, seed));
}

void write_scatter_csv(std::ostream& out, const GibbsQualityReport& report) {
    out << "bitstring,energy,log_amplitude\n";
    for (const auto& p : report.points)
        out << fmt::format("{},{:.17g},{:.17g}\n", to_string(p.bits), p.energy, p.log_amplitude);
}

}  // namespace cqo
