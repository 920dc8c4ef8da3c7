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

#include "cqo/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

std::vector<double> dephase(const DenseState& psi) {
    std::vector<double> p(psi.dim());
    for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) p[s] = std::norm(psi.amplitudes[s]);
    return p;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > 0.0) s -= p * std::log2(p);
    return std::max(0.0, s);
}

double diagonal_entropy(const DenseState& psi) { return shannon_entropy_bits(dephase(psi)); }

double diagonal_entropy_nats(const DenseState& psi) { return kLn2 * diagonal_entropy(psi); }

namespace {

void check_dims(const DenseState& psi, const Spectrum& spectrum) {
    if (psi.n != spectrum.n)
        throw std::invalid_argument(fmt::format("state has {} qubits, Hamiltonian {}", psi.n, spectrum.n));
}

// Normalized exp(-t E_s) with the exponent shifted by its maximum.
std::vector<double> boltzmann_weights(const Spectrum& spectrum, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("inverse temperature must be finite");
    const double shift = t >= 0.0 ? spectrum.e_min : spectrum.e_max;
    std::vector<double> w(spectrum.energies.size());
    double z = 0.0;
    for (std::size_t s = 0; s < w.size(); ++s) {
        w[s] = std::exp(-t * (spectrum.energies[s] - shift));
        z += w[s];
    }
    for (double& x : w) x /= z;
    return w;
}

}  // namespace

double mean_energy(std::span<const double> probabilities, const Spectrum& spectrum) {
    if (probabilities.size() != spectrum.energies.size())
        throw std::invalid_argument("probability vector does not match spectrum");
    double e = 0.0;
    for (std::size_t s = 0; s < probabilities.size(); ++s) e += probabilities[s] * spectrum.energies[s];
    return e;
}

double mean_energy(const DenseState& psi, const Spectrum& spectrum) {
    check_dims(psi, spectrum);
    double e = 0.0, total = 0.0;
    for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) {
        const double p = std::norm(psi.amplitudes[s]);
        e += p * spectrum.energies[s];
        total += p;
    }
    return e / total;
}

double free_energy(const DenseState& psi, const Spectrum& spectrum, double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    return mean_energy(psi, spectrum) - temperature * diagonal_entropy_nats(psi);
}

double free_energy(const DenseState& psi, const IsingHamiltonian& h, double temperature) {
    return free_energy(psi, brute_spectrum(h), temperature);
}

std::vector<double> gibbs_probabilities(const Spectrum& spectrum, double t) {
    return boltzmann_weights(spectrum, t);
}

DenseState exact_gibbs(const Spectrum& spectrum, double t) {
    const auto p = boltzmann_weights(spectrum, t);
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(p.size()));
    for (std::size_t s = 0; s < p.size(); ++s) amps[static_cast<Eigen::Index>(s)] = std::sqrt(p[s]);
    return DenseState(spectrum.n, std::move(amps));
}

DenseState exact_gibbs(const IsingHamiltonian& h, double t) { return exact_gibbs(brute_spectrum(h), t); }

DenseState gibbs_at_temperature(const Spectrum& spectrum, double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
    return exact_gibbs(spectrum, gibbs_t_for_evolution_time(1.0 / temperature));
}

DenseState gaussian_state(const Spectrum& spectrum, double e_target, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    // Shift the exponent by its smallest value so the closest level carries weight 1.
    double closest = std::numeric_limits<double>::infinity();
    for (double e : spectrum.energies) closest = std::min(closest, (e - e_target) * (e - e_target));
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(spectrum.energies.size()));
    for (std::size_t s = 0; s < spectrum.energies.size(); ++s) {
        const double d = spectrum.energies[s] - e_target;
        amps[static_cast<Eigen::Index>(s)] = std::exp(-(d * d - closest) / (2.0 * sigma * sigma));
    }
    DenseState psi(spectrum.n, std::move(amps));
    psi.normalize();
    return psi;
}

DenseState gaussian_at_energy(const Spectrum& spectrum, double energy, double sigma) {
    if (!(energy > spectrum.e_min) || !(energy < spectrum.e_max))
        throw std::invalid_argument(
            fmt::format("target energy {} must lie strictly inside ({}, {})", energy, spectrum.e_min, spectrum.e_max));
    const double width = spectrum.e_max - spectrum.e_min;
    double lo = spectrum.e_min - 50.0 * (width + sigma);
    double hi = spectrum.e_max + 50.0 * (width + sigma);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = mean_energy(gaussian_state(spectrum, mid, sigma), spectrum);
        if (e < energy)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return gaussian_state(spectrum, 0.5 * (lo + hi), sigma);
}

std::vector<DenseState> entropy_ladder(const Spectrum& spectrum, double energy, int levels) {
    if (levels < 2) throw std::invalid_argument("entropy ladder needs at least two levels");
    const double width = spectrum.e_max - spectrum.e_min;
    const double log_lo = std::log(1e-2 * width), log_hi = std::log(1e3 * width);
    auto entropy_at = [&](double log_sigma) {
        return diagonal_entropy(gaussian_at_energy(spectrum, energy, std::exp(log_sigma)));
    };
    const double s_lo = entropy_at(log_lo);
    const DenseState top = exact_gibbs(spectrum, gibbs_t_for_energy(spectrum, energy));
    const double s_hi = diagonal_entropy(top);
    std::vector<DenseState> out{gaussian_at_energy(spectrum, energy, std::exp(log_lo))};
    for (int k = 1; k + 1 < levels; ++k) {
        const double target = s_lo + (s_hi - s_lo) * k / (levels - 1);
        double a = log_lo, b = log_hi;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (a + b);
            (entropy_at(mid) < target ? a : b) = mid;
        }
        out.push_back(gaussian_at_energy(spectrum, energy, std::exp(0.5 * (a + b))));
    }
    out.push_back(top);
    return out;
}

EnergyEntropyPoint energy_entropy_point(const DenseState& psi, const Spectrum& spectrum) {
    const auto p = dephase(psi);
    return {mean_energy(p, spectrum), shannon_entropy_bits(p)};
}

EnergyEntropyPoint gibbs_point(const Spectrum& spectrum, double t) {
    const auto p = boltzmann_weights(spectrum, t);
    return {mean_energy(p, spectrum), shannon_entropy_bits(p)};
}

std::vector<double> symmetric_t_grid(double t_max, int points_per_side) {
    if (!(t_max > 0.0) || points_per_side < 1) throw std::invalid_argument("invalid inverse-temperature grid");
    std::vector<double> grid;
    for (int k = -points_per_side; k <= points_per_side; ++k) grid.push_back(t_max * k / points_per_side);
    return grid;
}

BoltzmannCurve boltzmann_curve(const Spectrum& spectrum, std::span<const double> t_grid) {
    BoltzmannCurve curve;
    for (double t : t_grid) {
        const auto pt = gibbs_point(spectrum, t);
        curve.samples.push_back({t, pt.energy, pt.entropy_bits});
    }
    std::sort(curve.samples.begin(), curve.samples.end(),
              [](const BoltzmannSample& a, const BoltzmannSample& b) { return a.energy < b.energy; });
    return curve;
}

double gibbs_t_for_energy(const Spectrum& spectrum, double energy) {
    if (!(energy > spectrum.e_min) || !(energy < spectrum.e_max))
        throw std::invalid_argument("energy outside the open spectral range has no finite Gibbs temperature");
    // Mean energy decreases monotonically in t.
    double lo = -1.0, hi = 1.0;
    while (gibbs_point(spectrum, hi).energy > energy && hi < 1e6) hi *= 2.0;
    while (gibbs_point(spectrum, lo).energy < energy && lo > -1e6) lo *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gibbs_point(spectrum, mid).energy > energy)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

double boltzmann_entropy_at(const Spectrum& spectrum, double energy) {
    const double tol = 1e-12 * std::max(1.0, spectrum.e_max - spectrum.e_min);
    auto degeneracy_entropy = [&](double level) {
        std::size_t count = 0;
        for (double e : spectrum.energies) count += std::abs(e - level) <= tol;
        return std::log2(static_cast<double>(count));
    };
    if (energy <= spectrum.e_min + tol) return degeneracy_entropy(spectrum.e_min);
    if (energy >= spectrum.e_max - tol) return degeneracy_entropy(spectrum.e_max);
    return gibbs_point(spectrum, gibbs_t_for_energy(spectrum, energy)).entropy_bits;
}

double approximation_ratio(double e_x, const Spectrum& spectrum) {
    if (spectrum.e_min == 0.0) throw std::domain_error("approximation ratio undefined for E_min = 0");
    return (spectrum.e_min - e_x) / std::abs(spectrum.e_min);
}

double relative_ratio(double e_x, double e_y, const Spectrum& spectrum) {
    return approximation_ratio(e_y, spectrum) - approximation_ratio(e_x, spectrum);
}

std::uint64_t closest_basis_index(const Spectrum& spectrum, double energy) {
    std::uint64_t best = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < spectrum.energies.size(); ++s) {
        const double d = std::abs(spectrum.energies[s] - energy);
        if (d < gap) {
            gap = d;
            best = s;
        }
    }
    return best;
}

}  // namespace cqo
