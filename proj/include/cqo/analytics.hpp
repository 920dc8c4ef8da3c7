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
#include <span>
#include <vector>

#include "cqo/problems.hpp"
#include "cqo/state.hpp"

namespace cqo {

// Entropies are reported in bits. Thermodynamic quantities (free energy, the
// slope identity dS/dE = t) use nats; multiply bits by ln 2 to convert.
inline constexpr double kLn2 = 0.69314718055994530942;

std::vector<double> dephase(const DenseState& psi);
double shannon_entropy_bits(std::span<const double> probabilities);
double diagonal_entropy(const DenseState& psi);
double diagonal_entropy_nats(const DenseState& psi);

double mean_energy(const DenseState& psi, const Spectrum& spectrum);
double mean_energy(std::span<const double> probabilities, const Spectrum& spectrum);

/// G = <H> - T S_d with S_d in nats.
double free_energy(const DenseState& psi, const Spectrum& spectrum, double temperature);
double free_energy(const DenseState& psi, const IsingHamiltonian& h, double temperature);

/// Pure Gibbs state with amplitudes exp(-t E_s / 2) / sqrt(Z_t), all phases zero.
/// Negative t gives the negative-temperature branch.
DenseState exact_gibbs(const Spectrum& spectrum, double t);
DenseState exact_gibbs(const IsingHamiltonian& h, double t);

/// Probabilities exp(-t E_s) / Z_t of the pure Gibbs state.
std::vector<double> gibbs_probabilities(const Spectrum& spectrum, double t);

/// State reached by imaginary-time evolution of |+>^n for time tau, whose
/// amplitudes are exp(-tau E_s) / sqrt(Z). Its temperature is T = 1 / tau,
/// which corresponds to t = 2 tau in exact_gibbs.
inline double gibbs_t_for_evolution_time(double tau) { return 2.0 * tau; }
DenseState gibbs_at_temperature(const Spectrum& spectrum, double temperature);

/// Weights exp(-(E_s - E_T)^2 / (2 sigma^2)), renormalized to unit norm.
DenseState gaussian_state(const Spectrum& spectrum, double e_target, double sigma);
/// Gaussian state of width sigma whose mean energy equals `energy`, found by
/// bisection on the centre E_T.
DenseState gaussian_at_energy(const Spectrum& spectrum, double energy, double sigma);

// States sharing one mean energy with entropies evenly spaced from a narrow Gaussian
// (first) up to the Gibbs state at that energy (last).
std::vector<DenseState> entropy_ladder(const Spectrum& spectrum, double energy, int levels);

struct EnergyEntropyPoint {
    double energy = 0.0;
    double entropy_bits = 0.0;
};

EnergyEntropyPoint energy_entropy_point(const DenseState& psi, const Spectrum& spectrum);

struct BoltzmannSample {
    double t = 0.0;
    double energy = 0.0;
    double entropy_bits = 0.0;
};

struct BoltzmannCurve {
    std::vector<BoltzmannSample> samples;  // sorted by increasing energy
};

BoltzmannCurve boltzmann_curve(const Spectrum& spectrum, std::span<const double> t_grid);
std::vector<double> symmetric_t_grid(double t_max, int points_per_side);

EnergyEntropyPoint gibbs_point(const Spectrum& spectrum, double t);
/// Inverse temperature of the Gibbs state with the given mean energy.
double gibbs_t_for_energy(const Spectrum& spectrum, double energy);
/// Entropy of the Boltzmann boundary at a given energy (bits).
double boltzmann_entropy_at(const Spectrum& spectrum, double energy);

/// alpha(x) = (E_min - E_x) / |E_min|.
double approximation_ratio(double e_x, const Spectrum& spectrum);
/// alpha(y) - alpha(x): positive when state y reaches the lower energy.
double relative_ratio(double e_x, double e_y, const Spectrum& spectrum);

/// Basis index whose energy is closest to `energy` (lowest index on ties).
std::uint64_t closest_basis_index(const Spectrum& spectrum, double energy);

}  // namespace cqo
