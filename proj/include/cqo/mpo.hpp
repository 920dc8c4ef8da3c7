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
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cqo/mps.hpp"
#include "cqo/problems.hpp"

namespace cqo {

// One MPO tensor; ops(a, b) is the 2x2 physical operator (row = output spin)
// connecting left bond a to right bond b.
struct MpoSite {
    int left = 1;
    int right = 1;
    std::vector<Eigen::Matrix2cd> ops;

    MpoSite() = default;
    MpoSite(int l, int r) : left(l), right(r), ops(static_cast<std::size_t>(l) * r, Eigen::Matrix2cd::Zero()) {}

    Eigen::Matrix2cd& at(int a, int b) { return ops[static_cast<std::size_t>(a) * right + b]; }
    const Eigen::Matrix2cd& at(int a, int b) const { return ops[static_cast<std::size_t>(a) * right + b]; }
};

struct Mpo {
    std::vector<MpoSite> sites;

    int size() const { return static_cast<int>(sites.size()); }
    int max_bond() const;
    void validate() const;
};

// Dense operator of an MPO, qubit 0 most significant. Limited to 12 sites.
Eigen::MatrixXcd to_dense_operator(const Mpo& mpo);

// Site i of the long-range Ising chain. Channels at bond i are the target sites
// b > i that couple to some a <= i, listed in channels[i] in increasing order.
struct HamiltonianBlocks {
    int n = 0;
    double offset = 0.0;
    std::vector<std::vector<int>> channels;  // n - 1 bonds
    std::vector<Eigen::Matrix2cd> D;
    std::vector<std::vector<Eigen::Matrix2cd>> C;  // C[i] has channels_right(i) entries
    std::vector<std::vector<Eigen::Matrix2cd>> B;  // B[i] has channels_left(i) entries
    std::vector<std::vector<Eigen::Matrix2cd>> A;  // row-major channels_left(i) x channels_right(i)

    int channels_left(int i) const { return i == 0 ? 0 : static_cast<int>(channels[i - 1].size()); }
    int channels_right(int i) const { return i + 1 >= n ? 0 : static_cast<int>(channels[i].size()); }
    const Eigen::Matrix2cd& a_at(int i, int j, int k) const {
        return A[i][static_cast<std::size_t>(j) * channels_right(i) + k];
    }
};

HamiltonianBlocks build_blocks(const IsingHamiltonian& h);

// [[1, C, D], [0, A, B], [0, 0, 1]] with the boundary row/column selected.
// The constant offset is not part of the operator.
Mpo hamiltonian_mpo(const HamiltonianBlocks& blocks);
Mpo hamiltonian_mpo(const IsingHamiltonian& h);

enum class StepOrder { I, II };

struct StepMpo {
    Mpo mpo;
    StepOrder order = StepOrder::II;
    double delta_tau = 0.0;
};

StepOrder parse_step_order(const std::string& text);
const char* to_string(StepOrder order);

// Both approximate exp(-delta_tau * H) and are exact for a single site.
StepMpo build_wI(const HamiltonianBlocks& blocks, double delta_tau);
StepMpo build_wII(const HamiltonianBlocks& blocks, double delta_tau);
StepMpo build_step(const HamiltonianBlocks& blocks, double delta_tau, StepOrder order);

// Zip-up application followed by canonical truncation; the result is normalized.
TruncationResult apply_mpo(const Mpo& mpo, const Mps& mps, int chi_max, double cutoff = kSvdCutoff);
TruncationResult evolve_step(const Mps& mps, const StepMpo& step, int chi_max);

cplx expectation(const Mps& mps, const Mpo& mpo);  // <psi|O|psi> / <psi|psi>
double mps_energy(const Mps& mps, const Mpo& hamiltonian, double offset);
double mps_energy(const Mps& mps, const IsingHamiltonian& h);

enum class EntropyMode { Exact, Sampled, None };

double sampled_entropy_bits(const Mps& mps, int samples, std::uint64_t seed);

struct EvolutionOptions {
    double t_total = 0.0;
    double delta_tau = 0.01;
    int chi_max = 32;
    StepOrder order = StepOrder::II;
    int record_every = 1;
    EntropyMode entropy = EntropyMode::Exact;  // Exact falls back to Sampled above 16 qubits
    int entropy_samples = 2000;
    std::uint64_t seed = 1;
    int checkpoint_every = 0;
    std::function<void(int step, const Mps&)> checkpoint;
};

struct TracePoint {
    int step = 0;
    double tau = 0.0;
    double energy = 0.0;
    double entropy_bits = 0.0;  // NaN when not computed
    double trunc_err = 0.0;      // of this step
    double cumulative_trunc_err = 0.0;
};

struct EvolutionTrace {
    std::vector<TracePoint> points;
    Mps final_state;
    int steps = 0;
    double t_total = 0.0;  // steps * delta_tau
};

EvolutionTrace imaginary_time_evolve(const IsingHamiltonian& h, const EvolutionOptions& options);

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace);

}  // namespace cqo
