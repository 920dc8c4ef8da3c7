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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqo/optimize.hpp"
#include "cqo/problems.hpp"
#include "cqo/state.hpp"

namespace cqo {

struct QaoaParams {
    std::vector<double> gamma;
    std::vector<double> xi;

    int p() const { return static_cast<int>(gamma.size()); }
    void validate() const;

    static QaoaParams zeros(int p);
    // Interleaved (gamma_1, xi_1, gamma_2, xi_2, ...).
    Eigen::VectorXd to_vector() const;
    static QaoaParams from_vector(const Eigen::VectorXd& v);
};

// exp(-i gamma (H - offset)) on the computational basis.
DenseState apply_cost_layer(const DenseState& psi, const Spectrum& spectrum, double gamma);
DenseState apply_cost_layer(const DenseState& psi, const IsingHamiltonian& h, double gamma);
// exp(+i xi X) on every qubit.
DenseState apply_mixer_layer(const DenseState& psi, double xi);

DenseState run(const DenseState& psi0, const Spectrum& spectrum, const QaoaParams& params);
DenseState run(const DenseState& psi0, const IsingHamiltonian& h, const QaoaParams& params);

double expectation(const DenseState& psi, const Spectrum& spectrum);
double expectation(const DenseState& psi, const IsingHamiltonian& h);

struct OptimizationRun {
    QaoaParams best;
    double best_energy = 0.0;
    double initial_energy = 0.0;  // <psi0|H|psi0>
    std::vector<Evaluation> trace;
    std::string optimizer;
    std::uint64_t seed = 0;
    std::string initial_state;
    int evaluations = 0;
    bool budget_exhausted = false;
};

// Starts from angles drawn uniformly in [-0.01, 0.01]. With anchor_zero the first evaluation is
// spent on zero angles, so the result is never worse than psi0 itself.
OptimizationRun optimize(const DenseState& psi0, const Spectrum& spectrum, int p, OptimizerKind optimizer,
                         std::uint64_t seed, int budget, const std::string& initial_state = "custom",
                         bool anchor_zero = false);

struct Landscape {
    std::vector<double> gamma;
    std::vector<double> xi;
    Eigen::MatrixXd energy;  // energy(i, j) at (gamma[i], xi[j])
};

// p = 1 grid over gamma in [0, 2 pi) and xi in [0, pi).
Landscape landscape_scan(const DenseState& psi0, const Spectrum& spectrum, int gamma_points = 64,
                         int xi_points = 64);

void write_landscape_csv(std::ostream& out, const Landscape& landscape);

}  // namespace cqo
