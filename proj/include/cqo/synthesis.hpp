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

#include <vector>

#include <Eigen/Dense>

#include "cqo/mps.hpp"
#include "cqo/state.hpp"

namespace cqo {

// layers[l][i] acts on qubits (i, i + 1) with index 2 * s_i + s_{i+1}. Layers are applied
// in storage order; inside a layer the gates run from (n-2, n-1) down to (0, 1).
struct StaircaseCircuit {
    int n = 0;
    std::vector<std::vector<Eigen::Matrix4cd>> layers;

    int depth() const { return static_cast<int>(layers.size()); }
    void validate(double tol = 1e-10) const;

    static StaircaseCircuit identity(int n, int k);
};

DenseState apply_gate(const DenseState& psi, int i, const Eigen::Matrix4cd& gate);
DenseState apply_circuit(const StaircaseCircuit& circuit, const DenseState& psi);
DenseState circuit_to_state(const StaircaseCircuit& circuit);

// circuit^dag |mps>, without truncation.
Mps apply_circuit_inverse(const StaircaseCircuit& circuit, const Mps& mps);

struct AnalyticLayer {
    std::vector<Eigen::Matrix4cd> gates;  // one staircase layer, gates[i] on (i, i + 1)
    Mps residual;                         // layer^dag applied to the input
    double truncation_fidelity = 0.0;     // of the bond-2 truncation the layer encodes
};

AnalyticLayer analytic_layer(const Mps& mps);

struct RefineResult {
    StaircaseCircuit circuit;
    std::vector<double> fidelity;  // before the first sweep, then after each sweep
};

double circuit_fidelity(const StaircaseCircuit& circuit, const DenseState& target);

RefineResult variational_refine(const StaircaseCircuit& circuit, const DenseState& target, int sweeps,
                                double tol = 1e-12);
RefineResult variational_refine(const StaircaseCircuit& circuit, const Mps& target, int sweeps,
                                double tol = 1e-12);

struct SynthesisOptions {
    int k_max = 4;
    double fidelity_target = 0.99;
    int sweeps = 200;  // refinement sweeps after each added layer
};

struct SynthesisResult {
    StaircaseCircuit circuit;
    double fidelity = 0.0;
    bool reached_target = false;
    std::vector<double> fidelity_by_depth;  // entry k-1 after k layers
};

SynthesisResult synthesize(const Mps& mps, const SynthesisOptions& options = {});

}  // namespace cqo
