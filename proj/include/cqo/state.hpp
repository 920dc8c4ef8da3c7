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

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "cqo/problems.hpp"

namespace cqo {

using cplx = std::complex<double>;

inline constexpr int kMaxDenseQubits = 16;

/// Normalized statevector over 2^n basis states, same index convention as Bitstring.
struct DenseState {
    int n = 0;
    Eigen::VectorXcd amplitudes;

    DenseState() = default;
    DenseState(int qubits, Eigen::VectorXcd amps);

    std::uint64_t dim() const { return static_cast<std::uint64_t>(amplitudes.size()); }
    double norm() const { return amplitudes.norm(); }
    DenseState& normalize();

    static DenseState zero(int n);
    static DenseState plus(int n);
    static DenseState basis(const Bitstring& bits);
    static DenseState basis(int n, std::uint64_t index);
};

// Haar-random state via normalized complex Gaussian amplitudes.
DenseState random_state(int n, std::mt19937_64& rng);

cplx inner(const DenseState& a, const DenseState& b);  // <a|b>
double fidelity(const DenseState& a, const DenseState& b);

}  // namespace cqo
