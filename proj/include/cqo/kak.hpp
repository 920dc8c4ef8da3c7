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

#include <array>

#include <Eigen/Dense>

#include "cqo/state.hpp"

namespace cqo {

// u = exp(i * global_phase) * (k1 (x) k2) * exp(i sum_j c_j sigma_j (x) sigma_j) * (k3 (x) k4)
// with j over (x, y, z) and pi/4 >= c_x >= c_y >= |c_z|. When c_x = pi/4 the sign of
// c_z is made non-negative. k1 and k3 act on the more significant qubit.
struct KakDecomposition {
    Eigen::Matrix2cd k1, k2, k3, k4;
    std::array<double, 3> c{0.0, 0.0, 0.0};
    double global_phase = 0.0;

    Eigen::Matrix4cd reconstruct() const;
};

Eigen::Matrix4cd interaction_core(const std::array<double, 3>& c);

bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

KakDecomposition kak_decompose(const Eigen::Matrix4cd& u);

// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng);

}  // namespace cqo
