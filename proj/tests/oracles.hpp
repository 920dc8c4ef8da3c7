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

// Reference implementations used only by the tests. They avoid the library's own
// code paths so agreement means something.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cqo/problems.hpp"

namespace oracle {

using Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline MatrixXcd pauli_z() {
    MatrixXcd z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

inline MatrixXcd pauli_x() {
    MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

// Operator op on qubit q of n, qubit 0 leftmost in the Kronecker product.
inline MatrixXcd embed(const MatrixXcd& op, int q, int n) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const MatrixXcd f = k == q ? op : MatrixXcd::Identity(2, 2);
        MatrixXcd next = Eigen::kroneckerProduct(out, f).eval();
        out = next;
    }
    return out;
}

inline MatrixXcd hamiltonian_matrix(const cqo::IsingHamiltonian& h, bool with_offset = true) {
    const int dim = 1 << h.n;
    MatrixXcd m = MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < h.n; ++i) m += h.h[i] * embed(pauli_z(), i, h.n);
    for (const auto& [key, v] : h.J) m += v * embed(pauli_z(), key.first, h.n) * embed(pauli_z(), key.second, h.n);
    if (with_offset) m += h.offset * MatrixXcd::Identity(dim, dim);
    return m;
}

inline int brute_cut(const cqo::Graph& g, std::uint64_t index) {
    int cut = 0;
    for (auto [i, j] : g.edges) {
        const int bi = (index >> (g.n - 1 - i)) & 1, bj = (index >> (g.n - 1 - j)) & 1;
        cut += bi != bj;
    }
    return cut;
}

inline int max_cut(const cqo::Graph& g) {
    int best = 0;
    for (std::uint64_t s = 0; s < (1ull << g.n); ++s) best = std::max(best, brute_cut(g, s));
    return best;
}

// All tour lengths over every permutation (no rotation reduction).
inline std::vector<double> all_tour_lengths(const cqo::TspInstance& t) {
    std::vector<int> order(t.cities);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> out;
    do {
        double len = 0.0;
        for (int p = 0; p < t.cities; ++p) len += t.distances[order[p]][order[(p + 1) % t.cities]];
        out.push_back(len);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

inline Eigen::VectorXd boltzmann_probabilities(const std::vector<double>& energies, double beta) {
    const double e0 = *std::min_element(energies.begin(), energies.end());
    Eigen::VectorXd p(energies.size());
    for (std::size_t s = 0; s < energies.size(); ++s) p[s] = std::exp(-beta * (energies[s] - e0));
    return p / p.sum();
}

inline double entropy_bits(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (double v : p)
        if (v > 0) s -= v * std::log2(v);
    return s;
}

// Andrew's monotone chain hull area.
inline double hull_area(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0.0;
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
    };
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area += a.x() * b.y() - a.y() * b.x();
    }
    return 0.5 * std::abs(area);
}

inline Eigen::VectorXcd random_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cplx(g(rng), g(rng));
    return v.normalized();
}

inline Eigen::Matrix4cd random_unitary4(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(a);
    Eigen::Matrix4cd q = qr.householderQ();
    return q;
}

}  // namespace oracle
