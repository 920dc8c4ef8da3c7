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

#include "cqo/state.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

DenseState::DenseState(int qubits, Eigen::VectorXcd amps) : n(qubits), amplitudes(std::move(amps)) {
    if (qubits < 0 || qubits > kMaxBruteQubits)
        throw std::invalid_argument(fmt::format("dense state qubit count {} out of range", qubits));
    if (amplitudes.size() != (Eigen::Index{1} << qubits))
        throw std::invalid_argument(
            fmt::format("amplitude vector of length {} does not match {} qubits", amplitudes.size(), qubits));
}

DenseState& DenseState::normalize() {
    const double nrm = amplitudes.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::domain_error("cannot normalize a zero or non-finite state");
    amplitudes /= nrm;
    return *this;
}

DenseState DenseState::zero(int n) { return basis(n, 0); }

DenseState DenseState::plus(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    return DenseState(n, Eigen::VectorXcd::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

DenseState DenseState::basis(const Bitstring& bits) {
    return basis(static_cast<int>(bits.size()), index_from_bits(bits));
}

DenseState DenseState::basis(int n, std::uint64_t index) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    if (index >= static_cast<std::uint64_t>(amps.size())) throw std::out_of_range("basis index out of range");
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return DenseState(n, std::move(amps));
}

DenseState random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd amps(Eigen::Index{1} << n);
    for (auto& a : amps) a = cplx(gauss(rng), gauss(rng));
    DenseState psi(n, std::move(amps));
    psi.normalize();
    return psi;
}

cplx inner(const DenseState& a, const DenseState& b) {
    if (a.n != b.n) throw std::invalid_argument("inner product of states with different qubit counts");
    return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the left operand
}

double fidelity(const DenseState& a, const DenseState& b) {
    const double na = a.amplitudes.squaredNorm(), nb = b.amplitudes.squaredNorm();
    return std::norm(inner(a, b)) / (na * nb);
}

}  // namespace cqo
