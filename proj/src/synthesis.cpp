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

#include "cqo/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "cqo/kak.hpp"

namespace cqo {

using Eigen::Matrix4cd;

void StaircaseCircuit::validate(double tol) const {
    if (n < 2) throw std::invalid_argument("staircase circuits need at least two qubits");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (static_cast<int>(layers[l].size()) != n - 1)
            throw std::invalid_argument(fmt::format("layer {} has {} gates, expected {}", l, layers[l].size(), n - 1));
        for (std::size_t i = 0; i < layers[l].size(); ++i)
            if (!is_unitary(layers[l][i], tol))
                throw std::invalid_argument(fmt::format("gate {} of layer {} is not unitary", i, l));
    }
}

StaircaseCircuit StaircaseCircuit::identity(int n, int k) {
    StaircaseCircuit c{n, {}};
    c.layers.assign(k, std::vector<Matrix4cd>(std::max(0, n - 1), Matrix4cd::Identity()));
    return c;
}

namespace {

void gate_in_place(Eigen::VectorXcd& a, int n, int i, const Matrix4cd& g) {
    const Eigen::Index hi = Eigen::Index{1} << (n - 1 - i), lo = Eigen::Index{1} << (n - 2 - i);
    for (Eigen::Index s = 0; s < a.size(); ++s) {
        if (s & (hi | lo)) continue;
        const Eigen::Vector4cd v(a[s], a[s | lo], a[s | hi], a[s | hi | lo]);
        const Eigen::Vector4cd w = g * v;
        a[s] = w[0];
        a[s | lo] = w[1];
        a[s | hi] = w[2];
        a[s | hi | lo] = w[3];
    }
}

// M(a, b) = sum over the other qubits of conj(bra[a; rest]) * ket[b; rest].
Matrix4cd pair_environment(const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket, int n, int i) {
    const Eigen::Index hi = Eigen::Index{1} << (n - 1 - i), lo = Eigen::Index{1} << (n - 2 - i);
    Matrix4cd m = Matrix4cd::Zero();
    for (Eigen::Index s = 0; s < bra.size(); ++s) {
        if (s & (hi | lo)) continue;
        const Eigen::Vector4cd b(bra[s], bra[s | lo], bra[s | hi], bra[s | hi | lo]);
        const Eigen::Vector4cd k(ket[s], ket[s | lo], ket[s | hi], ket[s | hi | lo]);
        m.noalias() += b.conjugate() * k.transpose();
    }
    return m;
}

// Unitary whose leading columns are the given orthonormal columns.
Eigen::MatrixXcd complete_unitary(const Eigen::MatrixXcd& cols) {
    const Eigen::Index dim = cols.rows(), k = cols.cols();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd u(dim, dim);
    u.leftCols(k) = cols;
    u.rightCols(dim - k) = q.rightCols(dim - k);
    return u;
}

void check_dense(int n) {
    if (n < 2) throw std::invalid_argument("staircase circuits need at least two qubits");
    if (n > kMaxDenseQubits)
        throw std::invalid_argument(fmt::format("dense circuit simulation limited to {} qubits", kMaxDenseQubits));
}

}  // namespace

DenseState apply_gate(const DenseState& psi, int i, const Matrix4cd& gate) {
    if (i < 0 || i + 1 >= psi.n) throw std::out_of_range(fmt::format("gate position {} invalid", i));
    DenseState out = psi;
    gate_in_place(out.amplitudes, psi.n, i, gate);
    return out;
}

DenseState apply_circuit(const StaircaseCircuit& circuit, const DenseState& psi) {
    if (psi.n != circuit.n) throw std::invalid_argument("circuit and state sizes differ");
    check_dense(circuit.n);
    DenseState out = psi;
    for (const auto& layer : circuit.layers)
        for (int i = circuit.n - 2; i >= 0; --i) gate_in_place(out.amplitudes, circuit.n, i, layer[i]);
    return out;
}

DenseState circuit_to_state(const StaircaseCircuit& circuit) {
    check_dense(circuit.n);
    return apply_circuit(circuit, DenseState::zero(circuit.n));
}

Mps apply_circuit_inverse(const StaircaseCircuit& circuit, const Mps& mps) {
    if (mps.size() != circuit.n) throw std::invalid_argument("circuit and state sizes differ");
    Mps out = mps;
    for (auto layer = circuit.layers.rbegin(); layer != circuit.layers.rend(); ++layer)
        for (int i = 0; i + 1 < circuit.n; ++i) out = apply_two_site_gate(std::move(out), i, (*layer)[i].adjoint());
    return out;
}

AnalyticLayer analytic_layer(const Mps& input) {
    const int n = input.size();
    if (n < 2) throw std::invalid_argument("staircase circuits need at least two qubits");
    const Mps source = left_canonicalize(input, true);
    const Mps trunc = canonical_truncate(source, 2).mps;

    AnalyticLayer out;
    out.truncation_fidelity = fidelity(trunc, source);
    out.gates.resize(n - 1);
    // Site i > 0 maps |0>|beta> on (i-1, i) to sum A_i^s[alpha, beta] |alpha>|s>.
    for (int i = 1; i < n; ++i) {
        const auto& a = trunc.sites[i];
        Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(4, a[0].cols());
        for (int s = 0; s < 2; ++s)
            for (Eigen::Index alpha = 0; alpha < a[s].rows(); ++alpha) cols.row(2 * alpha + s) = a[s].row(alpha);
        out.gates[i - 1] = complete_unitary(cols);
    }
    // Site 0 is a map from the first bond onto qubit 0, merged into the last gate.
    Eigen::MatrixXcd u0cols(2, trunc.sites[0][0].cols());
    u0cols.row(0) = trunc.sites[0][0].row(0);
    u0cols.row(1) = trunc.sites[0][1].row(0);
    const Eigen::Matrix2cd u0 = complete_unitary(u0cols);
    out.gates[0] = Eigen::kroneckerProduct(u0, Eigen::Matrix2cd::Identity()).eval() * out.gates[0];

    StaircaseCircuit layer{n, {out.gates}};
    out.residual = apply_circuit_inverse(layer, source);
    return out;
}

double circuit_fidelity(const StaircaseCircuit& circuit, const DenseState& target) {
    return fidelity(circuit_to_state(circuit), target);
}

RefineResult variational_refine(const StaircaseCircuit& circuit, const DenseState& target, int sweeps, double tol) {
    if (target.n != circuit.n) throw std::invalid_argument("circuit and target sizes differ");
    check_dense(circuit.n);
    if (sweeps < 0) throw std::invalid_argument("sweep count must be non-negative");
    const int n = circuit.n;
    DenseState psi = target;
    psi.normalize();

    RefineResult out{circuit, {}};
    std::vector<std::pair<int, int>> order;  // (layer, position) in application order
    for (int l = 0; l < circuit.depth(); ++l)
        for (int i = n - 2; i >= 0; --i) order.emplace_back(l, i);
    auto gate = [&](std::size_t m) -> Matrix4cd& { return out.circuit.layers[order[m].first][order[m].second]; };

    out.fidelity.push_back(circuit_fidelity(out.circuit, psi));
    if (order.empty()) return out;
    std::vector<Eigen::VectorXcd> back(order.size());
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        back.back() = psi.amplitudes;
        for (std::size_t m = order.size() - 1; m > 0; --m) {
            back[m - 1] = back[m];
            gate_in_place(back[m - 1], n, order[m].second, gate(m).adjoint());
        }
        Eigen::VectorXcd fwd = DenseState::zero(n).amplitudes;
        for (std::size_t m = 0; m < order.size(); ++m) {
            const Matrix4cd env = pair_environment(back[m], fwd, n, order[m].second).transpose();
            Eigen::JacobiSVD<Matrix4cd> svd(env, Eigen::ComputeFullU | Eigen::ComputeFullV);
            gate(m) = svd.matrixV() * svd.matrixU().adjoint();
            gate_in_place(fwd, n, order[m].second, gate(m));
        }
        const double f = std::norm(psi.amplitudes.dot(fwd));
        const double previous = out.fidelity.back();
        out.fidelity.push_back(f);
        if (f - previous < tol) break;
    }
    return out;
}

RefineResult variational_refine(const StaircaseCircuit& circuit, const Mps& target, int sweeps, double tol) {
    return variational_refine(circuit, to_dense(target), sweeps, tol);
}

SynthesisResult synthesize(const Mps& mps, const SynthesisOptions& options) {
    if (options.k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    const int n = mps.size();
    check_dense(n);
    const DenseState target = to_dense(mps);
    const Mps source = left_canonicalize(mps, true);

    SynthesisResult out;
    out.circuit = StaircaseCircuit{n, {}};
    double current = std::norm(target.amplitudes[0]);
    for (int k = 1; k <= options.k_max; ++k) {
        const AnalyticLayer layer = analytic_layer(apply_circuit_inverse(out.circuit, source));
        StaircaseCircuit analytic = out.circuit;
        analytic.layers.insert(analytic.layers.begin(), layer.gates);
        StaircaseCircuit padded = out.circuit;
        padded.layers.insert(padded.layers.begin(), std::vector<Matrix4cd>(n - 1, Matrix4cd::Identity()));
        // Starting from the better of the two keeps the fidelity monotone in k.
        const double f_analytic = circuit_fidelity(analytic, target);
        StaircaseCircuit start = f_analytic >= current ? std::move(analytic) : std::move(padded);
        RefineResult refined = variational_refine(start, target, options.sweeps);
        out.circuit = std::move(refined.circuit);
        current = circuit_fidelity(out.circuit, target);
        out.fidelity_by_depth.push_back(current);
        if (current >= options.fidelity_target) break;
    }
    out.fidelity = current;
    out.reached_target = current >= options.fidelity_target;
    return out;
}

}  // namespace cqo
