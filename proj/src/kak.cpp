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

#include "cqo/kak.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace cqo {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Matrix4d;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr cplx kI(0.0, 1.0);

const std::array<Matrix2cd, 3>& paulis() {
    static const std::array<Matrix2cd, 3> p{(Matrix2cd() << 0, 1, 1, 0).finished(),
                                            (Matrix2cd() << 0, -kI, kI, 0).finished(),
                                            (Matrix2cd() << 1, 0, 0, -1).finished()};
    return p;
}

Matrix4cd kron(const Matrix2cd& a, const Matrix2cd& b) { return Eigen::kroneckerProduct(a, b).eval(); }

Matrix4cd pauli_pair(int j) { return kron(paulis()[j], paulis()[j]); }

const Matrix4cd& magic() {
    static const Matrix4cd b = [] {
        Matrix4cd m;
        m << 1, 0, 0, kI, 0, kI, 1, 0, 0, kI, -1, 0, 1, 0, 0, -kI;
        return Matrix4cd(m / std::sqrt(2.0));
    }();
    return b;
}

// Diagonal of B^dag (sigma_j (x) sigma_j) B, entries +-1.
const std::array<Eigen::Vector4d, 3>& magic_signs() {
    static const std::array<Eigen::Vector4d, 3> s = [] {
        std::array<Eigen::Vector4d, 3> out;
        for (int j = 0; j < 3; ++j) out[j] = (magic().adjoint() * pauli_pair(j) * magic()).diagonal().real();
        return out;
    }();
    return s;
}

// Factor a local 4x4 unitary into a (x) b with both factors unitary.
std::pair<Matrix2cd, Matrix2cd> split_local(const Matrix4cd& k) {
    Matrix4cd r;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) r(2 * i1 + j1, 2 * i2 + j2) = k(2 * i1 + i2, 2 * j1 + j2);
    Eigen::JacobiSVD<Matrix4cd> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = std::sqrt(svd.singularValues()[0]);
    Matrix2cd a, b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            a(i, j) = s * svd.matrixU()(2 * i + j, 0);
            b(i, j) = s * std::conj(svd.matrixV()(2 * i + j, 0));
        }
    const double scale = std::sqrt(std::abs(a.determinant()));
    return {a / scale, b * scale};
}

struct Working {
    Matrix4cd left, right;  // local parts, u = e^{i phase} left * core(c) * right
    std::array<double, 3> c;
    double phase;

    // core(c) = w * core(c') * w^dag for a local w permuting/flipping the Pauli pairs.
    void conjugate(const Matrix4cd& w) {
        std::array<double, 3> next{0.0, 0.0, 0.0};
        for (int j = 0; j < 3; ++j) {
            const Matrix4cd m = w.adjoint() * pauli_pair(j) * w;
            for (int k = 0; k < 3; ++k) {
                const double t = (m * pauli_pair(k)).trace().real() / 4.0;
                if (std::abs(t) > 0.5) next[k] = t > 0 ? c[j] : -c[j];
            }
        }
        c = next;
        left = left * w;
        right = w.adjoint() * right;
    }

    // core(c) = core(c - pi/2 e_j) * i sigma_j sigma_j
    void shift(int j, double direction) {
        c[j] -= direction * 2.0 * kQuarterPi;
        right = pauli_pair(j) * right;
        phase += direction * std::numbers::pi / 2.0;
    }
};

Matrix2cd phase_gate() { return (Matrix2cd() << 1, 0, 0, kI).finished(); }
Matrix2cd hadamard() { return (Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0); }
Matrix2cd rx_half() { return (Matrix2cd() << 1, -kI, -kI, 1).finished() / std::sqrt(2.0); }

void swap_coefficients(Working& w, int a, int b) {
    if (a > b) std::swap(a, b);
    Matrix2cd v;
    if (a == 0 && b == 1) v = phase_gate();
    else if (a == 0 && b == 2) v = hadamard();
    else v = rx_half();
    w.conjugate(kron(v, v));
}

// Conjugation by sigma_keep (x) I flips the signs of the other two coefficients.
void flip_pair(Working& w, int keep) { w.conjugate(kron(paulis()[keep], Matrix2cd::Identity())); }

}  // namespace

Matrix4cd interaction_core(const std::array<double, 3>& c) {
    // The three Pauli pairs commute, so the exponential factorizes.
    Matrix4cd out = Matrix4cd::Identity();
    for (int j = 0; j < 3; ++j) out = out * (std::cos(c[j]) * Matrix4cd::Identity() + kI * std::sin(c[j]) * pauli_pair(j));
    return out;
}

Matrix4cd KakDecomposition::reconstruct() const {
    return std::polar(1.0, global_phase) * kron(k1, k2) * interaction_core(c) * kron(k3, k4);
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

KakDecomposition kak_decompose(const Matrix4cd& u) {
    if (!is_unitary(u)) throw std::invalid_argument("KAK decomposition requires a unitary matrix");
    const cplx det_root = std::pow(u.determinant(), 0.25);
    const Matrix4cd su = u / det_root;
    const Matrix4cd up = magic().adjoint() * su * magic();
    const Matrix4cd m = up.transpose() * up;

    // Real and imaginary parts of m commute; a generic combination shares their eigenbasis.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(0.5, 1.5);
    Matrix4d p;
    bool found = false;
    for (int attempt = 0; attempt < 50 && !found; ++attempt) {
        const Matrix4d mix = coef(rng) * m.real() + coef(rng) * m.imag();
        Eigen::SelfAdjointEigenSolver<Matrix4d> eig(mix);
        p = eig.eigenvectors();
        const Matrix4cd d = p.transpose() * m * p;
        found = (d - Matrix4cd(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-10;
    }
    if (!found) throw std::runtime_error("KAK: failed to diagonalize the magic-basis square");
    if (p.determinant() < 0) p.col(0) *= -1.0;
    const Eigen::Vector4cd d = (p.transpose() * m * p).diagonal();
    Eigen::Vector4cd delta = d.cwiseSqrt();
    Matrix4cd o1 = up * p * delta.cwiseInverse().asDiagonal();
    if (o1.determinant().real() < 0) {
        delta[0] = -delta[0];
        o1.col(0) *= -1.0;
    }

    // arg(delta_k) = phi + sum_j c_j s_j(k); the sign matrix is orthogonal up to 1/4.
    Matrix4d sys;
    const auto& s = magic_signs();
    for (int k = 0; k < 4; ++k) sys.row(k) << 1.0, s[0][k], s[1][k], s[2][k];
    Eigen::Vector4d theta;
    for (int k = 0; k < 4; ++k) theta[k] = std::arg(delta[k]);
    const Eigen::Vector4d sol = sys.partialPivLu().solve(theta);

    Working w;
    w.left = magic() * o1 * magic().adjoint();
    w.right = magic() * p.transpose().cast<cplx>() * magic().adjoint();
    w.c = {sol[1], sol[2], sol[3]};
    w.phase = sol[0] + std::arg(det_root);

    const double tol = 1e-12;
    for (int j = 0; j < 3; ++j) {
        while (w.c[j] > kQuarterPi + tol) w.shift(j, 1.0);
        while (w.c[j] <= -kQuarterPi + tol) w.shift(j, -1.0);
    }
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < 2; ++j)
            if (std::abs(w.c[j]) + tol < std::abs(w.c[j + 1])) swap_coefficients(w, j, j + 1);
    for (int guard = 0; guard < 3 && (w.c[0] < 0 || w.c[1] < 0); ++guard) {
        if (w.c[0] < 0 && w.c[1] < 0) flip_pair(w, 2);
        else if (w.c[0] < 0) flip_pair(w, 1);
        else flip_pair(w, 0);
    }
    if (std::abs(w.c[0] - kQuarterPi) < 1e-9 && w.c[2] < -tol) {
        w.shift(0, 1.0);
        flip_pair(w, 1);
    }

    KakDecomposition out;
    std::tie(out.k1, out.k2) = split_local(w.left);
    std::tie(out.k3, out.k4) = split_local(w.right);
    for (int j = 0; j < 3; ++j) out.c[j] = w.c[j] + 0.0;  // no negative zeros in output files
    // Collect whatever phase the local factorization left behind.
    const Matrix4cd bare = kron(out.k1, out.k2) * interaction_core(out.c) * kron(out.k3, out.k4);
    out.global_phase = std::arg((bare.adjoint() * u).trace());
    return out;
}

Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(dim, dim);
    for (Eigen::Index k = 0; k < z.size(); ++k) z.data()[k] = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (int k = 0; k < dim; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
    return q;
}

}  // namespace cqo
