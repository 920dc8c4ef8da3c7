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

#include "cqo/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

using Eigen::MatrixXcd;

namespace {

using Site = std::array<MatrixXcd, 2>;

// Rows s * Dl + a.
MatrixXcd stack_rows(const Site& site) {
    const auto dl = site[0].rows(), dr = site[0].cols();
    MatrixXcd m(2 * dl, dr);
    m.topRows(dl) = site[0];
    m.bottomRows(dl) = site[1];
    return m;
}

Site unstack_rows(const MatrixXcd& m) {
    const auto dl = m.rows() / 2;
    return {m.topRows(dl), m.bottomRows(dl)};
}

// Columns s * Dr + b.
MatrixXcd stack_cols(const Site& site) {
    const auto dl = site[0].rows(), dr = site[0].cols();
    MatrixXcd m(dl, 2 * dr);
    m.leftCols(dr) = site[0];
    m.rightCols(dr) = site[1];
    return m;
}

Eigen::Index kept_rank(const Eigen::VectorXd& sv, int chi_max, double cutoff) {
    if (sv.size() == 0) return 0;
    const double largest = sv[0];
    Eigen::Index k = 0;
    while (k < sv.size() && k < chi_max && sv[k] > cutoff * largest) ++k;
    return std::max<Eigen::Index>(k, 1);
}

double site_weight(const Site& site) { return site[0].squaredNorm() + site[1].squaredNorm(); }

}  // namespace

int Mps::max_bond() const {
    int chi = 1;
    for (int i = 0; i + 1 < size(); ++i) chi = std::max(chi, bond_dim(i));
    return chi;
}

std::vector<int> Mps::bond_dims() const {
    std::vector<int> dims;
    for (int i = 0; i + 1 < size(); ++i) dims.push_back(bond_dim(i));
    return dims;
}

void Mps::validate() const {
    if (sites.empty()) throw std::invalid_argument("MPS must have at least one site");
    for (int i = 0; i < size(); ++i) {
        if (sites[i][0].rows() != sites[i][1].rows() || sites[i][0].cols() != sites[i][1].cols())
            throw std::invalid_argument(fmt::format("site {} physical slices have different shapes", i));
        if (i + 1 < size() && right_dim(i) != left_dim(i + 1))
            throw std::invalid_argument(fmt::format("bond {} dimension mismatch: {} vs {}", i, right_dim(i), left_dim(i + 1)));
    }
    if (left_dim(0) != 1 || right_dim(size() - 1) != 1) throw std::invalid_argument("MPS boundary bonds must be 1");
}

Mps plus_state(int n) {
    if (n < 1) throw std::invalid_argument("MPS needs at least one site");
    Mps mps;
    const double a = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) mps.sites.push_back({MatrixXcd::Constant(1, 1, a), MatrixXcd::Constant(1, 1, a)});
    return mps;
}

Mps basis_mps(const Bitstring& bits) {
    if (bits.empty()) throw std::invalid_argument("MPS needs at least one site");
    Mps mps;
    for (auto b : bits)
        mps.sites.push_back({MatrixXcd::Constant(1, 1, b ? 0.0 : 1.0), MatrixXcd::Constant(1, 1, b ? 1.0 : 0.0)});
    return mps;
}

Mps random_mps(int n, int chi, std::mt19937_64& rng) {
    if (n < 1 || chi < 1) throw std::invalid_argument("random MPS needs n >= 1 and chi >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto bond = [&](int b) {  // bond b sits left of site b
        if (b <= 0 || b >= n) return 1;
        const int edge = std::min(b, n - b);
        return edge >= 30 ? chi : std::min(chi, 1 << edge);
    };
    Mps mps;
    for (int i = 0; i < n; ++i) {
        Site site;
        for (auto& m : site) {
            m.resize(bond(i), bond(i + 1));
            for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = cplx(gauss(rng), gauss(rng));
        }
        mps.sites.push_back(std::move(site));
    }
    return mps;
}

Mps from_dense(const DenseState& psi, int chi_max, double cutoff) {
    const int n = psi.n;
    if (n < 1) throw std::invalid_argument("MPS needs at least one site");
    Mps mps;
    // rest(a, idx) with idx running over the remaining qubits, most significant first.
    MatrixXcd rest = psi.amplitudes.transpose();
    for (int i = 0; i < n - 1; ++i) {
        const Eigen::Index dl = rest.rows();
        const Eigen::Index half = rest.cols() / 2;
        MatrixXcd x(2 * dl, half);
        x.topRows(dl) = rest.leftCols(half);
        x.bottomRows(dl) = rest.rightCols(half);
        Eigen::BDCSVD<MatrixXcd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto k = kept_rank(svd.singularValues(), chi_max, cutoff);
        mps.sites.push_back(unstack_rows(svd.matrixU().leftCols(k)));
        rest = svd.singularValues().head(k).asDiagonal() * svd.matrixV().leftCols(k).adjoint();
    }
    mps.sites.push_back({rest.col(0), rest.col(1)});
    return mps;
}

DenseState to_dense(const Mps& mps) {
    mps.validate();
    if (mps.size() > kMaxDenseQubits)
        throw std::invalid_argument(fmt::format("dense conversion limited to {} qubits", kMaxDenseQubits));
    MatrixXcd partial = MatrixXcd::Ones(1, 1);
    for (const auto& site : mps.sites) {
        MatrixXcd next(partial.rows() * 2, site[0].cols());
        const MatrixXcd p0 = partial * site[0], p1 = partial * site[1];
        for (Eigen::Index r = 0; r < partial.rows(); ++r) {
            next.row(2 * r) = p0.row(r);
            next.row(2 * r + 1) = p1.row(r);
        }
        partial = std::move(next);
    }
    DenseState psi(mps.size(), partial.col(0));
    psi.normalize();
    return psi;
}

cplx overlap(const Mps& bra, const Mps& ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("overlap of MPS with different lengths");
    MatrixXcd env = MatrixXcd::Ones(1, 1);
    for (int i = 0; i < bra.size(); ++i)
        env = bra.sites[i][0].adjoint() * env * ket.sites[i][0] + bra.sites[i][1].adjoint() * env * ket.sites[i][1];
    return env(0, 0);
}

double norm(const Mps& mps) { return std::sqrt(std::max(0.0, overlap(mps, mps).real())); }

double fidelity(const Mps& mps, const DenseState& psi) {
    if (mps.size() != psi.n) throw std::invalid_argument("fidelity between states of different size");
    return fidelity(to_dense(mps), psi);
}

double fidelity(const Mps& a, const Mps& b) {
    const double na = overlap(a, a).real(), nb = overlap(b, b).real();
    return std::norm(overlap(a, b)) / (na * nb);
}

Mps left_canonicalize(Mps mps, bool normalize) {
    mps.validate();
    const int n = mps.size();
    for (int i = 0; i + 1 < n; ++i) {
        const MatrixXcd m = stack_rows(mps.sites[i]);
        Eigen::HouseholderQR<MatrixXcd> qr(m);
        const Eigen::Index k = std::min(m.rows(), m.cols());
        const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(m.rows(), k);
        const MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        mps.sites[i] = unstack_rows(q);
        for (auto& slice : mps.sites[i + 1]) slice = r * slice;
    }
    if (normalize) {
        const double w = std::sqrt(site_weight(mps.sites[n - 1]));
        if (!(w > 0.0) || !std::isfinite(w)) throw std::domain_error("cannot normalize a zero-norm MPS");
        for (auto& slice : mps.sites[n - 1]) slice /= w;
    }
    return mps;
}

bool is_left_canonical(const Mps& mps, double tol) {
    for (int i = 0; i + 1 < mps.size(); ++i) {
        const MatrixXcd gram = mps.sites[i][0].adjoint() * mps.sites[i][0] + mps.sites[i][1].adjoint() * mps.sites[i][1];
        if ((gram - MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > tol) return false;
    }
    return std::abs(site_weight(mps.sites.back()) - 1.0) <= tol;
}

TruncationResult canonical_truncate(const Mps& input, int chi_max, double cutoff) {
    if (chi_max < 1) throw std::invalid_argument("chi_max must be at least 1");
    Mps mps = left_canonicalize(input, true);
    const int n = mps.size();
    double discarded = 0.0;
    for (int i = n - 1; i >= 1; --i) {
        const Eigen::Index dr = mps.sites[i][0].cols();
        Eigen::BDCSVD<MatrixXcd> svd(stack_cols(mps.sites[i]), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        const auto k = kept_rank(sv, chi_max, cutoff);
        discarded += sv.tail(sv.size() - k).squaredNorm();
        const MatrixXcd vh = svd.matrixV().leftCols(k).adjoint();
        mps.sites[i] = {vh.leftCols(dr), vh.rightCols(dr)};
        const MatrixXcd us = svd.matrixU().leftCols(k) * sv.head(k).asDiagonal();
        for (auto& slice : mps.sites[i - 1]) slice = slice * us;
    }
    return {left_canonicalize(std::move(mps), true), std::sqrt(discarded)};
}

Mps apply_two_site_gate(Mps mps, int i, const Eigen::Matrix4cd& gate, int chi_max, double cutoff, double* discarded) {
    if (i < 0 || i + 1 >= mps.size()) throw std::out_of_range(fmt::format("gate position {} invalid", i));
    const auto& a = mps.sites[i];
    const auto& b = mps.sites[i + 1];
    const Eigen::Index dl = a[0].rows(), dr = b[0].cols();
    std::array<MatrixXcd, 4> theta;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) theta[2 * s1 + s2] = a[s1] * b[s2];
    MatrixXcd m = MatrixXcd::Zero(2 * dl, 2 * dr);
    for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2) {
            auto block = m.block(t1 * dl, t2 * dr, dl, dr);
            for (int s = 0; s < 4; ++s) {
                const cplx g = gate(2 * t1 + t2, s);
                if (g != cplx(0.0)) block += g * theta[s];
            }
        }
    Eigen::BDCSVD<MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const auto k = kept_rank(sv, chi_max, cutoff);
    if (discarded) *discarded += sv.tail(sv.size() - k).squaredNorm();
    const MatrixXcd u = svd.matrixU().leftCols(k);
    const MatrixXcd svh = sv.head(k).asDiagonal() * svd.matrixV().leftCols(k).adjoint();
    mps.sites[i] = {u.topRows(dl), u.bottomRows(dl)};
    mps.sites[i + 1] = {svh.leftCols(dr), svh.rightCols(dr)};
    return mps;
}

cplx amplitude(const Mps& mps, const Bitstring& bits) {
    if (static_cast<int>(bits.size()) != mps.size())
        throw std::invalid_argument(fmt::format("bitstring has {} bits, MPS {} sites", bits.size(), mps.size()));
    Eigen::RowVectorXcd env = Eigen::RowVectorXcd::Ones(1);
    for (int i = 0; i < mps.size(); ++i) env = env * mps.sites[i][bits[i] ? 1 : 0];
    return env(0);
}

std::vector<Bitstring> sample(const Mps& input, int k, std::uint64_t seed) {
    if (k < 0) throw std::invalid_argument("sample count must be non-negative");
    const Mps mps = left_canonicalize(input, true);
    const int n = mps.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Bitstring> out;
    out.reserve(k);
    for (int draw = 0; draw < k; ++draw) {
        Bitstring bits(n);
        Eigen::VectorXcd env = Eigen::VectorXcd::Ones(1);
        for (int i = n - 1; i >= 0; --i) {
            Eigen::VectorXcd v0 = mps.sites[i][0] * env;
            Eigen::VectorXcd v1 = mps.sites[i][1] * env;
            const double p0 = v0.squaredNorm(), p1 = v1.squaredNorm();
            const bool one = unit(rng) * (p0 + p1) >= p0;
            bits[i] = one;
            env = one ? Eigen::VectorXcd(v1 / std::sqrt(p1)) : Eigen::VectorXcd(v0 / std::sqrt(p0));
        }
        out.push_back(std::move(bits));
    }
    return out;
}

std::vector<double> probabilities(const Mps& mps) {
    const DenseState psi = to_dense(mps);
    std::vector<double> p(psi.dim());
    for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) p[s] = std::norm(psi.amplitudes[s]);
    return p;
}

}  // namespace cqo
