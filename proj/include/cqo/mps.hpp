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
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cqo/problems.hpp"
#include "cqo/state.hpp"

namespace cqo {

/// Open-boundary matrix product state. sites[i][s] is the (left x right) bond
/// matrix for physical value s on site i; the outer bonds have dimension 1.
/// Canonical routines leave the state left-canonical with the orthogonality
/// centre on the last site.
struct Mps {
    std::vector<std::array<Eigen::MatrixXcd, 2>> sites;

    int size() const { return static_cast<int>(sites.size()); }
    int left_dim(int i) const { return static_cast<int>(sites[i][0].rows()); }
    int right_dim(int i) const { return static_cast<int>(sites[i][0].cols()); }
    int bond_dim(int bond) const { return right_dim(bond); }  // between sites bond and bond + 1
    int max_bond() const;
    std::vector<int> bond_dims() const;
    void validate() const;
};

inline constexpr double kSvdCutoff = 1e-12;

Mps plus_state(int n);
Mps basis_mps(const Bitstring& bits);
// Random Gaussian site tensors with the given bulk bond dimension; not normalized.
Mps random_mps(int n, int chi, std::mt19937_64& rng);
// Exact (or chi-capped) decomposition by sequential SVDs; result is left-canonical.
Mps from_dense(const DenseState& psi, int chi_max = 1 << 30, double cutoff = kSvdCutoff);
DenseState to_dense(const Mps& mps);

cplx overlap(const Mps& bra, const Mps& ket);  // <bra|ket>
double norm(const Mps& mps);
double fidelity(const Mps& mps, const DenseState& psi);
double fidelity(const Mps& a, const Mps& b);

Mps left_canonicalize(Mps mps, bool normalize = true);
bool is_left_canonical(const Mps& mps, double tol = 1e-10);

struct TruncationResult {
    Mps mps;
    double error = 0.0;  // sqrt of the summed discarded squared singular values
};

/// Truncates every bond to chi_max in canonical gauge: a left-canonicalizing QR
/// sweep, then a right-to-left SVD sweep that drops singular values beyond
/// chi_max or below cutoff * (largest), then a QR sweep back to left-canonical
/// storage. The output is normalized.
TruncationResult canonical_truncate(const Mps& mps, int chi_max, double cutoff = kSvdCutoff);

/// Applies a two-qubit gate on (i, i+1), index order 2 * s_i + s_{i+1}, and
/// splits by SVD. The discarded weight is added to *discarded when given.
Mps apply_two_site_gate(Mps mps, int i, const Eigen::Matrix4cd& gate, int chi_max = 1 << 30,
                        double cutoff = kSvdCutoff, double* discarded = nullptr);

/// Perfect sampling by sequential conditional probabilities (site n-1 first).
/// The input is canonicalized internally; deterministic under a fixed seed.
// <s|psi> by a single contraction pass; psi need not be normalized.
cplx amplitude(const Mps& mps, const Bitstring& bits);

std::vector<Bitstring> sample(const Mps& mps, int k, std::uint64_t seed);

/// |<s|mps>|^2 / <mps|mps> for every basis state, via to_dense.
std::vector<double> probabilities(const Mps& mps);

}  // namespace cqo
