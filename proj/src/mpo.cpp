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

#include "cqo/mpo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cqo/analytics.hpp"

namespace cqo {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;

namespace {

const Matrix2cd kI = Matrix2cd::Identity();
const Matrix2cd kZ = (Matrix2cd() << 1, 0, 0, -1).finished();

bool is_zero(const Matrix2cd& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

void check_step(double delta_tau) {
    if (!(delta_tau >= 0.0) || !std::isfinite(delta_tau))
        throw std::invalid_argument(fmt::format("imaginary time step must be non-negative, got {}", delta_tau));
}

// Blocks of -H, so that the first-order formulas below approximate exp(-dt H).
struct NegatedBlocks {
    const HamiltonianBlocks& b;
    Matrix2cd D(int i) const { return -b.D[i]; }
    Matrix2cd C(int i, int k) const { return -b.C[i][k]; }
    const Matrix2cd& B(int i, int j) const { return b.B[i][j]; }
    const Matrix2cd& A(int i, int j, int k) const { return b.a_at(i, j, k); }
};

// First block column of exp([[X,0,0,0],[c,X,0,0],[b,0,X,0],[a,b,c,X]]) with X = dt D.
std::array<Matrix2cd, 4> block_exp(const Matrix2cd& d, const Matrix2cd& c, const Matrix2cd& b, const Matrix2cd& a,
                                   double dt) {
    const double r = std::sqrt(dt);
    Eigen::Matrix<cplx, 8, 8> g = Eigen::Matrix<cplx, 8, 8>::Zero();
    for (int k = 0; k < 4; ++k) g.block<2, 2>(2 * k, 2 * k) = dt * d;
    g.block<2, 2>(2, 0) = r * c;
    g.block<2, 2>(4, 0) = r * b;
    g.block<2, 2>(6, 0) = a;
    g.block<2, 2>(6, 2) = r * b;
    g.block<2, 2>(6, 4) = r * c;
    const Eigen::Matrix<cplx, 8, 8> e = g.exp();
    return {e.block<2, 2>(0, 0), e.block<2, 2>(2, 0), e.block<2, 2>(4, 0), e.block<2, 2>(6, 0)};
}

}  // namespace

int Mpo::max_bond() const {
    int w = 1;
    for (const auto& s : sites) w = std::max(w, s.right);
    return w;
}

void Mpo::validate() const {
    if (sites.empty()) throw std::invalid_argument("MPO must have at least one site");
    for (int i = 0; i + 1 < size(); ++i)
        if (sites[i].right != sites[i + 1].left)
            throw std::invalid_argument(fmt::format("MPO bond {} dimension mismatch", i));
    if (sites.front().left != 1 || sites.back().right != 1) throw std::invalid_argument("MPO boundary bonds must be 1");
}

MatrixXcd to_dense_operator(const Mpo& mpo) {
    mpo.validate();
    if (mpo.size() > 12) throw std::invalid_argument("dense MPO contraction limited to 12 sites");
    std::vector<MatrixXcd> carry{MatrixXcd::Ones(1, 1)};
    for (const auto& site : mpo.sites) {
        const Eigen::Index dim = carry[0].rows() * 2;
        std::vector<MatrixXcd> next(site.right, MatrixXcd::Zero(dim, dim));
        for (int a = 0; a < site.left; ++a)
            for (int b = 0; b < site.right; ++b)
                if (!is_zero(site.at(a, b))) next[b] += Eigen::kroneckerProduct(carry[a], site.at(a, b)).eval();
        carry = std::move(next);
    }
    return carry[0];
}

HamiltonianBlocks build_blocks(const IsingHamiltonian& h) {
    h.validate();
    HamiltonianBlocks blocks;
    const int n = h.n;
    blocks.n = n;
    blocks.offset = h.offset;
    blocks.channels.assign(std::max(0, n - 1), {});
    // One channel per target site b, carrying sum_a J_ab Z_a from every opener a <= bond.
    for (const auto& [pair, value] : h.J) {
        if (value == 0.0) continue;
        for (int bond = pair.first; bond < pair.second; ++bond) blocks.channels[bond].push_back(pair.second);
    }
    for (auto& targets : blocks.channels) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }
    for (int i = 0; i < n; ++i) {
        blocks.D.push_back(h.h[i] * kZ);
        const int nl = blocks.channels_left(i), nr = blocks.channels_right(i);
        std::vector<Matrix2cd> c(nr, Matrix2cd::Zero()), b(nl, Matrix2cd::Zero());
        std::vector<Matrix2cd> a(static_cast<std::size_t>(nl) * nr, Matrix2cd::Zero());
        for (int k = 0; k < nr; ++k) {
            const auto it = h.J.find({i, blocks.channels[i][k]});
            if (it != h.J.end()) c[k] = it->second * kZ;
        }
        for (int j = 0; j < nl; ++j) {
            const int target = blocks.channels[i - 1][j];
            if (target == i) {
                b[j] = kZ;
                continue;
            }
            for (int k = 0; k < nr; ++k)
                if (blocks.channels[i][k] == target) a[static_cast<std::size_t>(j) * nr + k] = kI;
        }
        blocks.C.push_back(std::move(c));
        blocks.B.push_back(std::move(b));
        blocks.A.push_back(std::move(a));
    }
    return blocks;
}

Mpo hamiltonian_mpo(const HamiltonianBlocks& blocks) {
    const int n = blocks.n;
    if (n < 1) throw std::invalid_argument("Hamiltonian must have at least one qubit");
    Mpo mpo;
    for (int i = 0; i < n; ++i) {
        const int nl = blocks.channels_left(i), nr = blocks.channels_right(i);
        MpoSite full(nl + 2, nr + 2);
        full.at(0, 0) = kI;
        full.at(nl + 1, nr + 1) = kI;
        full.at(0, nr + 1) = blocks.D[i];
        for (int k = 0; k < nr; ++k) full.at(0, 1 + k) = blocks.C[i][k];
        for (int j = 0; j < nl; ++j) {
            full.at(1 + j, nr + 1) = blocks.B[i][j];
            for (int k = 0; k < nr; ++k) full.at(1 + j, 1 + k) = blocks.a_at(i, j, k);
        }
        const int row0 = (i == 0) ? 0 : -1;       // first site keeps the top row
        const int col0 = (i == n - 1) ? nr + 1 : -1;  // last site keeps the last column
        MpoSite site(row0 >= 0 ? 1 : full.left, col0 >= 0 ? 1 : full.right);
        for (int a = 0; a < site.left; ++a)
            for (int b = 0; b < site.right; ++b)
                site.at(a, b) = full.at(row0 >= 0 ? row0 : a, col0 >= 0 ? col0 : b);
        mpo.sites.push_back(std::move(site));
    }
    return mpo;
}

Mpo hamiltonian_mpo(const IsingHamiltonian& h) { return hamiltonian_mpo(build_blocks(h)); }

StepOrder parse_step_order(const std::string& text) {
    if (text == "I" || text == "1") return StepOrder::I;
    if (text == "II" || text == "2") return StepOrder::II;
    throw std::invalid_argument(fmt::format("unknown step order '{}', expected I or II", text));
}

const char* to_string(StepOrder order) { return order == StepOrder::I ? "I" : "II"; }

StepMpo build_wI(const HamiltonianBlocks& blocks, double delta_tau) {
    check_step(delta_tau);
    const NegatedBlocks g{blocks};
    const double r = std::sqrt(delta_tau);
    StepMpo step{{}, StepOrder::I, delta_tau};
    for (int i = 0; i < blocks.n; ++i) {
        const int nl = blocks.channels_left(i), nr = blocks.channels_right(i);
        MpoSite site(nl + 1, nr + 1);
        site.at(0, 0) = kI + delta_tau * g.D(i);
        for (int k = 0; k < nr; ++k) site.at(0, 1 + k) = r * g.C(i, k);
        for (int j = 0; j < nl; ++j) {
            site.at(1 + j, 0) = r * g.B(i, j);
            for (int k = 0; k < nr; ++k) site.at(1 + j, 1 + k) = g.A(i, j, k);
        }
        step.mpo.sites.push_back(std::move(site));
    }
    return step;
}

StepMpo build_wII(const HamiltonianBlocks& blocks, double delta_tau) {
    check_step(delta_tau);
    const NegatedBlocks g{blocks};
    const Matrix2cd zero = Matrix2cd::Zero();
    StepMpo step{{}, StepOrder::II, delta_tau};
    for (int i = 0; i < blocks.n; ++i) {
        const int nl = blocks.channels_left(i), nr = blocks.channels_right(i);
        const Matrix2cd d = g.D(i);
        MpoSite site(nl + 1, nr + 1);
        site.at(0, 0) = block_exp(d, zero, zero, zero, delta_tau)[0];
        for (int k = 0; k < nr; ++k) site.at(0, 1 + k) = block_exp(d, g.C(i, k), zero, zero, delta_tau)[1];
        for (int j = 0; j < nl; ++j) {
            site.at(1 + j, 0) = block_exp(d, zero, g.B(i, j), zero, delta_tau)[2];
            for (int k = 0; k < nr; ++k) {
                const Matrix2cd c = g.C(i, k);
                const Matrix2cd& a = g.A(i, j, k);
                if (is_zero(a) && (is_zero(c) || is_zero(g.B(i, j)))) continue;
                site.at(1 + j, 1 + k) = block_exp(d, c, g.B(i, j), a, delta_tau)[3];
            }
        }
        step.mpo.sites.push_back(std::move(site));
    }
    return step;
}

StepMpo build_step(const HamiltonianBlocks& blocks, double delta_tau, StepOrder order) {
    return order == StepOrder::I ? build_wI(blocks, delta_tau) : build_wII(blocks, delta_tau);
}

TruncationResult apply_mpo(const Mpo& mpo, const Mps& mps, int chi_max, double cutoff) {
    if (chi_max < 1) throw std::invalid_argument("chi_max must be at least 1");
    if (mpo.size() != mps.size())
        throw std::invalid_argument(fmt::format("MPO has {} sites, MPS {}", mpo.size(), mps.size()));
    mpo.validate();
    mps.validate();
    const int n = mps.size();
    const int cap = 2 * chi_max;
    Mps out;
    out.sites.resize(n);
    // carry(k, alpha * chi_l + a): new left bond k, old MPO bond alpha, old MPS bond a.
    MatrixXcd carry = MatrixXcd::Ones(1, 1);
    double zip_discarded = 0.0;
    for (int i = 0; i < n; ++i) {
        const MpoSite& w = mpo.sites[i];
        const auto& site = mps.sites[i];
        const Eigen::Index chi_l = site[0].rows(), chi_r = site[0].cols(), k = carry.rows();
        std::array<MatrixXcd, 2> t{MatrixXcd::Zero(k, w.right * chi_r), MatrixXcd::Zero(k, w.right * chi_r)};
        for (int alpha = 0; alpha < w.left; ++alpha) {
            const auto block = carry.middleCols(alpha * chi_l, chi_l);
            const std::array<MatrixXcd, 2> x{block * site[0], block * site[1]};
            for (int beta = 0; beta < w.right; ++beta) {
                const Matrix2cd& op = w.at(alpha, beta);
                for (int so = 0; so < 2; ++so)
                    for (int si = 0; si < 2; ++si)
                        if (op(so, si) != cplx(0.0)) t[so].middleCols(beta * chi_r, chi_r) += op(so, si) * x[si];
            }
        }
        if (i == n - 1) {
            out.sites[i] = {t[0], t[1]};
            break;
        }
        MatrixXcd stacked(2 * k, t[0].cols());
        stacked.topRows(k) = t[0];
        stacked.bottomRows(k) = t[1];
        Eigen::BDCSVD<MatrixXcd> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        const double total = sv.squaredNorm();
        Eigen::Index r = 0;
        while (r < sv.size() && r < cap && sv[r] > cutoff * sv[0]) ++r;
        r = std::max<Eigen::Index>(r, 1);
        if (total > 0.0) zip_discarded += sv.tail(sv.size() - r).squaredNorm() / total;
        const MatrixXcd u = svd.matrixU().leftCols(r);
        out.sites[i] = {u.topRows(k), u.bottomRows(k)};
        carry = sv.head(r).asDiagonal() * svd.matrixV().leftCols(r).adjoint();
    }
    TruncationResult result = canonical_truncate(out, chi_max, cutoff);
    result.error = std::sqrt(zip_discarded + result.error * result.error);
    return result;
}

TruncationResult evolve_step(const Mps& mps, const StepMpo& step, int chi_max) {
    return apply_mpo(step.mpo, mps, chi_max);
}

cplx expectation(const Mps& mps, const Mpo& mpo) {
    if (mpo.size() != mps.size())
        throw std::invalid_argument(fmt::format("MPO has {} sites, MPS {}", mpo.size(), mps.size()));
    mpo.validate();
    std::vector<MatrixXcd> env{MatrixXcd::Ones(1, 1)};
    for (int i = 0; i < mps.size(); ++i) {
        const MpoSite& w = mpo.sites[i];
        const auto& site = mps.sites[i];
        std::vector<std::array<MatrixXcd, 2>> y(w.left);
        for (int alpha = 0; alpha < w.left; ++alpha) y[alpha] = {env[alpha] * site[0], env[alpha] * site[1]};
        std::vector<MatrixXcd> next(w.right);
        for (int beta = 0; beta < w.right; ++beta) {
            std::array<MatrixXcd, 2> acc{MatrixXcd::Zero(site[0].rows(), site[0].cols()),
                                         MatrixXcd::Zero(site[0].rows(), site[0].cols())};
            for (int alpha = 0; alpha < w.left; ++alpha) {
                const Matrix2cd& op = w.at(alpha, beta);
                for (int so = 0; so < 2; ++so)
                    for (int si = 0; si < 2; ++si)
                        if (op(so, si) != cplx(0.0)) acc[so] += op(so, si) * y[alpha][si];
            }
            next[beta] = site[0].adjoint() * acc[0] + site[1].adjoint() * acc[1];
        }
        env = std::move(next);
    }
    return env[0](0, 0) / overlap(mps, mps);
}

double mps_energy(const Mps& mps, const Mpo& hamiltonian, double offset) {
    return expectation(mps, hamiltonian).real() + offset;
}

double mps_energy(const Mps& mps, const IsingHamiltonian& h) { return mps_energy(mps, hamiltonian_mpo(h), h.offset); }

double sampled_entropy_bits(const Mps& mps, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("entropy estimate needs at least one sample");
    const double nrm = overlap(mps, mps).real();
    double acc = 0.0;
    for (const auto& bits : sample(mps, samples, seed)) acc -= std::log2(std::norm(amplitude(mps, bits)) / nrm);
    return acc / samples;
}

EvolutionTrace imaginary_time_evolve(const IsingHamiltonian& h, const EvolutionOptions& options) {
    if (options.chi_max < 1) throw std::invalid_argument("chi_max must be at least 1");
    if (!(options.delta_tau > 0.0)) throw std::invalid_argument("imaginary time step must be positive");
    if (!(options.t_total >= 0.0) || !std::isfinite(options.t_total))
        throw std::invalid_argument("total imaginary time must be non-negative");
    if (options.record_every < 1) throw std::invalid_argument("record interval must be at least 1");
    const HamiltonianBlocks blocks = build_blocks(h);
    const Mpo hmpo = hamiltonian_mpo(blocks);
    const StepMpo step = build_step(blocks, options.delta_tau, options.order);

    EvolutionTrace trace;
    trace.steps = static_cast<int>(std::lround(options.t_total / options.delta_tau));
    trace.t_total = trace.steps * options.delta_tau;

    auto entropy_of = [&](const Mps& psi, int k) {
        switch (options.entropy) {
        case EntropyMode::None:
            return std::numeric_limits<double>::quiet_NaN();
        case EntropyMode::Exact:
            if (psi.size() <= kMaxDenseQubits) {
                const auto p = probabilities(psi);
                return shannon_entropy_bits(p);
            }
            [[fallthrough]];
        case EntropyMode::Sampled:
            break;
        }
        return sampled_entropy_bits(psi, options.entropy_samples, options.seed + static_cast<std::uint64_t>(k));
    };

    Mps psi = plus_state(h.n);
    double cumulative = 0.0;
    trace.points.push_back({0, 0.0, mps_energy(psi, hmpo, h.offset), entropy_of(psi, 0), 0.0, 0.0});
    for (int k = 1; k <= trace.steps; ++k) {
        TruncationResult r = evolve_step(psi, step, options.chi_max);
        psi = std::move(r.mps);
        cumulative += r.error;
        if (k % options.record_every == 0 || k == trace.steps)
            trace.points.push_back({k, k * options.delta_tau, mps_energy(psi, hmpo, h.offset), entropy_of(psi, k),
                                    r.error, cumulative});
        if (options.checkpoint && options.checkpoint_every > 0 && k % options.checkpoint_every == 0)
            options.checkpoint(k, psi);
    }
    trace.final_state = std::move(psi);
    return trace;
}

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace) {
    out << "step,tau,energy,entropy_bits,trunc_err,cumulative_trunc_err\n";
    for (const auto& p : trace.points)
        out << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", p.step, p.tau, p.energy, p.entropy_bits,
                           p.trunc_err, p.cumulative_trunc_err);
}

}  // namespace cqo
