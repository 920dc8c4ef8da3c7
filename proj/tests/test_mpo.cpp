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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cqo/analytics.hpp"
#include "cqo/mpo.hpp"
#include "oracles.hpp"

using namespace cqo;
using Eigen::MatrixXcd;

namespace {

IsingHamiltonian random_ising(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::bernoulli_distribution keep(0.7);
    IsingHamiltonian h(n);
    for (int i = 0; i < n; ++i) h.add_field(i, 0.5 * g(rng));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (keep(rng)) h.add_coupling(i, j, g(rng));
    h.offset = 0.25;
    return h;
}

MatrixXcd exact_step(const IsingHamiltonian& h, double dt) {
    return (-dt * oracle::hamiltonian_matrix(h, false)).exp();
}

double step_error(const IsingHamiltonian& h, double dt, StepOrder order) {
    return (to_dense_operator(build_step(build_blocks(h), dt, order).mpo) - exact_step(h, dt)).norm();
}

}  // namespace

TEST(Mpo, HamiltonianMatchesPauliSum) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const IsingHamiltonian h = random_ising(6, seed);
        const Mpo m = hamiltonian_mpo(h);
        m.validate();
        EXPECT_LE(m.max_bond(), h.n + 2);
        EXPECT_LT((to_dense_operator(m) - oracle::hamiltonian_matrix(h, false)).norm(), 1e-12);
    }
}

TEST(Mpo, HamiltonianWithoutCouplings) {
    IsingHamiltonian h(4);
    h.add_field(2, 1.5);
    EXPECT_LT((to_dense_operator(hamiltonian_mpo(h)) - oracle::hamiltonian_matrix(h, false)).norm(), 1e-12);
}

TEST(Mpo, StepAtZeroIsIdentity) {
    const IsingHamiltonian h = random_ising(5, 3);
    for (StepOrder o : {StepOrder::I, StepOrder::II}) {
        const MatrixXcd w = to_dense_operator(build_step(build_blocks(h), 0.0, o).mpo);
        EXPECT_LT((w - MatrixXcd::Identity(32, 32)).norm(), 1e-12);
    }
}

TEST(Mpo, StepErrorIsSecondOrderInTimeStep) {
    const IsingHamiltonian h = random_ising(6, 7);
    for (StepOrder o : {StepOrder::I, StepOrder::II}) {
        const double e1 = step_error(h, 0.02, o), e2 = step_error(h, 0.01, o);
        EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.3);
    }
    EXPECT_LE(step_error(h, 0.01, StepOrder::II), step_error(h, 0.01, StepOrder::I));
}

TEST(Mpo, SingleBondStepIsExactInFirstOrder) {
    // With one coupling the only error comes from the missing Z Z products across steps.
    IsingHamiltonian h(2);
    h.add_coupling(0, 1, 1.0);
    const double dt = 0.01;
    const MatrixXcd w = to_dense_operator(build_wI(build_blocks(h), dt).mpo);
    // W^I on two sites is 1 - dt Z Z exactly.
    const MatrixXcd zz = oracle::embed(oracle::pauli_z(), 0, 2) * oracle::embed(oracle::pauli_z(), 1, 2);
    EXPECT_LT((w - (MatrixXcd::Identity(4, 4) - dt * zz)).norm(), 1e-12);
}

TEST(Mpo, StepBondDimension) {
    const IsingHamiltonian h = random_ising(6, 2);
    const StepMpo w = build_step(build_blocks(h), 0.01, StepOrder::II);
    EXPECT_LE(w.mpo.max_bond(), h.n + 1);
}

TEST(Mpo, ApplyMatchesDenseProduct) {
    const IsingHamiltonian h = random_ising(6, 5);
    std::mt19937_64 rng(1);
    const Mps psi = random_mps(6, 3, rng);
    const StepMpo w = build_step(build_blocks(h), 0.05, StepOrder::II);
    const Eigen::VectorXcd expect = (to_dense_operator(w.mpo) * to_dense(psi).amplitudes).normalized();
    const TruncationResult r = apply_mpo(w.mpo, psi, 64);
    EXPECT_NEAR(std::abs(expect.dot(to_dense(r.mps).amplitudes)), 1.0, 1e-10);
    EXPECT_NEAR(r.error, 0.0, 1e-6);
}

TEST(Mpo, ExpectationMatchesDense) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const IsingHamiltonian h = random_ising(7, seed);
        std::mt19937_64 rng(seed);
        const Mps psi = random_mps(7, 4, rng);
        const DenseState d = to_dense(psi);
        const double expect = (d.amplitudes.adjoint() * oracle::hamiltonian_matrix(h) * d.amplitudes)(0, 0).real();
        EXPECT_NEAR(mps_energy(psi, h), expect, 1e-10);
        EXPECT_NEAR(expectation(psi, hamiltonian_mpo(h)).real() + h.offset, expect, 1e-10);
    }
}

TEST(Evolution, ReachesExactGibbsState) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(6, 0.5, 4));
    EvolutionOptions opt;
    opt.t_total = 1.0;
    opt.delta_tau = 0.01;
    const EvolutionTrace trace = imaginary_time_evolve(h, opt);
    EXPECT_EQ(trace.steps, 100);
    EXPECT_EQ(trace.points.size(), 101u);
    const Spectrum sp = brute_spectrum(h);
    EXPECT_GT(fidelity(trace.final_state, exact_gibbs(sp, gibbs_t_for_evolution_time(1.0))), 0.999);
    for (std::size_t i = 1; i < trace.points.size(); ++i)
        EXPECT_LE(trace.points[i].energy, trace.points[i - 1].energy + 1e-9);
    EXPECT_NEAR(trace.points.front().energy, mean_energy(DenseState::plus(6), sp), 1e-12);
    EXPECT_NEAR(trace.points.front().entropy_bits, 6.0, 1e-9);
    EXPECT_NEAR(trace.points.back().entropy_bits, diagonal_entropy(to_dense(trace.final_state)), 1e-9);
}

TEST(Evolution, RecordStrideAndCheckpoints) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(5, 0.6, 2));
    EvolutionOptions opt;
    opt.t_total = 0.1;
    opt.record_every = 3;
    int calls = 0;
    opt.checkpoint_every = 5;
    opt.checkpoint = [&](int, const Mps&) { ++calls; };
    const EvolutionTrace trace = imaginary_time_evolve(h, opt);
    EXPECT_EQ(trace.points.back().step, 10);
    EXPECT_EQ(trace.points[1].step, 3);
    EXPECT_EQ(calls, 2);
    std::ostringstream s;
    write_trace_csv(s, trace);
    EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "step,tau,energy,entropy_bits,trunc_err,cumulative_trunc_err");
}

TEST(Evolution, RejectsBadOptions) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(4, 0.6, 2));
    EvolutionOptions opt;
    opt.t_total = 1.0;
    opt.chi_max = 0;
    EXPECT_THROW(imaginary_time_evolve(h, opt), std::invalid_argument);
    opt.chi_max = 4;
    opt.delta_tau = 0.0;
    EXPECT_THROW(imaginary_time_evolve(h, opt), std::invalid_argument);
    opt.delta_tau = 0.01;
    opt.t_total = -1.0;
    EXPECT_THROW(imaginary_time_evolve(h, opt), std::invalid_argument);
    EXPECT_EQ(parse_step_order("1"), StepOrder::I);
    EXPECT_EQ(parse_step_order("II"), StepOrder::II);
    EXPECT_THROW(parse_step_order("III"), std::invalid_argument);
}

TEST(Evolution, SampledEntropyTracksExact) {
    const IsingHamiltonian h = maxcut_to_ising(random_graph(6, 0.5, 9));
    EvolutionOptions opt;
    opt.t_total = 0.5;
    const Mps psi = imaginary_time_evolve(h, opt).final_state;
    const double exact = diagonal_entropy(to_dense(psi));
    EXPECT_NEAR(sampled_entropy_bits(psi, 20000, 3), exact, 0.05);
}
