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

#include "cqo/qaoa.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

void QaoaParams::validate() const {
    if (gamma.size() != xi.size())
        throw std::invalid_argument(fmt::format("{} cost angles but {} mixer angles", gamma.size(), xi.size()));
    for (std::size_t k = 0; k < gamma.size(); ++k)
        if (!std::isfinite(gamma[k]) || !std::isfinite(xi[k]))
            throw std::invalid_argument(fmt::format("layer {} has a non-finite angle", k));
}

QaoaParams QaoaParams::zeros(int p) {
    if (p < 0) throw std::invalid_argument("layer count must be non-negative");
    return {std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
}

Eigen::VectorXd QaoaParams::to_vector() const {
    Eigen::VectorXd v(2 * p());
    for (int k = 0; k < p(); ++k) {
        v[2 * k] = gamma[k];
        v[2 * k + 1] = xi[k];
    }
    return v;
}

QaoaParams QaoaParams::from_vector(const Eigen::VectorXd& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("parameter vector must have even length");
    QaoaParams params = zeros(static_cast<int>(v.size() / 2));
    for (int k = 0; k < params.p(); ++k) {
        params.gamma[k] = v[2 * k];
        params.xi[k] = v[2 * k + 1];
    }
    return params;
}

namespace {

void check_dims(const DenseState& psi, const Spectrum& spectrum) {
    if (psi.n != spectrum.n || psi.dim() != spectrum.energies.size())
        throw std::invalid_argument(fmt::format("state has {} qubits, Hamiltonian {}", psi.n, spectrum.n));
}

void cost_in_place(Eigen::VectorXcd& a, const Spectrum& spectrum, double gamma) {
    if (gamma == 0.0) return;
    for (Eigen::Index s = 0; s < a.size(); ++s)
        a[s] *= std::polar(1.0, -gamma * (spectrum.energies[s] - spectrum.offset));
}

void mixer_in_place(Eigen::VectorXcd& a, int n, double xi) {
    if (xi == 0.0) return;
    const double c = std::cos(xi);
    const cplx is(0.0, std::sin(xi));
    for (int q = 0; q < n; ++q) {
        const Eigen::Index mask = Eigen::Index{1} << (n - 1 - q);
        for (Eigen::Index s = 0; s < a.size(); ++s) {
            if (s & mask) continue;
            const cplx a0 = a[s], a1 = a[s | mask];
            a[s] = c * a0 + is * a1;
            a[s | mask] = is * a0 + c * a1;
        }
    }
}

}  // namespace

DenseState apply_cost_layer(const DenseState& psi, const Spectrum& spectrum, double gamma) {
    check_dims(psi, spectrum);
    DenseState out = psi;
    cost_in_place(out.amplitudes, spectrum, gamma);
    return out;
}

DenseState apply_cost_layer(const DenseState& psi, const IsingHamiltonian& h, double gamma) {
    return apply_cost_layer(psi, brute_spectrum(h), gamma);
}

DenseState apply_mixer_layer(const DenseState& psi, double xi) {
    DenseState out = psi;
    mixer_in_place(out.amplitudes, psi.n, xi);
    return out;
}

DenseState run(const DenseState& psi0, const Spectrum& spectrum, const QaoaParams& params) {
    check_dims(psi0, spectrum);
    params.validate();
    DenseState out = psi0;
    for (int k = 0; k < params.p(); ++k) {
        cost_in_place(out.amplitudes, spectrum, params.gamma[k]);
        mixer_in_place(out.amplitudes, out.n, params.xi[k]);
    }
    return out;
}

DenseState run(const DenseState& psi0, const IsingHamiltonian& h, const QaoaParams& params) {
    return run(psi0, brute_spectrum(h), params);
}

double expectation(const DenseState& psi, const Spectrum& spectrum) {
    check_dims(psi, spectrum);
    double e = 0.0, w = 0.0;
    for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) {
        const double p = std::norm(psi.amplitudes[s]);
        e += p * spectrum.energies[s];
        w += p;
    }
    return e / w;
}

double expectation(const DenseState& psi, const IsingHamiltonian& h) { return expectation(psi, brute_spectrum(h)); }

OptimizationRun optimize(const DenseState& psi0, const Spectrum& spectrum, int p, OptimizerKind optimizer,
                         std::uint64_t seed, int budget, const std::string& initial_state, bool anchor_zero) {
    check_dims(psi0, spectrum);
    if (p < 1) throw std::invalid_argument("QAOA needs at least one layer");
    if (budget < 1) throw std::invalid_argument("evaluation budget must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> window(-0.01, 0.01);
    Eigen::VectorXd x0(2 * p);
    for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = window(rng);

    Objective f = [&](const Eigen::VectorXd& x) { return expectation(run(psi0, spectrum, QaoaParams::from_vector(x)), spectrum); };
    OptimizerOptions options;
    options.budget = anchor_zero ? budget - 1 : budget;
    options.seed = rng();
    options.initial_step = 0.1;
    OptimizerResult r;
    if (anchor_zero) {
        // Zero angles reproduce psi0; spend the first evaluation there.
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2 * p);
        const double at_zero = f(zero);
        r.best_x = zero;
        r.best_value = at_zero;
        r.trace.push_back({1, at_zero, at_zero});
        r.evaluations = 1;
        r.budget_exhausted = budget == 1;
        if (options.budget > 0) {
            const OptimizerResult rest = minimize(optimizer, f, x0, options);
            for (const auto& e : rest.trace) r.trace.push_back({e.index + 1, e.value, std::min(e.best, at_zero)});
            r.evaluations += rest.evaluations;
            r.budget_exhausted = rest.budget_exhausted;
            if (rest.best_value < at_zero) {
                r.best_x = rest.best_x;
                r.best_value = rest.best_value;
            }
        }
    } else {
        r = minimize(optimizer, f, x0, options);
    }

    OptimizationRun out;
    out.best = QaoaParams::from_vector(r.best_x);
    out.best_energy = r.best_value;
    out.initial_energy = expectation(psi0, spectrum);
    out.trace = r.trace;
    out.optimizer = to_string(optimizer);
    out.seed = seed;
    out.initial_state = initial_state;
    out.evaluations = r.evaluations;
    out.budget_exhausted = r.budget_exhausted;
    return out;
}

Landscape landscape_scan(const DenseState& psi0, const Spectrum& spectrum, int gamma_points, int xi_points) {
    check_dims(psi0, spectrum);
    if (gamma_points < 1 || xi_points < 1) throw std::invalid_argument("landscape grid must be at least 1x1");
    Landscape out;
    for (int i = 0; i < gamma_points; ++i) out.gamma.push_back(2.0 * std::numbers::pi * i / gamma_points);
    for (int j = 0; j < xi_points; ++j) out.xi.push_back(std::numbers::pi * j / xi_points);
    out.energy.resize(gamma_points, xi_points);
    for (int i = 0; i < gamma_points; ++i) {
        const DenseState phased = apply_cost_layer(psi0, spectrum, out.gamma[i]);
        for (int j = 0; j < xi_points; ++j) out.energy(i, j) = expectation(apply_mixer_layer(phased, out.xi[j]), spectrum);
    }
    return out;
}

void write_landscape_csv(std::ostream& out, const Landscape& landscape) {
    out << "gamma,xi,energy\n";
    for (std::size_t i = 0; i < landscape.gamma.size(); ++i)
        for (std::size_t j = 0; j < landscape.xi.size(); ++j)
            out << fmt::format("{:.17g},{:.17g},{:.17g}\n", landscape.gamma[i], landscape.xi[j], landscape.energy(i, j));
}

}  // namespace cqo
