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

#include "cqo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

Bitstring bits_from_index(std::uint64_t index, int n) {
    Bitstring bits(n);
    for (int q = 0; q < n; ++q) bits[q] = static_cast<std::uint8_t>((index >> (n - 1 - q)) & 1u);
    return bits;
}

std::uint64_t index_from_bits(const Bitstring& bits) {
    std::uint64_t index = 0;
    for (auto b : bits) index = (index << 1) | (b & 1u);
    return index;
}

std::string to_string(const Bitstring& bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) out.push_back(b ? '1' : '0');
    return out;
}

Bitstring bits_from_string(std::string_view text) {
    Bitstring bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument(fmt::format("invalid bit character '{}'", c));
        bits.push_back(c == '1');
    }
    return bits;
}

IsingHamiltonian::IsingHamiltonian(int qubits) : n(qubits), h(qubits, 0.0) {
    if (qubits < 0) throw std::invalid_argument("qubit count must be non-negative");
}

void IsingHamiltonian::add_field(int i, double value) {
    if (i < 0 || i >= n) throw std::out_of_range(fmt::format("field index {} outside [0, {})", i, n));
    h[i] += value;
}

void IsingHamiltonian::add_coupling(int i, int j, double value) {
    if (i == j) throw std::invalid_argument("coupling requires two distinct qubits");
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw std::out_of_range(fmt::format("coupling ({}, {}) outside [0, {})", i, j, n));
    J[{i, j}] += value;
}

void IsingHamiltonian::validate() const {
    if (static_cast<int>(h.size()) != n)
        throw std::invalid_argument(fmt::format("field vector has {} entries for {} qubits", h.size(), n));
    for (const auto& [key, value] : J) {
        if (key.first >= key.second || key.first < 0 || key.second >= n)
            throw std::invalid_argument(fmt::format("invalid coupling key ({}, {})", key.first, key.second));
        if (!std::isfinite(value)) throw std::invalid_argument("non-finite coupling");
    }
    for (double v : h)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite field");
    if (!std::isfinite(offset)) throw std::invalid_argument("non-finite offset");
}

Graph::Graph(int vertices, const std::vector<std::pair<int, int>>& edge_list) : n(vertices) {
    for (auto [i, j] : edge_list) add_edge(i, j);
}

void Graph::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument(fmt::format("self-loop on vertex {}", i));
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) throw std::out_of_range(fmt::format("edge ({}, {}) outside [0, {})", i, j, n));
    if (has_edge(i, j)) throw std::invalid_argument(fmt::format("duplicate edge ({}, {})", i, j));
    edges.emplace_back(i, j);
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::find(edges.begin(), edges.end(), std::pair{i, j}) != edges.end();
}

void TspInstance::validate() const {
    if (cities < 2) throw std::invalid_argument("TSP needs at least two cities");
    if (static_cast<int>(distances.size()) != cities)
        throw std::invalid_argument("distance matrix row count does not match city count");
    for (int i = 0; i < cities; ++i) {
        if (static_cast<int>(distances[i].size()) != cities)
            throw std::invalid_argument("distance matrix is not square");
        if (distances[i][i] != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
        for (double d : distances[i])
            if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("distances must be finite and non-negative");
    }
}

IsingHamiltonian maxcut_to_ising(const Graph& g) {
    // -1/2 sum_(ij) (1 - z_i z_j)
    IsingHamiltonian h(g.n);
    for (auto [i, j] : g.edges) h.add_coupling(i, j, 0.5);
    h.offset = -0.5 * static_cast<double>(g.edges.size());
    return h;
}

namespace {

// Quadratic pseudo-boolean function sum a_i x_i + sum b_ij x_i x_j + c.
struct Qubo {
    int n;
    std::vector<double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    double constant = 0.0;

    explicit Qubo(int vars) : n(vars), linear(vars, 0.0) {}

    void add(int i, int j, double w) {
        if (i == j) {
            linear[i] += w;  // x^2 = x
            return;
        }
        if (i > j) std::swap(i, j);
        quadratic[{i, j}] += w;
    }
};

// Substitutes x_i = (1 - z_i) / 2.
IsingHamiltonian to_ising(const Qubo& q) {
    IsingHamiltonian h(q.n);
    double offset = q.constant;
    for (int i = 0; i < q.n; ++i) {
        offset += 0.5 * q.linear[i];
        h.h[i] -= 0.5 * q.linear[i];
    }
    for (const auto& [key, w] : q.quadratic) {
        offset += 0.25 * w;
        h.h[key.first] -= 0.25 * w;
        h.h[key.second] -= 0.25 * w;
        if (w != 0.0) h.add_coupling(key.first, key.second, 0.25 * w);
    }
    h.offset = offset;
    return h;
}

template <typename F>
void for_each_tour(int cities, F&& visit) {
    // Tours start at city 0; the other orders are rotations of these.
    std::vector<int> order(cities);
    std::iota(order.begin(), order.end(), 0);
    do {
        visit(order);
    } while (std::next_permutation(order.begin() + 1, order.end()));
}

}  // namespace

double tour_length(const TspInstance& t, const std::vector<int>& order) {
    double total = 0.0;
    const int c = static_cast<int>(order.size());
    for (int p = 0; p < c; ++p) total += t.distances[order[p]][order[(p + 1) % c]];
    return total;
}

double max_tour_length(const TspInstance& t) {
    t.validate();
    if (t.cities > 10) {
        double largest = 0.0;
        for (const auto& row : t.distances)
            for (double d : row) largest = std::max(largest, d);
        return largest * t.cities;
    }
    double best = 0.0;
    for_each_tour(t.cities, [&](const std::vector<int>& order) { best = std::max(best, tour_length(t, order)); });
    return best;
}

double min_tour_length(const TspInstance& t) {
    t.validate();
    if (t.cities > 10) throw std::invalid_argument("exhaustive tour search limited to 10 cities");
    double best = std::numeric_limits<double>::infinity();
    for_each_tour(t.cities, [&](const std::vector<int>& order) { best = std::min(best, tour_length(t, order)); });
    return best;
}

double effective_penalty(const TspInstance& t) {
    return t.penalty > 0.0 ? t.penalty : 2.0 * max_tour_length(t);
}

IsingHamiltonian tsp_to_ising(const TspInstance& t) {
    t.validate();
    const int c = t.cities;
    const double longest = max_tour_length(t);
    const double penalty = effective_penalty(t);
    if (!(penalty > longest))
        throw std::invalid_argument(
            fmt::format("TSP penalty {} must exceed the longest tour length {}", penalty, longest));

    Qubo q(c * c);
    // Path cost: city u at position p followed by city v at position p+1.
    for (int u = 0; u < c; ++u)
        for (int v = 0; v < c; ++v) {
            if (u == v) continue;
            for (int p = 0; p < c; ++p)
                q.add(tsp_variable(u, p, c), tsp_variable(v, (p + 1) % c, c), t.distances[u][v]);
        }
    // penalty * (1 - sum_k x_k)^2 = penalty * (1 - sum_k x_k + 2 sum_{k<l} x_k x_l) after x^2 = x.
    auto one_hot = [&](const std::vector<int>& vars) {
        q.constant += penalty;
        for (std::size_t a = 0; a < vars.size(); ++a) {
            q.add(vars[a], vars[a], -penalty);
            for (std::size_t b = a + 1; b < vars.size(); ++b) q.add(vars[a], vars[b], 2.0 * penalty);
        }
    };
    for (int city = 0; city < c; ++city) {
        std::vector<int> vars;
        for (int p = 0; p < c; ++p) vars.push_back(tsp_variable(city, p, c));
        one_hot(vars);
    }
    for (int p = 0; p < c; ++p) {
        std::vector<int> vars;
        for (int city = 0; city < c; ++city) vars.push_back(tsp_variable(city, p, c));
        one_hot(vars);
    }
    return to_ising(q);
}

std::optional<std::vector<int>> decode_tour(const Bitstring& s, int cities) {
    if (static_cast<int>(s.size()) != cities * cities) return std::nullopt;
    std::vector<int> order(cities, -1);
    for (int city = 0; city < cities; ++city) {
        int count = 0;
        for (int p = 0; p < cities; ++p)
            if (s[tsp_variable(city, p, cities)]) {
                ++count;
                if (order[p] != -1) return std::nullopt;
                order[p] = city;
            }
        if (count != 1) return std::nullopt;
    }
    return order;
}

double energy_of(const IsingHamiltonian& h, const Bitstring& s) {
    if (static_cast<int>(s.size()) != h.n)
        throw std::invalid_argument(fmt::format("bitstring length {} does not match {} qubits", s.size(), h.n));
    double e = h.offset;
    for (int i = 0; i < h.n; ++i) e += h.h[i] * (s[i] ? -1.0 : 1.0);
    for (const auto& [key, v] : h.J) e += v * ((s[key.first] ^ s[key.second]) ? -1.0 : 1.0);
    return e;
}

double energy_of_index(const IsingHamiltonian& h, std::uint64_t index) {
    return energy_of(h, bits_from_index(index, h.n));
}

Spectrum brute_spectrum(const IsingHamiltonian& h) {
    h.validate();
    if (h.n > kMaxBruteQubits)
        throw std::invalid_argument(
            fmt::format("brute-force spectrum limited to {} qubits, got {}", kMaxBruteQubits, h.n));
    const int n = h.n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    struct Term {
        int shift_a, shift_b;
        double value;
    };
    std::vector<Term> terms;
    for (const auto& [key, v] : h.J) terms.push_back({n - 1 - key.first, n - 1 - key.second, v});

    Spectrum out;
    out.n = n;
    out.offset = h.offset;
    out.energies.resize(dim);
    for (std::uint64_t s = 0; s < dim; ++s) {
        double e = h.offset;
        for (int i = 0; i < n; ++i) e += ((s >> (n - 1 - i)) & 1u) ? -h.h[i] : h.h[i];
        for (const auto& t : terms) e += (((s >> t.shift_a) ^ (s >> t.shift_b)) & 1u) ? -t.value : t.value;
        out.energies[s] = e;
    }
    out.e_min = *std::min_element(out.energies.begin(), out.energies.end());
    out.e_max = *std::max_element(out.energies.begin(), out.energies.end());
    const double tol = 1e-12 * std::max(1.0, std::abs(out.e_min));
    for (std::uint64_t s = 0; s < dim; ++s)
        if (out.energies[s] <= out.e_min + tol) out.argmin.push_back(s);
    return out;
}

int cut_size(const Graph& g, const Bitstring& s) {
    int cut = 0;
    for (auto [i, j] : g.edges) cut += s.at(i) != s.at(j);
    return cut;
}

Graph random_graph(int n, double edge_probability, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw std::invalid_argument(fmt::format("edge probability {} outside [0, 1]", edge_probability));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < edge_probability) g.add_edge(i, j);
    return g;
}

TspInstance random_tsp(int cities, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    TspInstance t;
    t.cities = cities;
    t.distances.assign(cities, std::vector<double>(cities, 0.0));
    for (int i = 0; i < cities; ++i)
        for (int j = i + 1; j < cities; ++j) t.distances[i][j] = t.distances[j][i] = unit(rng);
    t.validate();
    return t;
}

}  // namespace cqo
