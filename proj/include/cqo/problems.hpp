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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cqo {

// Bit i of a Bitstring is the value of qubit i, and qubit 0 is the most
// significant bit of the computational-basis index. Spins follow
// z_i = 1 - 2 * bit_i, so bit 0 is the +1 eigenstate of sigma_z.
using Bitstring = std::vector<std::uint8_t>;

Bitstring bits_from_index(std::uint64_t index, int n);
std::uint64_t index_from_bits(const Bitstring& bits);
std::string to_string(const Bitstring& bits);
Bitstring bits_from_string(std::string_view text);

inline int spin_of(std::uint64_t index, int qubit, int n) {
    return ((index >> (n - 1 - qubit)) & 1u) ? -1 : 1;
}

/// Diagonal Hamiltonian sum_i h_i z_i + sum_{i<j} J_ij z_i z_j + offset.
struct IsingHamiltonian {
    int n = 0;
    std::vector<double> h;
    std::map<std::pair<int, int>, double> J;  // keys always (i, j) with i < j
    double offset = 0.0;

    IsingHamiltonian() = default;
    explicit IsingHamiltonian(int qubits);

    void add_field(int i, double value);
    // Accumulates onto an existing coupling; argument order does not matter.
    void add_coupling(int i, int j, double value);
    void validate() const;
};

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // stored with first < second

    Graph() = default;
    explicit Graph(int vertices) : n(vertices) {}
    Graph(int vertices, const std::vector<std::pair<int, int>>& edge_list);

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
};

struct TspInstance {
    int cities = 0;
    std::vector<std::vector<double>> distances;
    // Weight of the one-hot constraint terms. Zero selects the default of twice
    // the longest tour.
    double penalty = 0.0;

    void validate() const;
};

struct Spectrum {
    int n = 0;
    double offset = 0.0;
    std::vector<double> energies;  // indexed by computational-basis index
    double e_min = 0.0;
    double e_max = 0.0;
    std::vector<std::uint64_t> argmin;
};

inline constexpr int kMaxBruteQubits = 24;

IsingHamiltonian maxcut_to_ising(const Graph& g);
IsingHamiltonian tsp_to_ising(const TspInstance& t);

double energy_of(const IsingHamiltonian& h, const Bitstring& s);
double energy_of_index(const IsingHamiltonian& h, std::uint64_t index);
Spectrum brute_spectrum(const IsingHamiltonian& h);

int cut_size(const Graph& g, const Bitstring& s);

// TSP helpers. Variable (city, position) maps to qubit city * cities + position.
inline int tsp_variable(int city, int position, int cities) { return city * cities + position; }
double tour_length(const TspInstance& t, const std::vector<int>& order);
double max_tour_length(const TspInstance& t);
double min_tour_length(const TspInstance& t);
double effective_penalty(const TspInstance& t);
// City visited at each position, or nullopt when s violates a one-hot constraint.
std::optional<std::vector<int>> decode_tour(const Bitstring& s, int cities);

Graph random_graph(int n, double edge_probability, std::uint64_t seed);
TspInstance random_tsp(int cities, std::uint64_t seed);

}  // namespace cqo
