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
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cqo/gibbs.hpp"
#include "cqo/kak.hpp"
#include "cqo/mps.hpp"
#include "cqo/problems.hpp"
#include "cqo/qaoa.hpp"
#include "cqo/synthesis.hpp"

namespace cqo {

using Json = nlohmann::json;

// Thrown for malformed user input (files, configs, flags).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ProblemType { MaxCut, Tsp, Ising };

ProblemType parse_problem_type(const std::string& text);
const char* to_string(ProblemType type);

struct Instance {
    ProblemType type = ProblemType::MaxCut;
    Graph graph;
    TspInstance tsp;
    IsingHamiltonian ising;
    std::optional<std::uint64_t> seed;

    int qubits() const;
    IsingHamiltonian hamiltonian() const;
};

Instance generate_instance(ProblemType type, int size, std::uint64_t seed, double edge_probability = 0.5);

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// Plain edge list: '#' comments, an optional first line holding only the vertex count,
// then one "i j" pair per line.
Graph parse_edge_list(const std::string& text);

// JSON files are read as instances; anything else as an edge list.
Instance load_instance(const std::filesystem::path& path);

Json mps_to_json(const Mps& mps);
Mps mps_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json kak_to_json(const KakDecomposition& k);
Json circuit_to_json(const StaircaseCircuit& circuit, bool with_kak = true);
StaircaseCircuit circuit_from_json(const Json& j);

Json gibbs_report_to_json(const GibbsQualityReport& report);
Json optimization_run_to_json(const OptimizationRun& run);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cqo
