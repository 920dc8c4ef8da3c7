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

#include "cqo/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace cqo {

namespace fs = std::filesystem;

ProblemType parse_problem_type(const std::string& text) {
    if (text == "maxcut") return ProblemType::MaxCut;
    if (text == "tsp") return ProblemType::Tsp;
    if (text == "ising") return ProblemType::Ising;
    throw ConfigError(fmt::format("unknown problem type '{}', expected maxcut, tsp or ising", text));
}

const char* to_string(ProblemType type) {
    switch (type) {
    case ProblemType::MaxCut:
        return "maxcut";
    case ProblemType::Tsp:
        return "tsp";
    case ProblemType::Ising:
        break;
    }
    return "ising";
}

int Instance::qubits() const {
    switch (type) {
    case ProblemType::MaxCut:
        return graph.n;
    case ProblemType::Tsp:
        return tsp.cities * tsp.cities;
    case ProblemType::Ising:
        break;
    }
    return ising.n;
}

IsingHamiltonian Instance::hamiltonian() const {
    switch (type) {
    case ProblemType::MaxCut:
        return maxcut_to_ising(graph);
    case ProblemType::Tsp:
        return tsp_to_ising(tsp);
    case ProblemType::Ising:
        break;
    }
    return ising;
}

Instance generate_instance(ProblemType type, int size, std::uint64_t seed, double edge_probability) {
    Instance inst;
    inst.type = type;
    inst.seed = seed;
    switch (type) {
    case ProblemType::MaxCut:
        if (size < 2) throw ConfigError("Max Cut instances need at least two vertices");
        if (!(edge_probability > 0.0 && edge_probability <= 1.0))
            throw ConfigError("edge probability must lie in (0, 1]");
        inst.graph = random_graph(size, edge_probability, seed);
        break;
    case ProblemType::Tsp:
        if (size < 2) throw ConfigError("TSP instances need at least two cities");
        inst.tsp = random_tsp(size, seed);
        break;
    case ProblemType::Ising: {
        if (size < 1) throw ConfigError("Ising instances need at least one spin");
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        inst.ising = IsingHamiltonian(size);
        for (int i = 0; i < size; ++i) inst.ising.h[i] = gauss(rng);
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) inst.ising.add_coupling(i, j, gauss(rng));
        break;
    }
    }
    return inst;
}

Json instance_to_json(const Instance& instance) {
    Json j;
    j["type"] = to_string(instance.type);
    j["n"] = instance.type == ProblemType::Tsp ? instance.tsp.cities : instance.qubits();
    if (instance.seed) j["seed"] = *instance.seed;
    switch (instance.type) {
    case ProblemType::MaxCut: {
        Json edges = Json::array();
        for (auto [a, b] : instance.graph.edges) edges.push_back({a, b});
        j["edges"] = edges;
        break;
    }
    case ProblemType::Tsp:
        j["distances"] = instance.tsp.distances;
        if (instance.tsp.penalty != 0.0) j["penalty"] = instance.tsp.penalty;
        break;
    case ProblemType::Ising: {
        j["h"] = instance.ising.h;
        Json couplings = Json::array();
        for (const auto& [pair, value] : instance.ising.J) couplings.push_back({pair.first, pair.second, value});
        j["J"] = couplings;
        j["offset"] = instance.ising.offset;
        break;
    }
    }
    return j;
}

Instance instance_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw ConfigError("instance must be a JSON object");
        if (!j.contains("type")) throw ConfigError("instance is missing the 'type' field");
        Instance inst;
        inst.type = parse_problem_type(j.at("type").get<std::string>());
        if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
        switch (inst.type) {
        case ProblemType::MaxCut: {
            const int n = j.at("n").get<int>();
            if (n < 1) throw ConfigError("instance 'n' must be positive");
            inst.graph = Graph(n);
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2) throw ConfigError("each edge must be a pair [i, j]");
                inst.graph.add_edge(e[0].get<int>(), e[1].get<int>());
            }
            break;
        }
        case ProblemType::Tsp:
            inst.tsp.distances = j.at("distances").get<std::vector<std::vector<double>>>();
            inst.tsp.cities = static_cast<int>(inst.tsp.distances.size());
            if (j.contains("n") && j.at("n").get<int>() != inst.tsp.cities)
                throw ConfigError("TSP 'n' does not match the distance matrix size");
            inst.tsp.penalty = j.value("penalty", 0.0);
            inst.tsp.validate();
            break;
        case ProblemType::Ising: {
            const auto h = j.at("h").get<std::vector<double>>();
            inst.ising = IsingHamiltonian(static_cast<int>(h.size()));
            inst.ising.h = h;
            if (j.contains("J"))
                for (const auto& c : j.at("J")) {
                    if (!c.is_array() || c.size() != 3) throw ConfigError("each coupling must be [i, j, value]");
                    inst.ising.add_coupling(c[0].get<int>(), c[1].get<int>(), c[2].get<double>());
                }
            inst.ising.offset = j.value("offset", 0.0);
            inst.ising.validate();
            break;
        }
        }
        return inst;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(fmt::format("invalid instance: {}", e.what()));
    }
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, int>> edges;
    int declared = -1, highest = -1, lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::vector<long long> values;
        long long v;
        while (fields >> v) values.push_back(v);
        if (!fields.eof()) throw ConfigError(fmt::format("edge list line {}: expected integers", lineno));
        if (values.empty()) continue;
        if (first && values.size() == 1) {
            declared = static_cast<int>(values[0]);
            first = false;
            continue;
        }
        first = false;
        if (values.size() != 2) throw ConfigError(fmt::format("edge list line {}: expected two vertex indices", lineno));
        if (values[0] < 0 || values[1] < 0) throw ConfigError(fmt::format("edge list line {}: negative vertex", lineno));
        edges.emplace_back(static_cast<int>(values[0]), static_cast<int>(values[1]));
        highest = std::max<int>(highest, static_cast<int>(std::max(values[0], values[1])));
    }
    const int n = declared >= 0 ? declared : highest + 1;
    if (n < 1) throw ConfigError("edge list defines no vertices");
    if (highest >= n) throw ConfigError(fmt::format("edge list uses vertex {} but declares {} vertices", highest, n));
    try {
        return Graph(n, edges);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("invalid edge list: {}", e.what()));
    }
}

Instance load_instance(const fs::path& path) {
    if (path.extension() == ".json") return instance_from_json(read_json(path));
    Instance inst;
    inst.type = ProblemType::MaxCut;
    inst.graph = parse_edge_list(read_text(path));
    return inst;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size()), cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols) throw ConfigError("matrix rows have different lengths");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& z = j[r][c];
            if (!z.is_array() || z.size() != 2) throw ConfigError("matrix entries must be [re, im] pairs");
            m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

Json mps_to_json(const Mps& mps) {
    Json sites = Json::array();
    for (const auto& site : mps.sites) sites.push_back({{"s0", matrix_to_json(site[0])}, {"s1", matrix_to_json(site[1])}});
    return {{"n", mps.size()}, {"sites", sites}};
}

Mps mps_from_json(const Json& j) {
    try {
        Mps mps;
        for (const auto& site : j.at("sites"))
            mps.sites.push_back({matrix_from_json(site.at("s0")), matrix_from_json(site.at("s1"))});
        mps.validate();
        if (j.contains("n") && j.at("n").get<int>() != mps.size()) throw ConfigError("MPS 'n' does not match its sites");
        return mps;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(fmt::format("invalid MPS file: {}", e.what()));
    }
}

Json kak_to_json(const KakDecomposition& k) {
    return {{"k1", matrix_to_json(k.k1)}, {"k2", matrix_to_json(k.k2)}, {"k3", matrix_to_json(k.k3)},
            {"k4", matrix_to_json(k.k4)}, {"coefficients", {k.c[0], k.c[1], k.c[2]}},
            {"global_phase", k.global_phase}};
}

Json circuit_to_json(const StaircaseCircuit& circuit, bool with_kak) {
    Json layers = Json::array();
    for (const auto& layer : circuit.layers) {
        Json gates = Json::array();
        for (int i = circuit.n - 2; i >= 0; --i) {
            Json g{{"qubits", {i, i + 1}}, {"matrix", matrix_to_json(layer[i])}};
            if (with_kak) g["kak"] = kak_to_json(kak_decompose(layer[i]));
            gates.push_back(g);
        }
        layers.push_back(gates);
    }
    return {{"n", circuit.n}, {"depth", circuit.depth()}, {"layers", layers}};
}

StaircaseCircuit circuit_from_json(const Json& j) {
    try {
        StaircaseCircuit c;
        c.n = j.at("n").get<int>();
        if (c.n < 2) throw ConfigError("circuit needs at least two qubits");
        for (const auto& layer : j.at("layers")) {
            std::vector<Eigen::Matrix4cd> gates(c.n - 1, Eigen::Matrix4cd::Identity());
            std::vector<char> seen(c.n - 1, 0);
            for (const auto& g : layer) {
                const auto q = g.at("qubits").get<std::vector<int>>();
                if (q.size() != 2 || q[1] != q[0] + 1 || q[0] < 0 || q[1] >= c.n)
                    throw ConfigError("gate qubits must be a neighbouring pair [i, i+1]");
                const Eigen::MatrixXcd m = matrix_from_json(g.at("matrix"));
                if (m.rows() != 4 || m.cols() != 4) throw ConfigError("gate matrices must be 4x4");
                if (seen[q[0]]++) throw ConfigError(fmt::format("layer has two gates on qubits ({}, {})", q[0], q[1]));
                gates[q[0]] = m;
            }
            c.layers.push_back(std::move(gates));
        }
        c.validate(1e-8);
        return c;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(fmt::format("invalid circuit file: {}", e.what()));
    }
}

namespace {

// JSON has no NaN; missing values are written as null.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json gibbs_report_to_json(const GibbsQualityReport& r) {
    return {{"slope", number_or_null(r.slope)},
            {"intercept", number_or_null(r.intercept)},
            {"pearson_r", number_or_null(r.pearson_r)},
            {"sample_count", r.sample_count},
            {"distinct_count", r.distinct_count},
            {"degenerate", r.degenerate},
            {"temperature_defined", r.temperature_defined},
            {"temperature", r.temperature_defined ? Json(r.temperature) : Json(nullptr)}};
}

Json optimization_run_to_json(const OptimizationRun& run) {
    Json trace = Json::array();
    for (const auto& e : run.trace) trace.push_back({{"iteration", e.index}, {"energy", e.value}, {"best", e.best}});
    return {{"optimizer", run.optimizer},
            {"seed", run.seed},
            {"initial_state", run.initial_state},
            {"p", run.best.p()},
            {"gamma", run.best.gamma},
            {"xi", run.best.xi},
            {"best_energy", run.best_energy},
            {"initial_energy", run.initial_energy},
            {"evaluations", run.evaluations},
            {"budget_exhausted", run.budget_exhausted},
            {"trace", trace}};
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

Json read_json(const fs::path& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
    }
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace cqo
