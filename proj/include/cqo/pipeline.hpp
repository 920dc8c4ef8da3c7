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
#include <vector>

#include "cqo/gibbs.hpp"
#include "cqo/io.hpp"
#include "cqo/mpo.hpp"
#include "cqo/qaoa.hpp"
#include "cqo/synthesis.hpp"

namespace cqo {

struct PipelineConfig {
    Json instance;  // path string, inline instance, or {type, n, seed, edge_probability}
    double delta_tau = 0.01;
    std::optional<double> t_total;
    std::optional<double> temperature;  // sets t_total = 1 / temperature
    int chi_max = 32;
    StepOrder order = StepOrder::II;
    int record_every = 1;
    int gibbs_samples = 10000;
    int k_max = 4;
    double fidelity_target = 0.99;
    int sweeps = 200;
    int p = 3;
    OptimizerKind optimizer = OptimizerKind::Cobyla;
    int budget = 500;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out;

    double evolution_time() const;
    void validate() const;  // throws ConfigError
};

PipelineConfig config_from_json(const Json& j);
Json config_to_json(const PipelineConfig& c);

// Relative paths inside the config resolve against base.
Instance resolve_instance(const PipelineConfig& c, const std::filesystem::path& base = {});

struct PipelineResult {
    bool ok = false;
    std::vector<std::string> completed;
    std::string failed_stage;
    std::string error;
    Instance instance;
    EvolutionTrace evolution;
    GibbsQualityReport gibbs;
    SynthesisResult synthesis;
    OptimizationRun qaoa;
    double mps_energy = 0.0;
    double circuit_energy = 0.0;
};

// Writes instance.json, config.json, evolution.csv, gibbs_report.json, circuit.json,
// qaoa_run.json, combined_trace.csv and status.json into config.out. A failing stage
// leaves the earlier files in place and is reported in status.json.
PipelineResult run_pipeline(const PipelineConfig& config, const std::filesystem::path& base = {});

std::vector<PipelineResult> run_batch(const std::vector<PipelineConfig>& configs, int workers,
                                      const std::filesystem::path& base = {});

// plus | ground | gibbs | basis | gaussian; basis and gaussian sit at the energy of the
// Gibbs state at the given temperature.
DenseState make_initial_state(const std::string& kind, const Spectrum& spectrum, double temperature = 3.0,
                              double sigma = 1.0);

}  // namespace cqo
