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

#include "cqo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "cqo/analytics.hpp"

namespace cqo {

namespace fs = std::filesystem;

double PipelineConfig::evolution_time() const {
    if (t_total) return *t_total;
    if (temperature) return 1.0 / *temperature;
    throw ConfigError("config needs either 't_total' or 'temperature'");
}

void PipelineConfig::validate() const {
    if (instance.is_null()) throw ConfigError("config needs an 'instance' (file path or object)");
    if (!seed) throw ConfigError("config needs a 'seed' for reproducibility");
    if (t_total && temperature) throw ConfigError("give either 't_total' or 'temperature', not both");
    if (t_total && !(*t_total > 0.0)) throw ConfigError("'t_total' must be positive");
    if (temperature && !(*temperature > 0.0)) throw ConfigError("'temperature' must be positive");
    evolution_time();
    if (!(delta_tau > 0.0)) throw ConfigError("'delta_tau' must be positive");
    if (chi_max < 1) throw ConfigError("'chi_max' must be at least 1");
    if (record_every < 1) throw ConfigError("'record_every' must be at least 1");
    if (gibbs_samples < 100) throw ConfigError("'gibbs_samples' must be at least 100");
    if (k_max < 1) throw ConfigError("'k_max' must be at least 1");
    if (!(fidelity_target > 0.0 && fidelity_target <= 1.0)) throw ConfigError("'fidelity_target' must lie in (0, 1]");
    if (sweeps < 0) throw ConfigError("'sweeps' must be non-negative");
    if (p < 1) throw ConfigError("'p' must be at least 1");
    if (budget < 1) throw ConfigError("'budget' must be at least 1");
    if (out.empty()) throw ConfigError("config needs an output directory ('out' or --out)");
}

PipelineConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"instance", "delta_tau", "t_total", "temperature", "chi_max",
                                             "order", "record_every", "gibbs_samples", "k_max",
                                             "fidelity_target", "sweeps", "p", "optimizer", "budget",
                                             "seed", "out"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw ConfigError(fmt::format("unknown config key '{}'", key));
    PipelineConfig c;
    try {
        if (j.contains("instance")) c.instance = j.at("instance");
        c.delta_tau = j.value("delta_tau", c.delta_tau);
        if (j.contains("t_total")) c.t_total = j.at("t_total").get<double>();
        if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
        c.chi_max = j.value("chi_max", c.chi_max);
        if (j.contains("order")) c.order = parse_step_order(j.at("order").get<std::string>());
        c.record_every = j.value("record_every", c.record_every);
        c.gibbs_samples = j.value("gibbs_samples", c.gibbs_samples);
        c.k_max = j.value("k_max", c.k_max);
        c.fidelity_target = j.value("fidelity_target", c.fidelity_target);
        c.sweeps = j.value("sweeps", c.sweeps);
        c.p = j.value("p", c.p);
        if (j.contains("optimizer")) c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
        c.budget = j.value("budget", c.budget);
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(fmt::format("invalid config: {}", e.what()));
    }
    return c;
}

Json config_to_json(const PipelineConfig& c) {
    Json j{{"instance", c.instance},
           {"delta_tau", c.delta_tau},
           {"chi_max", c.chi_max},
           {"order", to_string(c.order)},
           {"record_every", c.record_every},
           {"gibbs_samples", c.gibbs_samples},
           {"k_max", c.k_max},
           {"fidelity_target", c.fidelity_target},
           {"sweeps", c.sweeps},
           {"p", c.p},
           {"optimizer", to_string(c.optimizer)},
           {"budget", c.budget},
           {"out", c.out.string()}};
    if (c.t_total) j["t_total"] = *c.t_total;
    if (c.temperature) j["temperature"] = *c.temperature;
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

Instance resolve_instance(const PipelineConfig& c, const fs::path& base) {
    const Json& spec = c.instance;
    if (spec.is_string()) {
        fs::path path = spec.get<std::string>();
        if (path.is_relative() && !base.empty()) path = base / path;
        return load_instance(path);
    }
    if (!spec.is_object()) throw ConfigError("'instance' must be a file path or an object");
    if (spec.contains("edges") || spec.contains("distances") || spec.contains("h")) return instance_from_json(spec);
    for (const auto& [key, value] : spec.items())
        if (key != "type" && key != "n" && key != "seed" && key != "edge_probability")
            throw ConfigError(fmt::format("unknown instance generator key '{}'", key));
    try {
        const ProblemType type = parse_problem_type(spec.value("type", std::string("maxcut")));
        if (!spec.contains("n")) throw ConfigError("instance generator needs 'n'");
        const std::uint64_t seed = spec.contains("seed") ? spec.at("seed").get<std::uint64_t>() : c.seed.value_or(1);
        return generate_instance(type, spec.at("n").get<int>(), seed, spec.value("edge_probability", 0.5));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(fmt::format("invalid instance generator: {}", e.what()));
    }
}

namespace {

std::string combined_trace_csv(const EvolutionTrace& tn, const OptimizationRun& qaoa) {
    std::ostringstream out;
    out << "stage,index,step,energy,best_energy\n";
    int index = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : tn.points) {
        best = std::min(best, p.energy);
        out << fmt::format("tn,{},{},{:.17g},{:.17g}\n", index++, p.step, p.energy, best);
    }
    // Row 0 is the frozen circuit itself; the optimizer's own first evaluation repeats it.
    best = qaoa.initial_energy;
    out << fmt::format("qaoa,{},0,{:.17g},{:.17g}\n", index++, qaoa.initial_energy, best);
    for (const auto& e : qaoa.trace) {
        best = std::min(best, e.value);
        out << fmt::format("qaoa,{},{},{:.17g},{:.17g}\n", index++, e.index, e.value, best);
    }
    return out.str();
}

void write_status(const fs::path& dir, const PipelineResult& r) {
    Json status{{"status", r.ok ? "ok" : "failed"}, {"completed", r.completed}};
    if (!r.ok) {
        status["failed_stage"] = r.failed_stage;
        status["error"] = r.error;
    }
    write_json(dir / "status.json", status);
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const fs::path& base) {
    config.validate();
    PipelineResult r;
    r.instance = resolve_instance(config, base);
    const fs::path dir = config.out;
    fs::create_directories(dir);
    std::string stage = "instance";
    try {
        const IsingHamiltonian h = r.instance.hamiltonian();
        if (h.n > kMaxDenseQubits)
            throw ConfigError(fmt::format("pipeline limited to {} qubits, instance has {}", kMaxDenseQubits, h.n));
        const Spectrum spectrum = brute_spectrum(h);
        write_json(dir / "instance.json", instance_to_json(r.instance));
        Json resolved = config_to_json(config);
        resolved["t_total"] = config.evolution_time();
        write_json(dir / "config.json", resolved);
        r.completed.push_back(stage);

        stage = "evolution";
        EvolutionOptions opt;
        opt.t_total = config.evolution_time();
        opt.delta_tau = config.delta_tau;
        opt.chi_max = config.chi_max;
        opt.order = config.order;
        opt.record_every = config.record_every;
        opt.seed = *config.seed;
        r.evolution = imaginary_time_evolve(h, opt);
        {
            std::ostringstream csv;
            write_trace_csv(csv, r.evolution);
            write_text(dir / "evolution.csv", csv.str());
            write_json(dir / "state.json", mps_to_json(r.evolution.final_state));
        }
        r.mps_energy = r.evolution.points.back().energy;
        r.completed.push_back(stage);

        stage = "gibbs";
        r.gibbs = quality_from_samples(r.evolution.final_state, h, config.gibbs_samples, *config.seed);
        {
            Json report = gibbs_report_to_json(r.gibbs);
            report["target_temperature"] = 1.0 / r.evolution.t_total;
            report["evolution_time"] = r.evolution.t_total;
            report["final_energy"] = r.mps_energy;
            const DenseState exact = exact_gibbs(spectrum, gibbs_t_for_evolution_time(r.evolution.t_total));
            report["exact_gibbs_fidelity"] = fidelity(r.evolution.final_state, exact);
            write_json(dir / "gibbs_report.json", report);
            std::ostringstream csv;
            write_scatter_csv(csv, r.gibbs);
            write_text(dir / "gibbs_scatter.csv", csv.str());
        }
        r.completed.push_back(stage);

        stage = "synthesis";
        SynthesisOptions syn;
        syn.k_max = config.k_max;
        syn.fidelity_target = config.fidelity_target;
        syn.sweeps = config.sweeps;
        r.synthesis = synthesize(r.evolution.final_state, syn);
        {
            Json circuit = circuit_to_json(r.synthesis.circuit);
            circuit["fidelity"] = r.synthesis.fidelity;
            circuit["reached_target"] = r.synthesis.reached_target;
            circuit["fidelity_by_depth"] = r.synthesis.fidelity_by_depth;
            write_json(dir / "circuit.json", circuit);
        }
        r.completed.push_back(stage);

        stage = "qaoa";
        const DenseState start = circuit_to_state(r.synthesis.circuit);
        r.circuit_energy = expectation(start, spectrum);
        r.qaoa = optimize(start, spectrum, config.p, config.optimizer, *config.seed, config.budget, "synthesized",
                          true);
        {
            Json run = optimization_run_to_json(r.qaoa);
            run["mps_energy"] = r.mps_energy;
            run["circuit_energy"] = r.circuit_energy;
            const DenseState final_state = cqo::run(start, spectrum, r.qaoa.best);
            const auto probs = dephase(final_state);
            const auto top = static_cast<std::uint64_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
            run["most_probable"] = to_string(bits_from_index(top, h.n));
            run["most_probable_probability"] = probs[top];
            run["most_probable_energy"] = spectrum.energies[top];
            if (r.instance.type == ProblemType::Tsp)
                run["most_probable_feasible"] = decode_tour(bits_from_index(top, h.n), r.instance.tsp.cities).has_value();
            write_json(dir / "qaoa_run.json", run);
        }
        r.completed.push_back(stage);

        stage = "combined";
        write_text(dir / "combined_trace.csv", combined_trace_csv(r.evolution, r.qaoa));
        r.completed.push_back(stage);
        r.ok = true;
    } catch (const std::exception& e) {
        r.ok = false;
        r.failed_stage = stage;
        r.error = e.what();
    }
    write_status(dir, r);
    return r;
}

std::vector<PipelineResult> run_batch(const std::vector<PipelineConfig>& configs, int workers, const fs::path& base) {
    for (const auto& c : configs) c.validate();
    std::vector<PipelineResult> results(configs.size());
    std::vector<std::string> errors(configs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                results[i] = run_pipeline(configs[i], base);
            } catch (const std::exception& e) {
                results[i].ok = false;
                results[i].failed_stage = "config";
                results[i].error = e.what();
            }
        }
    };
    const int count = std::max(1, std::min<int>(workers, static_cast<int>(configs.size())));
    std::vector<std::thread> pool;
    for (int k = 0; k < count; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return results;
}

DenseState make_initial_state(const std::string& kind, const Spectrum& spectrum, double temperature, double sigma) {
    if (kind == "plus") return DenseState::plus(spectrum.n);
    if (kind == "ground") return DenseState::basis(spectrum.n, spectrum.argmin.front());
    if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
    const DenseState gibbs = gibbs_at_temperature(spectrum, temperature);
    if (kind == "gibbs") return gibbs;
    const double energy = mean_energy(gibbs, spectrum);
    if (kind == "basis") return DenseState::basis(spectrum.n, closest_basis_index(spectrum, energy));
    if (kind == "gaussian") {
        if (!(sigma > 0.0)) throw ConfigError("Gaussian width must be positive");
        return gaussian_at_energy(spectrum, energy, sigma);
    }
    throw ConfigError(fmt::format("unknown initial state '{}', expected plus, ground, gibbs, basis or gaussian", kind));
}

}  // namespace cqo
