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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cqo/analytics.hpp"
#include "cqo/expressivity.hpp"
#include "cqo/io.hpp"
#include "cqo/kak.hpp"
#include "cqo/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cqo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Common {
    std::string instance;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct Evolution {
    double dtau = 0.01;
    std::optional<double> t_total;
    std::optional<double> temperature;
    int chi = 32;
    std::string order = "II";
    int record_every = 1;
};

struct Init {
    std::string kind = "plus";
    double temperature = 3.0;
    double sigma = 1.0;
};

void add_evolution(CLI::App* app, Evolution& e) {
    app->add_option("--dtau", e.dtau, "imaginary time step");
    auto* t = app->add_option("--t-total", e.t_total, "total imaginary time");
    auto* T = app->add_option("--temperature", e.temperature, "target temperature, sets t-total = 1/T");
    t->excludes(T);
    app->add_option("--chi", e.chi, "maximum bond dimension");
    app->add_option("--order", e.order, "step MPO order")->check(CLI::IsMember({"I", "II", "1", "2"}));
    app->add_option("--record-every", e.record_every, "trace stride in steps");
}

void add_init(CLI::App* app, Init& init) {
    app->add_option("--init", init.kind, "initial state")
        ->check(CLI::IsMember({"plus", "ground", "gibbs", "basis", "gaussian"}));
    app->add_option("--init-temperature", init.temperature, "temperature for gibbs/basis/gaussian inits");
    app->add_option("--sigma", init.sigma, "energy width of the gaussian init");
}

std::uint64_t need_seed(const Common& c) {
    if (!c.seed) throw ConfigError("--seed is required");
    return *c.seed;
}

Instance need_instance(const Common& c) {
    if (c.instance.empty()) throw ConfigError("--instance is required (JSON instance or edge list)");
    return load_instance(c.instance);
}

fs::path need_out(const Common& c) {
    if (c.out.empty()) throw ConfigError("--out is required");
    return c.out;
}

std::string to_csv(auto writer) {
    std::ostringstream s;
    writer(s);
    return s.str();
}

int cmd_gen(const Common& c, const std::string& type, int size, double edge_probability) {
    const Instance inst = generate_instance(parse_problem_type(type), size, need_seed(c), edge_probability);
    const Json j = instance_to_json(inst);
    if (c.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json(c.out, j);
    return kExitOk;
}

int cmd_gibbs(const Common& c, const Evolution& e, int samples) {
    const Instance inst = need_instance(c);
    const fs::path dir = need_out(c);
    EvolutionOptions opt;
    if (e.t_total)
        opt.t_total = *e.t_total;
    else if (e.temperature)
        opt.t_total = 1.0 / *e.temperature;
    else
        throw ConfigError("give --t-total or --temperature");
    if (!(opt.t_total > 0.0)) throw ConfigError("evolution time must be positive");
    opt.delta_tau = e.dtau;
    opt.chi_max = e.chi;
    opt.order = parse_step_order(e.order);
    opt.record_every = e.record_every;
    opt.seed = need_seed(c);
    const IsingHamiltonian h = inst.hamiltonian();
    const EvolutionTrace trace = imaginary_time_evolve(h, opt);
    write_text(dir / "evolution.csv", to_csv([&](std::ostream& s) { write_trace_csv(s, trace); }));
    write_json(dir / "state.json", mps_to_json(trace.final_state));
    const GibbsQualityReport report = quality_from_samples(trace.final_state, h, samples, opt.seed);
    Json j = gibbs_report_to_json(report);
    j["target_temperature"] = 1.0 / trace.t_total;
    j["final_energy"] = trace.points.back().energy;
    if (h.n <= kMaxDenseQubits) {
        const Spectrum spectrum = brute_spectrum(h);
        j["exact_gibbs_fidelity"] =
            fidelity(trace.final_state, exact_gibbs(spectrum, gibbs_t_for_evolution_time(trace.t_total)));
    }
    write_json(dir / "gibbs_report.json", j);
    write_text(dir / "gibbs_scatter.csv", to_csv([&](std::ostream& s) { write_scatter_csv(s, report); }));
    fmt::print("energy {:.6f}  r {:.6f}  T {:.6f} (target {:.6f})\n", trace.points.back().energy,
               report.pearson_r, report.temperature, 1.0 / trace.t_total);
    return kExitOk;
}

int cmd_qaoa(const Common& c, const Init& init, int p, const std::string& optimizer, int budget,
             std::optional<int> grid) {
    const Instance inst = need_instance(c);
    const fs::path dir = need_out(c);
    const std::uint64_t seed = need_seed(c);
    if (p < 1) throw ConfigError("--p must be at least 1");
    if (budget < 1) throw ConfigError("--budget must be at least 1");
    const Spectrum spectrum = brute_spectrum(inst.hamiltonian());
    const DenseState psi0 = make_initial_state(init.kind, spectrum, init.temperature, init.sigma);
    const OptimizationRun run = optimize(psi0, spectrum, p, parse_optimizer(optimizer), seed, budget, init.kind);
    Json j = optimization_run_to_json(run);
    j["approximation_ratio"] = approximation_ratio(run.best_energy, spectrum);
    write_json(dir / "qaoa_run.json", j);
    if (grid) {
        if (*grid < 2) throw ConfigError("--grid must be at least 2");
        const Landscape l = landscape_scan(psi0, spectrum, *grid, *grid);
        write_text(dir / "landscape.csv", to_csv([&](std::ostream& s) { write_landscape_csv(s, l); }));
    }
    fmt::print("initial {:.6f}  best {:.6f}  evaluations {}\n", run.initial_energy, run.best_energy, run.evaluations);
    return kExitOk;
}

int cmd_diagram(const Common& c, const Init& init, double t_max, int points) {
    const Instance inst = need_instance(c);
    const fs::path dir = need_out(c);
    if (points < 2 || !(t_max > 0.0)) throw ConfigError("--points must be >= 2 and --t-max positive");
    const Spectrum spectrum = brute_spectrum(inst.hamiltonian());
    const auto grid = symmetric_t_grid(t_max, points);
    const BoltzmannCurve curve = boltzmann_curve(spectrum, grid);
    std::ostringstream s;
    s << "t,energy,entropy_bits\n";
    for (const auto& b : curve.samples) s << fmt::format("{:.17g},{:.17g},{:.17g}\n", b.t, b.energy, b.entropy_bits);
    write_text(dir / "boltzmann.csv", s.str());
    const EnergyEntropyPoint pt = energy_entropy_point(make_initial_state(init.kind, spectrum, init.temperature, init.sigma), spectrum);
    write_json(dir / "init_point.json",
               Json{{"init", init.kind}, {"energy", pt.energy}, {"entropy_bits", pt.entropy_bits},
                    {"boundary_entropy_bits", boltzmann_entropy_at(spectrum, pt.energy)}});
    return kExitOk;
}

int cmd_pca(const Common& c, const Init& init, int grid, double threshold) {
    const Instance inst = need_instance(c);
    const fs::path dir = need_out(c);
    if (grid < 8) throw ConfigError("--grid must be at least 8");
    const Spectrum spectrum = brute_spectrum(inst.hamiltonian());
    const DenseState psi0 = make_initial_state(init.kind, spectrum, init.temperature, init.sigma);
    const DistributionMatrix m = sweep_p1(psi0, spectrum, grid, grid);
    const PcaResult result = pca(m);
    const ExpressivitySummary summary = analyze(m, threshold);
    write_text(dir / "distribution.csv", to_csv([&](std::ostream& s) { write_distribution_csv(s, m); }));
    write_text(dir / "projection.csv", to_csv([&](std::ostream& s) { write_projection_csv(s, m, result); }));
    std::vector<double> variances(summary.variances.data(), summary.variances.data() + summary.variances.size());
    write_json(dir / "summary.json", Json{{"init", init.kind},
                                          {"init_entropy_bits", diagonal_entropy(psi0)},
                                          {"area", summary.area},
                                          {"alpha", summary.alpha},
                                          {"rank", summary.rank},
                                          {"rank_threshold", threshold},
                                          {"variances", variances}});
    fmt::print("area {:.6g}  rank {}\n", summary.area, summary.rank);
    return kExitOk;
}

int cmd_decompose(const Common& c, const std::string& state, const std::string& gate, int k_max, double target,
                  int sweeps) {
    if (state.empty() == gate.empty()) throw ConfigError("give exactly one of --state or --gate");
    if (!gate.empty()) {
        const Eigen::MatrixXcd u = matrix_from_json(read_json(gate));
        if (u.rows() != 4 || u.cols() != 4) throw ConfigError("--gate must hold a 4x4 matrix");
        const Json j = kak_to_json(kak_decompose(u));
        if (c.out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_json(c.out, j);
        return kExitOk;
    }
    const Mps mps = mps_from_json(read_json(state));
    SynthesisOptions opt;
    opt.k_max = k_max;
    opt.fidelity_target = target;
    opt.sweeps = sweeps;
    const SynthesisResult r = synthesize(mps, opt);
    Json j = circuit_to_json(r.circuit);
    j["fidelity"] = r.fidelity;
    j["reached_target"] = r.reached_target;
    j["fidelity_by_depth"] = r.fidelity_by_depth;
    write_json(need_out(c) / "circuit.json", j);
    fmt::print("depth {}  fidelity {:.9f}\n", r.circuit.depth(), r.fidelity);
    return kExitOk;
}

struct PipelineFlags {
    std::string config;
    Evolution e;
    int k_max = 0;
    std::optional<double> fidelity_target;
    std::optional<int> p;
    std::string optimizer;
    std::optional<int> budget;
    int workers = 1;
};

void apply_overrides(PipelineConfig& cfg, const Common& c, const PipelineFlags& f, CLI::App* app) {
    if (!c.instance.empty()) cfg.instance = c.instance;
    if (c.seed) cfg.seed = c.seed;
    if (!c.out.empty()) cfg.out = c.out;
    if (app->count("--dtau")) cfg.delta_tau = f.e.dtau;
    if (f.e.t_total) {
        cfg.t_total = f.e.t_total;
        cfg.temperature.reset();
    }
    if (f.e.temperature) {
        cfg.temperature = f.e.temperature;
        cfg.t_total.reset();
    }
    if (app->count("--chi")) cfg.chi_max = f.e.chi;
    if (app->count("--order")) cfg.order = parse_step_order(f.e.order);
    if (app->count("--record-every")) cfg.record_every = f.e.record_every;
    if (f.k_max) cfg.k_max = f.k_max;
    if (f.fidelity_target) cfg.fidelity_target = *f.fidelity_target;
    if (f.p) cfg.p = *f.p;
    if (!f.optimizer.empty()) cfg.optimizer = parse_optimizer(f.optimizer);
    if (f.budget) cfg.budget = *f.budget;
}

int report(const PipelineResult& r, const fs::path& out) {
    if (r.ok) {
        fmt::print("{}: ok  tn {:.6f}  circuit {:.6f}  qaoa {:.6f}\n", out.string(), r.mps_energy, r.circuit_energy,
                   r.qaoa.best_energy);
        return kExitOk;
    }
    fmt::print(stderr, "{}: stage '{}' failed: {}\n", out.string(), r.failed_stage, r.error);
    return kExitNumeric;
}

int cmd_pipeline(const Common& c, const PipelineFlags& f, CLI::App* app) {
    Json raw = f.config.empty() ? Json::object() : read_json(f.config);
    const fs::path base = f.config.empty() ? fs::path{} : fs::path(f.config).parent_path();
    if (raw.is_array()) {
        if (raw.empty()) throw ConfigError("batch config is empty");
        std::vector<PipelineConfig> configs;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            PipelineConfig cfg = config_from_json(raw[i]);
            Common shared = c;
            // Batch members keep their own output directories unless --out names a parent.
            if (!c.out.empty()) shared.out = (fs::path(c.out) / fmt::format("run_{:03d}", i)).string();
            apply_overrides(cfg, shared, f, app);
            cfg.validate();
            configs.push_back(std::move(cfg));
        }
        const auto results = run_batch(configs, f.workers, base);
        int code = kExitOk;
        for (std::size_t i = 0; i < results.size(); ++i)
            if (report(results[i], configs[i].out) != kExitOk) code = kExitNumeric;
        return code;
    }
    PipelineConfig cfg = config_from_json(raw);
    apply_overrides(cfg, c, f, app);
    cfg.validate();
    return report(run_pipeline(cfg, base), cfg.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gibbs-state initialization for QAOA: tensor-network preparation, synthesis and analysis"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--instance", common.instance, "instance JSON or edge list");
        sub->add_option("--seed", common.seed, "random seed");
        sub->add_option("--out", common.out, "output directory (or file for gen/decompose --gate)");
    };

    std::string gen_type = "maxcut";
    int gen_n = 8;
    double gen_p = 0.5;
    auto* gen = app.add_subcommand("gen", "generate a random problem instance");
    add_common(gen);
    gen->add_option("--type", gen_type, "maxcut | tsp | ising");
    gen->add_option("--n", gen_n, "nodes, cities or spins");
    gen->add_option("--edge-probability", gen_p, "Max Cut edge probability");

    Evolution evo;
    int samples = 10000;
    auto* gibbs = app.add_subcommand("gibbs", "imaginary-time MPO evolution and Gibbs quality report");
    add_common(gibbs);
    add_evolution(gibbs, evo);
    gibbs->add_option("--samples", samples, "samples for the quality regression");

    Init init;
    int p = 1;
    std::string optimizer = "cobyla";
    int budget = 500;
    std::optional<int> grid;
    auto* qaoa = app.add_subcommand("qaoa", "optimize QAOA angles from a chosen initial state");
    add_common(qaoa);
    add_init(qaoa, init);
    qaoa->add_option("--p", p, "number of QAOA layers");
    qaoa->add_option("--optimizer", optimizer, "cobyla | cmaes");
    qaoa->add_option("--budget", budget, "objective evaluation budget");
    qaoa->add_option("--grid", grid, "also write a p=1 landscape on a grid x grid mesh");

    double t_max = 5.0;
    int points = 100;
    auto* diagram = app.add_subcommand("diagram", "energy-entropy diagram with the Boltzmann boundary");
    add_common(diagram);
    add_init(diagram, init);
    diagram->add_option("--t-max", t_max, "largest |t| on the boundary grid");
    diagram->add_option("--points", points, "boundary points per side");

    int pca_grid = 64;
    double threshold = 0.01;
    auto* pcacmd = app.add_subcommand("pca", "p=1 distribution sweep, PCA projection and envelope area");
    add_common(pcacmd);
    add_init(pcacmd, init);
    pcacmd->add_option("--grid", pca_grid, "points per angle axis");
    pcacmd->add_option("--rank-threshold", threshold, "variance fraction counted by the rank proxy");

    std::string state_path, gate_path;
    int k_max = 4, sweeps = 200;
    double target = 0.99;
    auto* decompose = app.add_subcommand("decompose", "MPS to staircase circuit, or KAK of a two-qubit gate");
    add_common(decompose);
    decompose->add_option("--state", state_path, "MPS JSON written by gibbs");
    decompose->add_option("--gate", gate_path, "4x4 unitary as JSON [[re,im],...] rows");
    decompose->add_option("--k-max", k_max, "maximum number of layers");
    decompose->add_option("--fidelity-target", target, "stop once this fidelity is reached");
    decompose->add_option("--sweeps", sweeps, "refinement sweeps per depth");

    PipelineFlags pf;
    auto* pipeline = app.add_subcommand("pipeline", "full two-stage run: evolution, synthesis, QAOA");
    add_common(pipeline);
    add_evolution(pipeline, pf.e);
    pipeline->add_option("--config", pf.config, "JSON config (object, or array for a batch)");
    pipeline->add_option("--k-max", pf.k_max, "maximum synthesis layers");
    pipeline->add_option("--fidelity-target", pf.fidelity_target, "synthesis fidelity target");
    pipeline->add_option("--p", pf.p, "number of QAOA layers");
    pipeline->add_option("--optimizer", pf.optimizer, "cobyla | cmaes");
    pipeline->add_option("--budget", pf.budget, "objective evaluation budget");
    pipeline->add_option("--workers", pf.workers, "parallel runs in batch mode")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gen) return cmd_gen(common, gen_type, gen_n, gen_p);
        if (*gibbs) return cmd_gibbs(common, evo, samples);
        if (*qaoa) return cmd_qaoa(common, init, p, optimizer, budget, grid);
        if (*diagram) return cmd_diagram(common, init, t_max, points);
        if (*pcacmd) return cmd_pca(common, init, pca_grid, threshold);
        if (*decompose) return cmd_decompose(common, state_path, gate_path, k_max, target, sweeps);
        if (*pipeline) return cmd_pipeline(common, pf, pipeline);
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitNumeric;
    }
    return kExitOk;
}
