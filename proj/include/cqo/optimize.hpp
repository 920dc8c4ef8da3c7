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
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cqo {

using Objective = std::function<double(const Eigen::VectorXd&)>;

enum class OptimizerKind { Cobyla, CmaEs };

OptimizerKind parse_optimizer(const std::string& text);
const char* to_string(OptimizerKind kind);

struct OptimizerOptions {
    int budget = 500;             // hard cap on objective evaluations
    std::uint64_t seed = 1;
    double initial_step = 0.1;    // trust radius or CMA-ES step size
    double final_step = 1e-6;
};

struct Evaluation {
    int index = 0;  // 1-based evaluation count
    double value = 0.0;
    double best = 0.0;
};

struct OptimizerResult {
    Eigen::VectorXd best_x;
    double best_value = 0.0;
    std::vector<Evaluation> trace;
    int evaluations = 0;
    bool budget_exhausted = false;
};

// Derivative-free trust-region search on linear models interpolated over a simplex.
OptimizerResult minimize_linear_tr(const Objective& f, const Eigen::VectorXd& x0, const OptimizerOptions& options);

// Covariance matrix adaptation evolution strategy with the usual default weights.
OptimizerResult minimize_cmaes(const Objective& f, const Eigen::VectorXd& x0, const OptimizerOptions& options);

OptimizerResult minimize(OptimizerKind kind, const Objective& f, const Eigen::VectorXd& x0,
                         const OptimizerOptions& options);

}  // namespace cqo
