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

#include "cqo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace cqo {

using Eigen::MatrixXd;
using Eigen::VectorXd;

OptimizerKind parse_optimizer(const std::string& text) {
    if (text == "cobyla") return OptimizerKind::Cobyla;
    if (text == "cmaes" || text == "cma-es") return OptimizerKind::CmaEs;
    throw std::invalid_argument(fmt::format("unknown optimizer '{}', expected cobyla or cmaes", text));
}

const char* to_string(OptimizerKind kind) { return kind == OptimizerKind::Cobyla ? "cobyla" : "cmaes"; }

namespace {

struct BudgetExhausted {};

// Counts evaluations, keeps the best point and throws once the budget is spent.
class Counter {
public:
    Counter(const Objective& f, int budget) : f_(f), budget_(budget) {
        if (budget < 1) throw std::invalid_argument("evaluation budget must be at least 1");
    }

    double operator()(const VectorXd& x) {
        if (result_.evaluations >= budget_) throw BudgetExhausted{};
        const double v = f_(x);
        ++result_.evaluations;
        if (result_.evaluations == 1 || v < result_.best_value) {
            result_.best_value = v;
            result_.best_x = x;
        }
        result_.trace.push_back({result_.evaluations, v, result_.best_value});
        return v;
    }

    bool exhausted() const { return result_.evaluations >= budget_; }
    OptimizerResult finish(bool exhausted) {
        result_.budget_exhausted = exhausted;
        return std::move(result_);
    }

private:
    const Objective& f_;
    int budget_;
    OptimizerResult result_;
};

}  // namespace

OptimizerResult minimize_linear_tr(const Objective& f, const VectorXd& x0, const OptimizerOptions& options) {
    Counter eval(f, options.budget);
    const Eigen::Index d = x0.size();
    double rho = options.initial_step;
    try {
        std::vector<VectorXd> pts{x0};
        std::vector<double> vals{eval(x0)};
        if (d == 0) return eval.finish(false);
        auto rebuild = [&](const VectorXd& centre, double centre_value) {
            pts.assign(1, centre);
            vals.assign(1, centre_value);
            for (Eigen::Index i = 0; i < d; ++i) {
                VectorXd x = centre;
                x[i] += rho;
                pts.push_back(x);
                vals.push_back(eval(x));
            }
        };
        rebuild(x0, vals[0]);
        bool fresh = true;  // simplex was just built around the best point at this radius
        while (rho >= options.final_step) {
            const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
            MatrixXd a(d, d);
            VectorXd rhs(d);
            for (Eigen::Index i = 0, r = 0; i <= d; ++i) {
                if (i == best) continue;
                a.row(r) = (pts[i] - pts[best]).transpose();
                rhs[r] = vals[i] - vals[best];
                ++r;
            }
            Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            const bool well_posed = sv[d - 1] > 1e-3 * rho;
            if (!well_posed) {
                rebuild(pts[best], vals[best]);
                fresh = true;
                continue;
            }
            const VectorXd g = svd.solve(rhs);
            const double gn = g.norm();
            bool improved = false;
            if (gn > 0.0) {
                const VectorXd x = pts[best] - (rho / gn) * g;
                const double v = eval(x);
                if (v < vals[best]) {
                    // Drop the vertex farthest from the new point, keeping the simplex local.
                    Eigen::Index far = 0;
                    double far_dist = -1.0;
                    for (Eigen::Index i = 0; i <= d; ++i) {
                        const double dist = (pts[i] - x).norm();
                        if (dist > far_dist) {
                            far_dist = dist;
                            far = i;
                        }
                    }
                    pts[far] = x;
                    vals[far] = v;
                    improved = true;
                    fresh = false;
                }
            }
            if (improved) continue;
            const VectorXd centre = pts[best];
            const double centre_value = vals[best];
            if (!fresh) {
                rebuild(centre, centre_value);
                fresh = true;
                continue;
            }
            rho *= 0.5;
            if (rho < options.final_step) break;
            rebuild(centre, centre_value);
        }
    } catch (const BudgetExhausted&) {
        return eval.finish(true);
    }
    return eval.finish(eval.exhausted());
}

OptimizerResult minimize_cmaes(const Objective& f, const VectorXd& x0, const OptimizerOptions& options) {
    Counter eval(f, options.budget);
    const Eigen::Index d = x0.size();
    try {
        eval(x0);
        if (d == 0) return eval.finish(false);
        const double dd = static_cast<double>(d);
        const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(dd)));
        const int mu = lambda / 2;
        VectorXd w(mu);
        for (int i = 0; i < mu; ++i) w[i] = std::log((lambda + 1) / 2.0) - std::log(i + 1.0);
        w /= w.sum();
        const double mueff = 1.0 / w.squaredNorm();
        const double cc = (4.0 + mueff / dd) / (dd + 4.0 + 2.0 * mueff / dd);
        const double cs = (mueff + 2.0) / (dd + mueff + 5.0);
        const double c1 = 2.0 / ((dd + 1.3) * (dd + 1.3) + mueff);
        const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dd + 2.0) * (dd + 2.0) + mueff));
        const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dd + 1.0)) - 1.0) + cs;
        const double chi_n = std::sqrt(dd) * (1.0 - 1.0 / (4.0 * dd) + 1.0 / (21.0 * dd * dd));

        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        VectorXd mean = x0, pc = VectorXd::Zero(d), ps = VectorXd::Zero(d);
        MatrixXd c = MatrixXd::Identity(d, d), basis = MatrixXd::Identity(d, d);
        VectorXd scale = VectorXd::Ones(d);
        double sigma = options.initial_step;
        for (int gen = 1;; ++gen) {
            std::vector<VectorXd> z(lambda), y(lambda), x(lambda);
            std::vector<double> fx(lambda);
            for (int k = 0; k < lambda; ++k) {
                z[k].resize(d);
                for (Eigen::Index i = 0; i < d; ++i) z[k][i] = gauss(rng);
                y[k] = basis * scale.asDiagonal() * z[k];
                x[k] = mean + sigma * y[k];
            }
            for (int k = 0; k < lambda; ++k) fx[k] = eval(x[k]);
            std::vector<int> order(lambda);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });

            VectorXd yw = VectorXd::Zero(d);
            for (int i = 0; i < mu; ++i) yw += w[i] * y[order[i]];
            mean += sigma * yw;
            const MatrixXd inv_sqrt = basis * scale.cwiseInverse().asDiagonal() * basis.transpose();
            ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * inv_sqrt * yw;
            const double ps_norm = ps.norm();
            const bool hsig = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * gen)) / chi_n < 1.4 + 2.0 / (dd + 1.0);
            pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * yw;
            MatrixXd rank_mu = MatrixXd::Zero(d, d);
            for (int i = 0; i < mu; ++i) rank_mu += w[i] * y[order[i]] * y[order[i]].transpose();
            c = (1.0 - c1 - cmu) * c + c1 * (pc * pc.transpose() + (hsig ? 0.0 : cc * (2.0 - cc)) * c) + cmu * rank_mu;
            sigma *= std::exp((cs / damps) * (ps_norm / chi_n - 1.0));

            c = 0.5 * (c + c.transpose());
            Eigen::SelfAdjointEigenSolver<MatrixXd> eig(c);
            basis = eig.eigenvectors();
            scale = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
            if (!std::isfinite(sigma) || sigma * scale.maxCoeff() < options.final_step) break;
        }
    } catch (const BudgetExhausted&) {
        return eval.finish(true);
    }
    return eval.finish(eval.exhausted());
}

OptimizerResult minimize(OptimizerKind kind, const Objective& f, const VectorXd& x0, const OptimizerOptions& options) {
    return kind == OptimizerKind::Cobyla ? minimize_linear_tr(f, x0, options) : minimize_cmaes(f, x0, options);
}

}  // namespace cqo
