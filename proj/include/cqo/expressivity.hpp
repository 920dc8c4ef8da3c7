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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqo/geometry.hpp"
#include "cqo/problems.hpp"
#include "cqo/state.hpp"

namespace cqo {

// Row gamma_index * xi_points + xi_index holds the outcome distribution at that grid point.
struct DistributionMatrix {
    int n = 0;
    std::vector<double> gamma;
    std::vector<double> xi;
    Eigen::MatrixXd rows;

    int gamma_points() const { return static_cast<int>(gamma.size()); }
    int xi_points() const { return static_cast<int>(xi.size()); }
};

DistributionMatrix sweep_p1(const DenseState& psi0, const Spectrum& spectrum, int gamma_points = 64,
                            int xi_points = 64);

struct PcaResult {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // orthonormal columns, ordered by variance
    Eigen::VectorXd variances;   // non-increasing, non-negative
    Eigen::MatrixXd projected;   // rows x 2, coordinates along the two leading components
};

PcaResult pca(const Eigen::MatrixXd& data);
inline PcaResult pca(const DistributionMatrix& m) { return pca(m.rows); }

std::vector<Point2> projected_points(const PcaResult& result);

// alpha <= 0 takes the convex hull; use envelope_area_auto for the automatic rule.
double envelope_area(const std::vector<Point2>& points, double alpha);
AutoAlphaResult envelope_area_auto(const std::vector<Point2>& points);

int significant_rank(const Eigen::VectorXd& variances, double threshold = 0.01);

enum class DistanceMetric { TotalVariation, Euclidean };

DistanceMetric parse_metric(const std::string& text);
double distribution_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, DistanceMetric metric);

int epsilon_distinct_count(const DistributionMatrix& m, double eps,
                           DistanceMetric metric = DistanceMetric::TotalVariation);

struct ExpressivitySummary {
    double area = 0.0;
    double alpha = 0.0;
    int rank = 0;
    Eigen::VectorXd variances;
};

ExpressivitySummary analyze(const DistributionMatrix& m, double rank_threshold = 0.01);

void write_distribution_csv(std::ostream& out, const DistributionMatrix& m);
void write_projection_csv(std::ostream& out, const DistributionMatrix& m, const PcaResult& result);

}  // namespace cqo
