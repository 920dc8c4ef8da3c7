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

#include "cqo/expressivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "cqo/analytics.hpp"
#include "cqo/qaoa.hpp"

namespace cqo {

DistributionMatrix sweep_p1(const DenseState& psi0, const Spectrum& spectrum, int gamma_points, int xi_points) {
    if (gamma_points < 8 || xi_points < 8) throw std::invalid_argument("sweep resolution must be at least 8 per axis");
    if (psi0.n != spectrum.n) throw std::invalid_argument("state and Hamiltonian sizes differ");
    DistributionMatrix m;
    m.n = psi0.n;
    for (int i = 0; i < gamma_points; ++i) m.gamma.push_back(2.0 * std::numbers::pi * i / gamma_points);
    for (int j = 0; j < xi_points; ++j) m.xi.push_back(std::numbers::pi * j / xi_points);
    m.rows.resize(static_cast<Eigen::Index>(gamma_points) * xi_points, static_cast<Eigen::Index>(psi0.dim()));
    DenseState start = psi0;
    start.normalize();
    for (int i = 0; i < gamma_points; ++i) {
        const DenseState phased = apply_cost_layer(start, spectrum, m.gamma[i]);
        for (int j = 0; j < xi_points; ++j) {
            const DenseState out = apply_mixer_layer(phased, m.xi[j]);
            m.rows.row(static_cast<Eigen::Index>(i) * xi_points + j) = out.amplitudes.cwiseAbs2().transpose();
        }
    }
    return m;
}

PcaResult pca(const Eigen::MatrixXd& data) {
    if (data.rows() < 3) throw std::invalid_argument("PCA needs at least three rows");
    PcaResult r;
    r.mean = data.colwise().mean().transpose();
    const Eigen::MatrixXd centred = data.rowwise() - r.mean.transpose();
    const double denom = static_cast<double>(data.rows() - 1);
    const Eigen::MatrixXd cov = (centred.adjoint() * centred) / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw std::runtime_error("covariance eigendecomposition failed");
    const Eigen::Index d = cov.rows();
    r.components.resize(d, d);
    r.variances.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        r.components.col(k) = eig.eigenvectors().col(d - 1 - k);
        r.variances[k] = std::max(0.0, eig.eigenvalues()[d - 1 - k]);
    }
    const Eigen::Index keep = std::min<Eigen::Index>(2, d);
    r.projected = Eigen::MatrixXd::Zero(data.rows(), 2);
    r.projected.leftCols(keep) = centred * r.components.leftCols(keep);
    return r;
}

std::vector<Point2> projected_points(const PcaResult& result) {
    std::vector<Point2> pts(result.projected.rows());
    for (Eigen::Index i = 0; i < result.projected.rows(); ++i) pts[i] = result.projected.row(i).transpose();
    return pts;
}

double envelope_area(const std::vector<Point2>& points, double alpha) { return alpha_shape_area(points, alpha); }

AutoAlphaResult envelope_area_auto(const std::vector<Point2>& points) { return alpha_shape_auto(points); }

int significant_rank(const Eigen::VectorXd& variances, double threshold) {
    if (variances.size() == 0) return 0;
    const double top = variances.maxCoeff();
    if (!(top > 0.0)) return 0;
    int count = 0;
    for (double v : variances)
        if (v >= threshold * top) ++count;
    return count;
}

DistanceMetric parse_metric(const std::string& text) {
    if (text == "tv" || text == "total-variation") return DistanceMetric::TotalVariation;
    if (text == "euclidean") return DistanceMetric::Euclidean;
    throw std::invalid_argument(fmt::format("unknown metric '{}', expected total-variation or euclidean", text));
}

double distribution_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b, DistanceMetric metric) {
    return metric == DistanceMetric::TotalVariation ? 0.5 * (a - b).lpNorm<1>() : (a - b).norm();
}

int epsilon_distinct_count(const DistributionMatrix& m, double eps, DistanceMetric metric) {
    if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
    std::vector<Eigen::Index> centres;
    for (Eigen::Index i = 0; i < m.rows.rows(); ++i) {
        const Eigen::VectorXd row = m.rows.row(i).transpose();
        bool covered = false;
        for (auto c : centres)
            if (distribution_distance(row, m.rows.row(c).transpose(), metric) <= eps) {
                covered = true;
                break;
            }
        if (!covered) centres.push_back(i);
    }
    return static_cast<int>(centres.size());
}

ExpressivitySummary analyze(const DistributionMatrix& m, double rank_threshold) {
    const PcaResult r = pca(m);
    const AutoAlphaResult shape = envelope_area_auto(projected_points(r));
    return {shape.area, shape.alpha, significant_rank(r.variances, rank_threshold), r.variances};
}

void write_distribution_csv(std::ostream& out, const DistributionMatrix& m) {
    out << "gamma,xi";
    for (Eigen::Index s = 0; s < m.rows.cols(); ++s) out << ",p" << to_string(bits_from_index(s, m.n));
    out << '\n';
    for (int i = 0; i < m.gamma_points(); ++i)
        for (int j = 0; j < m.xi_points(); ++j) {
            out << fmt::format("{:.17g},{:.17g}", m.gamma[i], m.xi[j]);
            const auto row = m.rows.row(static_cast<Eigen::Index>(i) * m.xi_points() + j);
            for (Eigen::Index s = 0; s < row.size(); ++s) out << fmt::format(",{:.17g}", row[s]);
            out << '\n';
        }
}

void write_projection_csv(std::ostream& out, const DistributionMatrix& m, const PcaResult& result) {
    out << "gamma,xi,pc1,pc2\n";
    for (int i = 0; i < m.gamma_points(); ++i)
        for (int j = 0; j < m.xi_points(); ++j) {
            const Eigen::Index r = static_cast<Eigen::Index>(i) * m.xi_points() + j;
            out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", m.gamma[i], m.xi[j], result.projected(r, 0),
                               result.projected(r, 1));
        }
}

}  // namespace cqo
