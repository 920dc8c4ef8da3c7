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

#include <gtest/gtest.h>

#include <random>

#include "cqo/geometry.hpp"
#include "oracles.hpp"

using namespace cqo;

namespace {

std::vector<Point2> random_points(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Point2> pts;
    for (int i = 0; i < k; ++i) pts.emplace_back(g(rng), 0.5 * g(rng));
    return pts;
}

std::vector<Point2> l_shape(int m) {
    // Unit-spaced grid covering [0,2]x[0,1] plus [0,1]x[1,2]; area 3.
    std::vector<Point2> pts;
    for (int i = 0; i <= 2 * m; ++i)
        for (int j = 0; j <= 2 * m; ++j) {
            const double x = static_cast<double>(i) / m, y = static_cast<double>(j) / m;
            if (y <= 1.0 || x <= 1.0) pts.emplace_back(x, y);
        }
    return pts;
}

}  // namespace

TEST(Geometry, TriangleFormulas) {
    EXPECT_NEAR(triangle_area({0, 0}, {1, 0}, {0, 1}), 0.5, 1e-15);
    EXPECT_NEAR(circumradius({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}), 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(circumradius({0, 0}, {2, 0}, {0, 2}), std::sqrt(2.0), 1e-12);
}

TEST(Delaunay, EmptyCircumcircleProperty) {
    const auto pts = random_points(80, 3);
    const Triangulation t = delaunay(pts);
    ASSERT_FALSE(t.triangles.empty());
    for (const auto& tri : t.triangles) {
        const Point2 &a = t.points[tri[0]], &b = t.points[tri[1]], &c = t.points[tri[2]];
        const double cross = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
        EXPECT_GT(cross, 0.0);
        // Circumcentre via the perpendicular-bisector solve.
        Eigen::Matrix2d m;
        m << 2 * (b - a).x(), 2 * (b - a).y(), 2 * (c - a).x(), 2 * (c - a).y();
        const Eigen::Vector2d rhs(b.squaredNorm() - a.squaredNorm(), c.squaredNorm() - a.squaredNorm());
        const Eigen::Vector2d centre = m.colPivHouseholderQr().solve(rhs);
        const double r = (a - centre).norm();
        for (const auto& p : t.points) EXPECT_GE((p - centre).norm(), r - 1e-9);
    }
}

TEST(Delaunay, DegenerateInputs) {
    EXPECT_TRUE(delaunay({{0, 0}, {1, 1}}).triangles.empty());
    EXPECT_TRUE(delaunay({{0, 0}, {1, 1}, {2, 2}, {3, 3}}).triangles.empty());
    const Triangulation dup = delaunay({{0, 0}, {1, 0}, {0, 1}, {0, 0}});
    EXPECT_EQ(dup.points.size(), 3u);
    EXPECT_EQ(dup.triangles.size(), 1u);
}

TEST(AlphaShape, ZeroAlphaIsConvexHull) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto pts = random_points(60, seed);
        EXPECT_NEAR(alpha_shape_area(pts, 0.0), oracle::hull_area(pts), 1e-9);
    }
}

TEST(AlphaShape, LargeAlphaGivesNothingAndAreaShrinksWithAlpha) {
    const auto pts = random_points(60, 9);
    EXPECT_DOUBLE_EQ(alpha_shape_area(pts, 1e6), 0.0);
    double prev = alpha_shape_area(pts, 0.0);
    for (double alpha : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double a = alpha_shape_area(pts, alpha);
        EXPECT_LE(a, prev + 1e-12);
        prev = a;
    }
}

TEST(AlphaShape, ConcaveShapeRecoveredByAutoRule) {
    const auto pts = l_shape(6);
    EXPECT_NEAR(oracle::hull_area(pts), 3.5, 1e-12);
    const AutoAlphaResult r = alpha_shape_auto(pts);
    EXPECT_GT(r.alpha, 0.0);
    // The reflex corner adds one lattice-sized triangle of area 1 / (2 m^2).
    EXPECT_NEAR(r.area, 3.0 + 1.0 / 72.0, 1e-9);
}
