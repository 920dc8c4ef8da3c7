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

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace cqo {

using Point2 = Eigen::Vector2d;

double triangle_area(const Point2& a, const Point2& b, const Point2& c);  // unsigned
double circumradius(const Point2& a, const Point2& b, const Point2& c);

struct Triangulation {
    std::vector<Point2> points;  // input with duplicates removed
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
};

// Bowyer-Watson; collinear or fewer than three distinct points give no triangles.
Triangulation delaunay(const std::vector<Point2>& points);

// Union of Delaunay triangles with circumradius below 1 / alpha; alpha <= 0 keeps
// all of them (the convex hull).
double alpha_shape_area(const std::vector<Point2>& points, double alpha);
double alpha_shape_area(const Triangulation& tri, double alpha);

struct AutoAlphaResult {
    double alpha = 0.0;
    double area = 0.0;
};

// Largest alpha whose shape is a single edge-connected set of triangles touching every point.
AutoAlphaResult alpha_shape_auto(const std::vector<Point2>& points);
AutoAlphaResult alpha_shape_auto(const Triangulation& tri);

}  // namespace cqo
