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

#include "cqo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace cqo {

double triangle_area(const Point2& a, const Point2& b, const Point2& c) {
    return 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

double circumradius(const Point2& a, const Point2& b, const Point2& c) {
    const double area = triangle_area(a, b, c);
    if (area == 0.0) return std::numeric_limits<double>::infinity();
    return (b - a).norm() * (c - b).norm() * (a - c).norm() / (4.0 * area);
}

namespace {

struct Tri {
    std::array<int, 3> v;
    Point2 centre;
    double r2;
    bool alive;
};

Tri make_tri(const std::vector<Point2>& p, int a, int b, int c) {
    const Point2 &pa = p[a], &pb = p[b], &pc = p[c];
    const double d = 2.0 * (pa.x() * (pb.y() - pc.y()) + pb.x() * (pc.y() - pa.y()) + pc.x() * (pa.y() - pb.y()));
    const double a2 = pa.squaredNorm(), b2 = pb.squaredNorm(), c2 = pc.squaredNorm();
    const Point2 centre((a2 * (pb.y() - pc.y()) + b2 * (pc.y() - pa.y()) + c2 * (pa.y() - pb.y())) / d,
                        (a2 * (pc.x() - pb.x()) + b2 * (pa.x() - pc.x()) + c2 * (pb.x() - pa.x())) / d);
    Tri t{{a, b, c}, centre, (pa - centre).squaredNorm(), true};
    // Keep counter-clockwise orientation.
    if ((pb - pa).x() * (pc - pa).y() - (pb - pa).y() * (pc - pa).x() < 0) std::swap(t.v[1], t.v[2]);
    return t;
}

bool collinear(const std::vector<Point2>& p) {
    const Point2 a = p[0];
    std::size_t far = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if ((p[i] - a).squaredNorm() > (p[far] - a).squaredNorm()) far = i;
    const Point2 d = p[far] - a;
    const double len = d.norm();
    if (len == 0.0) return true;
    for (const auto& q : p)
        if (std::abs(d.x() * (q - a).y() - d.y() * (q - a).x()) / len > 1e-12 * len) return false;
    return true;
}

}  // namespace

Triangulation delaunay(const std::vector<Point2>& input) {
    Triangulation out;
    if (input.empty()) return out;
    Point2 lo = input[0], hi = input[0];
    for (const auto& p : input) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double extent = (hi - lo).maxCoeff();
    const Point2 mid = 0.5 * (lo + hi);

    std::vector<Point2> sorted = input;
    std::sort(sorted.begin(), sorted.end(),
              [](const Point2& a, const Point2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
    const double dup_tol = 1e-12 * std::max(extent, std::numeric_limits<double>::min());
    for (const auto& p : sorted) {
        bool duplicate = false;
        for (auto it = out.points.rbegin(); it != out.points.rend() && p.x() - it->x() <= dup_tol; ++it)
            if ((p - *it).cwiseAbs().maxCoeff() <= dup_tol) {
                duplicate = true;
                break;
            }
        if (!duplicate) out.points.push_back(p);
    }
    if (out.points.size() < 3 || extent == 0.0 || collinear(out.points)) return out;

    // Work in a unit box with a tiny deterministic jitter against co-circular inputs.
    const int n = static_cast<int>(out.points.size());
    std::vector<Point2> work(n + 3);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> jitter(-1e-10, 1e-10);
    for (int i = 0; i < n; ++i) work[i] = (out.points[i] - mid) / extent + Point2(jitter(rng), jitter(rng));
    work[n] = Point2(0.0, 1e3);
    work[n + 1] = Point2(-1e3, -1e3);
    work[n + 2] = Point2(1e3, -1e3);

    std::vector<Tri> tris{make_tri(work, n, n + 1, n + 2)};
    std::size_t dead = 0;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        const Point2& p = work[i];
        edges.clear();
        for (auto& t : tris) {
            if (!t.alive || (p - t.centre).squaredNorm() >= t.r2) continue;
            t.alive = false;
            ++dead;
            for (int e = 0; e < 3; ++e) edges.emplace_back(t.v[e], t.v[(e + 1) % 3]);
        }
        // Boundary edges of the cavity appear once; shared ones appear in both directions.
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges)
            if (!std::binary_search(edges.begin(), edges.end(), std::make_pair(e.second, e.first)))
                tris.push_back(make_tri(work, e.first, e.second, i));
        if (dead > tris.size() / 2) {
            std::erase_if(tris, [](const Tri& t) { return !t.alive; });
            dead = 0;
        }
    }
    for (const auto& t : tris)
        if (t.alive && t.v[0] < n && t.v[1] < n && t.v[2] < n) out.triangles.push_back(t.v);
    return out;
}

double alpha_shape_area(const Triangulation& tri, double alpha) {
    const double r_max = alpha > 0.0 ? 1.0 / alpha : std::numeric_limits<double>::infinity();
    double area = 0.0;
    for (const auto& t : tri.triangles) {
        const auto &a = tri.points[t[0]], &b = tri.points[t[1]], &c = tri.points[t[2]];
        if (circumradius(a, b, c) < r_max) area += triangle_area(a, b, c);
    }
    return area;
}

double alpha_shape_area(const std::vector<Point2>& points, double alpha) {
    return alpha_shape_area(delaunay(points), alpha);
}

namespace {
constexpr double kRadiusTieTol = 1e-9;
}  // namespace

AutoAlphaResult alpha_shape_auto(const Triangulation& tri) {
    AutoAlphaResult out;
    const std::size_t m = tri.triangles.size();
    if (m == 0) return out;
    std::vector<double> radius(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& t = tri.triangles[k];
        radius[k] = circumradius(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]);
    }
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (std::size_t k = 0; k < m; ++k)
        for (int e = 0; e < 3; ++e) {
            int a = tri.triangles[k][e], b = tri.triangles[k][(e + 1) % 3];
            if (a > b) std::swap(a, b);
            by_edge[{a, b}].push_back(static_cast<int>(k));
        }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return radius[a] < radius[b]; });

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> added(m, 0);
    std::vector<int> touched(tri.points.size(), 0);
    std::size_t covered = 0;
    int components = 0;
    double threshold = radius[order.back()];
    for (std::size_t idx = 0; idx < m; ++idx) {
        const int k = order[idx];
        added[k] = 1;
        ++components;
        for (int e = 0; e < 3; ++e) {
            const int v = tri.triangles[k][e];
            if (touched[v]++ == 0) ++covered;
            int a = v, b = tri.triangles[k][(e + 1) % 3];
            if (a > b) std::swap(a, b);
            for (int other : by_edge[{a, b}]) {
                if (other == k || !added[other]) continue;
                const int ra = find(k), rb = find(other);
                if (ra != rb) {
                    parent[ra] = rb;
                    --components;
                }
            }
        }
        // Ties (up to rounding) enter together, so lattice-like inputs do not open holes.
        if (idx + 1 < m && radius[order[idx + 1]] <= radius[k] * (1.0 + kRadiusTieTol)) continue;
        if (covered == tri.points.size() && components == 1) {
            threshold = radius[k];
            break;
        }
    }
    double area = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto& t = tri.triangles[k];
        if (radius[k] <= threshold * (1.0 + kRadiusTieTol)) area += triangle_area(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]);
    }
    out.alpha = std::isfinite(threshold) && threshold > 0.0 ? 1.0 / threshold : 0.0;
    out.area = area;
    return out;
}

AutoAlphaResult alpha_shape_auto(const std::vector<Point2>& points) { return alpha_shape_auto(delaunay(points)); }

}  // namespace cqo
