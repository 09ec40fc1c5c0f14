/*
 * polycurv: discrete curvatures and rigidity solvers for bordered
 * polyhedral surfaces.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "polycurv/surface.hpp"

namespace polycurv {

/** Surface together with planar vertex positions. */
struct EmbeddedMesh {
    Surface surface;
    std::vector<std::array<double, 2>> positions;

    /**
     * Metric of scaled Euclidean distances. Valid in all three
     * geometries (the triangle inequalities coincide; pick the scale
     * small enough for the spherical constraints).
     */
    PolyhedralMetric metric(Geometry geometry, double scale = 1.0) const
    {
        PolyhedralMetric m;
        m.geometry = geometry;
        m.lengths.resize(surface.edge_count());
        for (int e = 0; e < surface.edge_count(); ++e) {
            const auto [u, v] = surface.edges[e];
            const double dx = positions[u][0] - positions[v][0];
            const double dy = positions[u][1] - positions[v][1];
            m.lengths[e] = scale * std::hypot(dx, dy);
        }
        return m;
    }
};

/** Center vertex 0 fanned to a hexagonal rim: 6 boundary, 6 interior edges. */
inline Surface hexagon_fan()
{
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 6; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 6});
    return build_surface(7, tris);
}

inline EmbeddedMesh hexagon_fan_embedded(double radius = 1.0)
{
    EmbeddedMesh m;
    m.surface = hexagon_fan();
    m.positions.push_back({0.0, 0.0});
    for (int k = 0; k < 6; ++k) {
        const double a = kPi * k / 3.0;
        m.positions.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return m;
}

inline Surface single_triangle() { return build_surface(3, {{0, 1, 2}}); }

inline Surface two_triangle_strip() { return build_surface(4, {{0, 1, 2}, {1, 3, 2}}); }

/**
 * Hexagonal patch of lattice radius two: 19 vertices (1 + 6 + 12), 24
 * triangles; the center and first ring are interior. Unit lattice
 * spacing times `spacing`.
 */
inline EmbeddedMesh two_ring_hexagonal(double spacing = 1.0)
{
    EmbeddedMesh m;
    m.positions.push_back({0.0, 0.0});
    for (int k = 0; k < 6; ++k) {  // ring 1: vertices 1..6
        const double a = kPi * k / 3.0;
        m.positions.push_back({std::cos(a), std::sin(a)});
    }
    for (int k = 0; k < 6; ++k) {  // ring 2: corner 7+2k, edge-mid 8+2k
        const double a = kPi * k / 3.0;
        m.positions.push_back({2 * std::cos(a), 2 * std::sin(a)});
        const double b = a + kPi / 6.0;
        const double r = std::sqrt(3.0);
        m.positions.push_back({r * std::cos(b), r * std::sin(b)});
    }
    for (auto& p : m.positions) {
        p[0] *= spacing;
        p[1] *= spacing;
    }
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 6; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 6});
    for (int k = 0; k < 6; ++k) {
        const int r1a = 1 + k, r1b = 1 + (k + 1) % 6;
        const int corner_a = 7 + 2 * k, mid = 8 + 2 * k, corner_b = 7 + 2 * ((k + 1) % 6);
        tris.push_back({r1a, corner_a, mid});
        tris.push_back({r1a, mid, r1b});
        tris.push_back({r1b, mid, corner_b});
    }
    m.surface = build_surface(19, tris);
    return m;
}

/**
 * Triangulated annular band with n inner and n outer rim vertices and 2n
 * triangles; every triangle has a rim edge, so the band is stripped. The
 * 2n diagonal edges are interior.
 */
inline Surface annulus_strip(int n)
{
    if (n < 3) throw BadIndex("annulus needs n >= 3");
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < n; ++k) {
        const int ia = k, ib = (k + 1) % n;
        const int oa = n + k, ob = n + (k + 1) % n;
        tris.push_back({ia, oa, ib});
        tris.push_back({ib, oa, ob});
    }
    return build_surface(2 * n, tris);
}

inline EmbeddedMesh annulus_strip_embedded(int n, double r_inner, double r_outer)
{
    EmbeddedMesh m;
    m.surface = annulus_strip(n);
    m.positions.resize(2 * n);
    for (int k = 0; k < n; ++k) {
        const double a = 2 * kPi * k / n;
        const double b = 2 * kPi * (k + 0.5) / n;
        m.positions[k] = {r_inner * std::cos(a), r_inner * std::sin(a)};
        m.positions[n + k] = {r_outer * std::cos(b), r_outer * std::sin(b)};
    }
    return m;
}

/** Fan triangulation of an n-gon from vertex 0 (all vertices on the rim). */
inline Surface polygon_fan(int n)
{
    if (n < 3) throw BadIndex("polygon needs n >= 3");
    std::vector<std::array<int, 3>> tris;
    for (int k = 1; k + 1 < n; ++k) tris.push_back({0, k, k + 1});
    return build_surface(n, tris);
}

// ---------------------------------------------------------------------------
// Random samplers
// ---------------------------------------------------------------------------

/** Random length triple strictly inside the moduli space, margin away. */
inline TriangleLengths random_triangle(Rng& rng, Geometry geometry, double margin = 1e-2)
{
    const double hi = geometry == Geometry::Spherical ? 2.6 : 2.2;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        TriangleLengths t{{rng.uniform(0.2, hi), rng.uniform(0.2, hi), rng.uniform(0.2, hi)},
                          geometry};
        if (in_moduli_space(t, margin)) return t;
    }
    throw Error("random_triangle: rejection sampling failed");
}

/** Random radius triple for packing triangles. */
inline std::array<double, 3> random_radii(Rng& rng, double lo = 0.3, double hi = 1.8)
{
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

/**
 * Multiplicative jitter of a valid metric that keeps every triangle
 * strictly admissible (retries per edge).
 */
inline PolyhedralMetric perturb_metric(Rng& rng, const Surface& s, const PolyhedralMetric& m,
                                       double rel, double margin = 1e-3)
{
    PolyhedralMetric out = m;
    for (int attempt = 0; attempt < 200; ++attempt) {
        for (std::size_t e = 0; e < out.lengths.size(); ++e)
            out.lengths[e] = m.lengths[e] * (1.0 + rel * rng.uniform(-1.0, 1.0));
        bool ok = true;
        for (int t = 0; t < s.triangle_count() && ok; ++t)
            ok = in_moduli_space(triangle_lengths(s, out, t), margin);
        if (ok) return out;
    }
    throw Error("perturb_metric: could not keep the metric admissible");
}

// ---------------------------------------------------------------------------
// Random Delaunay disk (Bowyer-Watson)
// ---------------------------------------------------------------------------

namespace detail {

inline bool in_circumcircle(const std::array<double, 2>& a, const std::array<double, 2>& b,
                            const std::array<double, 2>& c, const std::array<double, 2>& d)
{
    // positively oriented (a, b, c): in-circle via the lifted determinant
    const double adx = a[0] - d[0], ady = a[1] - d[1];
    const double bdx = b[0] - d[0], bdy = b[1] - d[1];
    const double cdx = c[0] - d[0], cdy = c[1] - d[1];
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
               ad * (bdx * cdy - bdy * cdx) >
           0.0;
}

inline double orient2d(const std::array<double, 2>& a, const std::array<double, 2>& b,
                       const std::array<double, 2>& c)
{
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

}  // namespace detail

/** Delaunay triangulation of a planar point set (Bowyer-Watson). */
inline std::vector<std::array<int, 3>> delaunay_triangulate(
    const std::vector<std::array<double, 2>>& points)
{
    const int n = static_cast<int>(points.size());
    std::vector<std::array<double, 2>> pts = points;
    // super triangle
    pts.push_back({-1e4, -1e4});
    pts.push_back({1e4, -1e4});
    pts.push_back({0.0, 1e4});
    std::vector<std::array<int, 3>> tris{{n, n + 1, n + 2}};
    for (int p = 0; p < n; ++p) {
        std::vector<std::array<int, 3>> keep;
        std::map<std::pair<int, int>, int> boundary;  // cavity edge -> count
        for (const auto& t : tris) {
            std::array<int, 3> tt = t;
            if (detail::orient2d(pts[tt[0]], pts[tt[1]], pts[tt[2]]) < 0.0)
                std::swap(tt[1], tt[2]);
            if (detail::in_circumcircle(pts[tt[0]], pts[tt[1]], pts[tt[2]], pts[p])) {
                for (int i = 0; i < 3; ++i) {
                    int u = t[i], v = t[(i + 1) % 3];
                    if (u > v) std::swap(u, v);
                    ++boundary[{u, v}];
                }
            } else {
                keep.push_back(t);
            }
        }
        tris = std::move(keep);
        for (const auto& [edge, count] : boundary) {
            if (count != 1) continue;  // interior cavity edge
            std::array<int, 3> t{edge.first, edge.second, p};
            if (detail::orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) < 0.0) std::swap(t[1], t[2]);
            tris.push_back(t);
        }
    }
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris)
        if (t[0] < n && t[1] < n && t[2] < n) out.push_back(t);
    return out;
}

/**
 * Random Delaunay-triangulated disk with well-separated points (about
 * 2*point_count - hull - 2 triangles).
 */
inline EmbeddedMesh random_delaunay_disk(Rng& rng, int point_count = 20,
                                         double min_separation = 0.28)
{
    EmbeddedMesh m;
    for (int attempt = 0; attempt < 100000 &&
                          static_cast<int>(m.positions.size()) < point_count;
         ++attempt) {
        const double r = std::sqrt(rng.uniform());
        const double a = rng.uniform(0.0, 2 * kPi);
        const std::array<double, 2> p{r * std::cos(a), r * std::sin(a)};
        bool ok = true;
        for (const auto& q : m.positions)
            ok = ok && std::hypot(p[0] - q[0], p[1] - q[1]) >= min_separation;
        if (ok) m.positions.push_back(p);
    }
    m.surface = build_surface(static_cast<int>(m.positions.size()),
                              delaunay_triangulate(m.positions));
    return m;
}

// ---------------------------------------------------------------------------
// Cyclic polygon construction oracle
// ---------------------------------------------------------------------------

/** Chord length subtending central angle dphi at circumradius R. */
inline double chord_length(Geometry geometry, double R, double dphi)
{
    switch (geometry) {
        case Geometry::Euclidean: return 2.0 * R * std::sin(0.5 * dphi);
        case Geometry::Hyperbolic: {
            const double c = std::cosh(R);
            const double s = std::sinh(R);
            return std::acosh(c * c - s * s * std::cos(dphi));
        }
        case Geometry::Spherical:
            throw UnsupportedGeometry("spherical cyclic polygons are out of scope");
    }
    return 0.0;
}

/**
 * A cyclic polygon built from sampled central angles: the ground truth
 * for solver round trips. Diagonals are the fan chords from vertex 0.
 */
struct CyclicPolygonOracle {
    Geometry geometry = Geometry::Euclidean;
    double circumradius = 1.0;
    std::vector<double> central_angles;
    std::vector<double> sides;
    std::vector<double> fan_diagonals;  // chord 0-k for k = 2..n-2
};

inline CyclicPolygonOracle random_cyclic_polygon(Rng& rng, int n, Geometry geometry)
{
    CyclicPolygonOracle out;
    out.geometry = geometry;
    out.circumradius =
        geometry == Geometry::Euclidean ? rng.uniform(0.7, 1.6) : rng.uniform(0.5, 1.3);
    std::vector<double> w(n);
    for (;;) {
        double sum = 0.0;
        for (double& x : w) {
            x = 0.25 + rng.uniform();
            sum += x;
        }
        bool ok = true;
        for (double& x : w) {
            x *= 2 * kPi / sum;
            ok = ok && x < 0.95 * kPi;
        }
        if (ok) break;
    }
    out.central_angles = w;
    for (int i = 0; i < n; ++i)
        out.sides.push_back(chord_length(geometry, out.circumradius, w[i]));
    double acc = w[0];
    for (int k = 2; k + 1 < n; ++k) {
        acc += w[k - 1];
        out.fan_diagonals.push_back(chord_length(geometry, out.circumradius, acc));
    }
    return out;
}

}  // namespace polycurv
