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

#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "polycurv/common.hpp"
#include "polycurv/triangle.hpp"

namespace polycurv {

/**
 * Connected bordered triangulated surface. Immutable after build_surface;
 * shared read access from any number of threads is safe.
 *
 * Edges are keyed by the sorted vertex pair and indexed in lexicographic
 * order of those pairs, so vectors and matrices built over edges are
 * reproducible across runs. Within a triangle (v0, v1, v2), local slot i
 * holds the edge opposite v_i.
 */
struct Surface {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> triangles;

    std::vector<std::pair<int, int>> edges;             // canonical (u < v), sorted
    std::vector<std::array<int, 2>> edge_triangles;     // incident triangles, -1 pad
    std::vector<std::array<int, 3>> triangle_edges;     // edge id opposite local vertex i
    std::vector<bool> edge_is_boundary;
    std::vector<bool> vertex_is_boundary;
    std::vector<int> triangle_class;                    // number of interior edges

    std::vector<int> interior_edges;                    // edge ids, increasing
    std::vector<int> boundary_edges;
    std::vector<int> interior_vertices;
    std::vector<int> boundary_vertices;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    int edge_id(int u, int v) const
    {
        if (u > v) std::swap(u, v);
        const auto it = edge_index_.find({u, v});
        if (it == edge_index_.end()) throw BadIndex("no such edge");
        return it->second;
    }

    bool has_edge(int u, int v) const
    {
        if (u > v) std::swap(u, v);
        return edge_index_.count({u, v}) > 0;
    }

    /** Position of an edge id within interior_edges, or -1. */
    int interior_edge_position(int edge) const { return interior_edge_pos_[edge]; }
    /** Position of a vertex within interior_vertices, or -1. */
    int interior_vertex_position(int vertex) const { return interior_vertex_pos_[vertex]; }

    std::map<std::pair<int, int>, int> edge_index_;
    std::vector<int> interior_edge_pos_;
    std::vector<int> interior_vertex_pos_;
};

inline Surface build_surface(int vertex_count, const std::vector<std::array<int, 3>>& triangles)
{
    if (vertex_count <= 0) throw BadIndex("vertex_count must be positive");
    Surface s;
    s.vertex_count = vertex_count;
    s.triangles = triangles;

    std::map<std::array<int, 3>, int> seen;
    for (const auto& tri : triangles) {
        for (int v : tri)
            if (v < 0 || v >= vertex_count) throw BadIndex("triangle vertex index out of range");
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw BadIndex("repeated vertex within a triangle");
        std::array<int, 3> key = tri;
        std::sort(key.begin(), key.end());
        if (!seen.emplace(key, 1).second) throw BadIndex("duplicate triangle");
    }

    // canonical edge set in lexicographic order
    std::map<std::pair<int, int>, std::vector<int>> incidence;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        const auto& tri = triangles[t];
        for (int i = 0; i < 3; ++i) {
            int u = tri[(i + 1) % 3], v = tri[(i + 2) % 3];
            if (u > v) std::swap(u, v);
            incidence[{u, v}].push_back(t);
        }
    }
    for (const auto& [key, tris] : incidence) {
        if (tris.size() > 2) throw NonManifoldEdge("edge incident to three or more triangles");
        const int id = static_cast<int>(s.edges.size());
        s.edges.push_back(key);
        s.edge_index_[key] = id;
        s.edge_triangles.push_back({tris[0], tris.size() == 2 ? tris[1] : -1});
        s.edge_is_boundary.push_back(tris.size() == 1);
    }

    s.triangle_edges.resize(triangles.size());
    s.triangle_class.assign(triangles.size(), 0);
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        const auto& tri = triangles[t];
        for (int i = 0; i < 3; ++i) {
            const int e = s.edge_id(tri[(i + 1) % 3], tri[(i + 2) % 3]);
            s.triangle_edges[t][i] = e;
            if (!s.edge_is_boundary[e]) ++s.triangle_class[t];
        }
    }

    // vertices: no isolated ones, boundary iff on a boundary edge
    std::vector<bool> used(vertex_count, false);
    for (const auto& tri : triangles)
        for (int v : tri) used[v] = true;
    for (int v = 0; v < vertex_count; ++v)
        if (!used[v]) throw BadIndex("isolated vertex carries no metric data");

    s.vertex_is_boundary.assign(vertex_count, false);
    bool any_boundary_edge = false;
    for (int e = 0; e < s.edge_count(); ++e) {
        if (s.edge_is_boundary[e]) {
            any_boundary_edge = true;
            s.vertex_is_boundary[s.edges[e].first] = true;
            s.vertex_is_boundary[s.edges[e].second] = true;
        }
    }
    if (!any_boundary_edge) throw ClosedSurface("surface has no boundary edge");

    // connectivity over the edge graph
    std::vector<int> stack{triangles.empty() ? 0 : triangles[0][0]};
    std::vector<bool> reached(vertex_count, false);
    std::vector<std::vector<int>> vertex_edges(vertex_count);
    for (int e = 0; e < s.edge_count(); ++e) {
        vertex_edges[s.edges[e].first].push_back(e);
        vertex_edges[s.edges[e].second].push_back(e);
    }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (reached[v]) continue;
        reached[v] = true;
        for (int e : vertex_edges[v]) {
            const auto [a, b] = s.edges[e];
            stack.push_back(a == v ? b : a);
        }
    }
    for (int v = 0; v < vertex_count; ++v)
        if (!reached[v]) throw Disconnected("surface is not connected");

    s.interior_edge_pos_.assign(s.edge_count(), -1);
    for (int e = 0; e < s.edge_count(); ++e) {
        if (s.edge_is_boundary[e]) {
            s.boundary_edges.push_back(e);
        } else {
            s.interior_edge_pos_[e] = static_cast<int>(s.interior_edges.size());
            s.interior_edges.push_back(e);
        }
    }
    s.interior_vertex_pos_.assign(vertex_count, -1);
    for (int v = 0; v < vertex_count; ++v) {
        if (s.vertex_is_boundary[v]) {
            s.boundary_vertices.push_back(v);
        } else {
            s.interior_vertex_pos_[v] = static_cast<int>(s.interior_vertices.size());
            s.interior_vertices.push_back(v);
        }
    }
    return s;
}

/** True iff every triangle has at least one boundary edge (class < 3). */
inline bool is_stripped(const Surface& s)
{
    return std::all_of(s.triangle_class.begin(), s.triangle_class.end(),
                       [](int c) { return c <= 2; });
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/** Edge-length assignment; lengths indexed by edge id. */
struct PolyhedralMetric {
    std::vector<double> lengths;
    Geometry geometry = Geometry::Euclidean;

    double length(int edge) const { return lengths[edge]; }
};

/** Per-vertex radius assignment inducing d(uv) = r(u) + r(v). */
struct CirclePackingMetric {
    std::vector<double> radii;
    Geometry geometry = Geometry::Euclidean;  // Euclidean or Hyperbolic
};

inline PolyhedralMetric metric_from_map(const Surface& s,
                                        const std::map<std::pair<int, int>, double>& lengths,
                                        Geometry geometry)
{
    PolyhedralMetric m;
    m.geometry = geometry;
    m.lengths.resize(s.edge_count());
    for (int e = 0; e < s.edge_count(); ++e) {
        const auto it = lengths.find(s.edges[e]);
        if (it == lengths.end()) throw MissingEdgeLength("metric misses an edge length");
        m.lengths[e] = it->second;
    }
    return m;
}

inline PolyhedralMetric induced_metric(const Surface& s, const CirclePackingMetric& p)
{
    if (p.geometry == Geometry::Spherical)
        throw UnsupportedGeometry("packing metrics are Euclidean or hyperbolic");
    if (static_cast<int>(p.radii.size()) != s.vertex_count)
        throw MissingEdgeLength("packing radii must cover every vertex");
    for (double r : p.radii)
        if (!(r > 0.0)) throw NonPositiveRadius("packing radius must be positive");
    PolyhedralMetric m;
    m.geometry = p.geometry;
    m.lengths.resize(s.edge_count());
    for (int e = 0; e < s.edge_count(); ++e)
        m.lengths[e] = p.radii[s.edges[e].first] + p.radii[s.edges[e].second];
    return m;
}

/** Length triple of a triangle under a metric, in local slot order. */
inline TriangleLengths triangle_lengths(const Surface& s, const PolyhedralMetric& m, int tri)
{
    TriangleLengths t{{}, m.geometry};
    for (int i = 0; i < 3; ++i) t.l[i] = m.lengths[s.triangle_edges[tri][i]];
    return t;
}

/**
 * Ids of the triangles whose length triple is not strictly admissible in
 * the metric's geometry; empty means the metric is valid.
 */
inline std::vector<int> validate_metric(const Surface& s, const PolyhedralMetric& m)
{
    if (static_cast<int>(m.lengths.size()) != s.edge_count())
        throw MissingEdgeLength("metric must cover every edge");
    std::vector<int> bad;
    for (int t = 0; t < s.triangle_count(); ++t) {
        const TriangleLengths lt = triangle_lengths(s, m, t);
        bool positive = true;
        for (double l : lt.l) positive = positive && l > 0.0;
        if (!positive || !in_moduli_space(lt)) bad.push_back(t);
    }
    return bad;
}

/** Angle at a given vertex of a given triangle. */
inline double angle_at_vertex(const Surface& s, const PolyhedralMetric& m, int tri, int vertex)
{
    const TriangleAngles a = angles_from_lengths(triangle_lengths(s, m, tri));
    for (int i = 0; i < 3; ++i)
        if (s.triangles[tri][i] == vertex) return a.theta[i];
    throw BadIndex("vertex not part of triangle");
}

/** Triangles incident to each vertex, in increasing triangle order. */
inline std::vector<std::vector<int>> vertex_stars(const Surface& s)
{
    std::vector<std::vector<int>> star(s.vertex_count);
    for (int t = 0; t < s.triangle_count(); ++t)
        for (int v : s.triangles[t]) star[v].push_back(t);
    return star;
}

}  // namespace polycurv
