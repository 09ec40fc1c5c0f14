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

#include <map>
#include <vector>

#include "polycurv/quadrature.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

enum class EdgeCurvatureFlavor { Phi, Psi };

/**
 * Values of an edge curvature functional, one per interior edge, in the
 * order of Surface::interior_edges.
 */
struct EdgeCurvatureVector {
    std::vector<double> values;
    EdgeCurvatureFlavor flavor = EdgeCurvatureFlavor::Phi;
    double h = 0.0;
    Geometry geometry = Geometry::Euclidean;

    std::map<std::pair<int, int>, double> as_map(const Surface& s) const
    {
        std::map<std::pair<int, int>, double> out;
        for (std::size_t i = 0; i < values.size(); ++i)
            out[s.edges[s.interior_edges[i]]] = values[i];
        return out;
    }
};

/** Values of the vertex curvature, one per interior vertex. */
struct VertexCurvatureVector {
    std::vector<double> values;
    double h = 0.0;
};

namespace detail {

/**
 * The two angles facing an interior edge, plus the per-triangle halved
 * angle combinations (b+c-a)/2 used by the psi functional.
 */
struct FacingAngles {
    double a[2];      // facing angle in each incident triangle
    double half[2];   // (b + c - a)/2 per incident triangle
};

inline FacingAngles facing_angles(const Surface& s, const PolyhedralMetric& m, int edge)
{
    FacingAngles out{};
    for (int side = 0; side < 2; ++side) {
        const int t = s.edge_triangles[edge][side];
        const TriangleAngles ang = angles_from_lengths(triangle_lengths(s, m, t));
        int slot = -1;
        for (int i = 0; i < 3; ++i)
            if (s.triangle_edges[t][i] == edge) slot = i;
        out.a[side] = ang.theta[slot];
        out.half[side] = 0.5 * (ang.sum() - 2.0 * ang.theta[slot]);
    }
    return out;
}

}  // namespace detail

/**
 * phi_h: per interior edge, the sum over the two incident triangles of
 * the sin^h integral from the facing angle up to pi/2. Closed forms at
 * h = 0 (pi - a - a') and h = -2 (cot a + cot a') come out of the
 * integer-power antiderivatives.
 */
inline EdgeCurvatureVector phi_h(const Surface& s, const PolyhedralMetric& m, double h)
{
    EdgeCurvatureVector out;
    out.flavor = EdgeCurvatureFlavor::Phi;
    out.h = h;
    out.geometry = m.geometry;
    out.values.reserve(s.interior_edges.size());
    for (int e : s.interior_edges) {
        const auto f = detail::facing_angles(s, m, e);
        out.values.push_back(integral_kernel(IntegralKind::SinPow, h, f.a[0], 0.5 * kPi) +
                             integral_kernel(IntegralKind::SinPow, h, f.a[1], 0.5 * kPi));
    }
    return out;
}

/**
 * psi_h: per interior edge, the sum of the cos^h integrals from 0 to
 * (b+c-a)/2 over the two incident triangles. The integration limits lie
 * strictly inside (-pi/2, pi/2) for admissible metrics in every geometry.
 */
inline EdgeCurvatureVector psi_h(const Surface& s, const PolyhedralMetric& m, double h)
{
    EdgeCurvatureVector out;
    out.flavor = EdgeCurvatureFlavor::Psi;
    out.h = h;
    out.geometry = m.geometry;
    out.values.reserve(s.interior_edges.size());
    for (int e : s.interior_edges) {
        const auto f = detail::facing_angles(s, m, e);
        out.values.push_back(integral_kernel(IntegralKind::CosPow, h, 0.0, f.half[0]) +
                             integral_kernel(IntegralKind::CosPow, h, 0.0, f.half[1]));
    }
    return out;
}

/**
 * The hyperbolic phi variant realized by the gamma-chart energy of
 * stripped surfaces; identical to phi_h (the closed differential form
 * behind the stripped-surface functional integrates the same sin^h
 * facing-angle kernel, only the length chart differs).
 */
inline EdgeCurvatureVector phi_h_stripped(const Surface& s, const PolyhedralMetric& m, double h)
{
    if (m.geometry != Geometry::Hyperbolic)
        throw UnsupportedGeometry("stripped phi flavor is hyperbolic-only");
    return phi_h(s, m, h);
}

/**
 * k_h of a circle packing: per interior vertex v of degree m,
 * (2 - m/2) pi minus the sum over incident corners of the tan^h(t/2)
 * integral from pi/2 to the corner angle.
 */
inline VertexCurvatureVector k_h(const Surface& s, const CirclePackingMetric& p, double h)
{
    const PolyhedralMetric m = induced_metric(s, p);
    const auto stars = vertex_stars(s);
    VertexCurvatureVector out;
    out.h = h;
    out.values.reserve(s.interior_vertices.size());
    for (int v : s.interior_vertices) {
        const auto& star = stars[v];
        double acc = (2.0 - 0.5 * static_cast<double>(star.size())) * kPi;
        for (int t : star) {
            const double theta = angle_at_vertex(s, m, t, v);
            acc -= integral_kernel(IntegralKind::TanHalfPow, h, 0.5 * kPi, theta);
        }
        out.values.push_back(acc);
    }
    return out;
}

/**
 * Intrinsic Delaunay test: psi_0(e) >= -eps on every interior edge. The
 * sign of psi_h is independent of h (positive integrand), so h = 0 is
 * used.
 */
inline bool is_delaunay(const Surface& s, const PolyhedralMetric& m, double eps = 1e-12)
{
    if (m.geometry == Geometry::Spherical)
        throw UnsupportedGeometry("Delaunay test applies to Euclidean and hyperbolic metrics");
    const EdgeCurvatureVector psi = psi_h(s, m, 0.0);
    for (double v : psi.values)
        if (v < -eps) return false;
    return true;
}

/**
 * Residual of the star identity sum_{v in e} psi_0(e) = 2 pi - k_0(v) at
 * an interior vertex whose one-ring link lies in the interior. The check
 * is restricted to vertices where the closed-star derivation applies;
 * elsewhere it raises NotApplicable (a diagnostic, not an assertion).
 */
inline double vertex_edge_identity_residual(const Surface& s, const PolyhedralMetric& m,
                                            int vertex)
{
    if (vertex < 0 || vertex >= s.vertex_count) throw BadIndex("vertex out of range");
    if (s.vertex_is_boundary[vertex]) throw NotApplicable("vertex lies on the boundary");
    const auto stars = vertex_stars(s);
    // link vertices = third corners of the star triangles; all link edges
    // must be interior
    for (int t : stars[vertex]) {
        for (int i = 0; i < 3; ++i) {
            const int e = s.triangle_edges[t][i];
            if (s.triangles[t][i] == vertex && s.edge_is_boundary[e])
                throw NotApplicable("one-ring link touches the boundary");
        }
    }
    double sum_psi = 0.0;
    const EdgeCurvatureVector psi = psi_h(s, m, 0.0);
    for (int t : stars[vertex]) {
        for (int i = 0; i < 3; ++i) {
            const int e = s.triangle_edges[t][i];
            // edges at the vertex appear in two star triangles; halve
            if (s.triangles[t][i] != vertex) {
                const int pos = s.interior_edge_position(e);
                if (pos < 0) throw NotApplicable("incident edge on the boundary");
                sum_psi += 0.5 * psi.values[pos];
            }
        }
    }
    double angle_sum = 0.0;
    for (int t : stars[vertex]) angle_sum += angle_at_vertex(s, m, t, vertex);
    const double k0 = 2.0 * kPi - angle_sum;
    return sum_psi - (2.0 * kPi - k0);
}

}  // namespace polycurv
