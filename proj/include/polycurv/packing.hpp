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

#include <deque>
#include <optional>
#include <vector>

#include "polycurv/solver.hpp"

namespace polycurv {

struct PackingLayout {
    std::vector<double> radii;                    // every vertex
    std::vector<std::array<double, 2>> centers;   // circle centers, plane
    double max_tangency_residual = 0.0;
    SolveReport report;
};

namespace detail {

/**
 * Place point at distances (dp, dq) from placed points P, Q, on the side
 * given by `side` (+1: left of P->Q).
 */
inline std::array<double, 2> third_point(const std::array<double, 2>& P,
                                         const std::array<double, 2>& Q, double dp, double dq,
                                         double side)
{
    const double dx = Q[0] - P[0], dy = Q[1] - P[1];
    const double d = std::hypot(dx, dy);
    const double a = (dp * dp - dq * dq + d * d) / (2.0 * d);
    const double h2 = dp * dp - a * a;
    const double hgt = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    const double ex = dx / d, ey = dy / d;
    return {P[0] + a * ex - side * hgt * ey, P[1] + a * ey + side * hgt * ex};
}

}  // namespace detail

/**
 * Lay out the circle centers of a Euclidean packing by breadth-first
 * triangle propagation from the first triangle (placed at the origin).
 * Consistency requires flat cone angles (k_0 = 0) at interior vertices;
 * the reported residual max | |c_u - c_v| - (r_u + r_v) | over edges
 * measures any failure to close up.
 */
inline PackingLayout layout_packing(const Surface& s, const std::vector<double>& radii)
{
    PackingLayout out;
    out.radii = radii;
    out.centers.assign(s.vertex_count, {0.0, 0.0});
    const auto len = [&](int u, int v) { return radii[u] + radii[v]; };

    std::vector<bool> placed(s.vertex_count, false);
    std::vector<bool> tri_done(s.triangle_count(), false);

    const auto& t0 = s.triangles[0];
    out.centers[t0[0]] = {0.0, 0.0};
    out.centers[t0[1]] = {len(t0[0], t0[1]), 0.0};
    out.centers[t0[2]] = detail::third_point(out.centers[t0[0]], out.centers[t0[1]],
                                             len(t0[0], t0[2]), len(t0[1], t0[2]), +1.0);
    placed[t0[0]] = placed[t0[1]] = placed[t0[2]] = true;
    tri_done[0] = true;

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int t = queue.front();
        queue.pop_front();
        for (int i = 0; i < 3; ++i) {
            const int e = s.triangle_edges[t][i];
            const auto& inc = s.edge_triangles[e];
            const int other = inc[0] == t ? inc[1] : inc[0];
            if (other < 0 || tri_done[other]) continue;
            tri_done[other] = true;
            queue.push_back(other);
            // vertex of `other` not on the shared edge
            const auto [eu, ev] = s.edges[e];
            int w = -1;
            for (int v : s.triangles[other])
                if (v != eu && v != ev) w = v;
            if (placed[w]) continue;
            // slot i of t is the edge opposite local vertex i, so this is
            // the placed vertex across the shared edge
            const int opposite = s.triangles[t][i];
            const auto& P = out.centers[eu];
            const auto& Q = out.centers[ev];
            const auto& O = out.centers[opposite];
            const double cross = (Q[0] - P[0]) * (O[1] - P[1]) - (Q[1] - P[1]) * (O[0] - P[0]);
            out.centers[w] =
                detail::third_point(P, Q, len(eu, w), len(ev, w), cross > 0.0 ? -1.0 : +1.0);
            placed[w] = true;
        }
    }

    for (int e = 0; e < s.edge_count(); ++e) {
        const auto [u, v] = s.edges[e];
        const double d = std::hypot(out.centers[u][0] - out.centers[v][0],
                                    out.centers[u][1] - out.centers[v][1]);
        out.max_tangency_residual =
            std::max(out.max_tangency_residual, std::abs(d - len(u, v)));
    }
    return out;
}

/**
 * Complete a Euclidean circle packing from boundary radii and prescribed
 * interior k_h targets (flat by default), then lay out the tangent
 * circles. Raises LayoutInconsistent when the layout cannot close up,
 * which happens exactly when nonzero curvature targets are combined with
 * a planar layout.
 */
inline PackingLayout packing_complete_and_layout(
    const Surface& s, const std::vector<double>& boundary_radii, double h = 0.0,
    const std::optional<std::vector<double>>& targets = std::nullopt,
    const SolveOptions& options = {})
{
    ProblemSpec problem;
    problem.surface = &s;
    problem.geometry = Geometry::Euclidean;
    problem.h = h;
    problem.flavor = TotalFlavor::UPacking;
    problem.boundary_data = boundary_radii;
    problem.targets =
        targets ? *targets : std::vector<double>(s.interior_vertices.size(), 0.0);
    SolveReport report = solve(problem, options);

    PackingLayout out = layout_packing(s, report.packing->radii);
    out.report = std::move(report);
    if (out.max_tangency_residual > 1e-6)
        throw LayoutInconsistent("tangency residual exceeds 1e-6; layout needs k_0 = 0");
    return out;
}

}  // namespace polycurv
