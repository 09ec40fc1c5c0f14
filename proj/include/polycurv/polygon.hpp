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
#include <vector>

#include "polycurv/generators.hpp"
#include "polycurv/solver.hpp"

namespace polycurv {

/** Side lengths of a polygon in cyclic order. */
struct PolygonSpec {
    std::vector<double> sides;
    Geometry geometry = Geometry::Euclidean;  // Euclidean or hyperbolic
};

struct PolygonSolution {
    Surface surface;                 // the fan triangulation
    std::vector<double> diagonals;   // lengths of (0, k), k = 2..n-2
    double circumradius = 0.0;
    bool center_inside = true;
    /** Vertex coordinates: plane (Euclidean) or Poincare disk with the
     *  circumcenter at the origin (hyperbolic). */
    std::vector<std::array<double, 2>> vertices;
    SolveReport report;
};

namespace detail {

/** Central angle subtended by a chord of length s at circumradius R. */
inline double central_angle(Geometry geometry, double s, double R)
{
    if (geometry == Geometry::Euclidean) {
        const double x = std::min(1.0, s / (2.0 * R));
        return 2.0 * std::asin(x);
    }
    const double ch = std::cosh(R), sh = std::sinh(R);
    const double c = std::max(-1.0, std::min(1.0, (ch * ch - std::cosh(s)) / (sh * sh)));
    return std::acos(c);
}

struct Circumradius {
    double R;
    bool center_inside;
};

/**
 * Recover the circumradius from the side lengths by bisection on the
 * central-angle closure: sum = 2 pi when the center lies inside the
 * polygon; otherwise the longest side's angle balances the rest.
 */
inline Circumradius circumradius_from_sides(Geometry geometry, const std::vector<double>& sides)
{
    const double smax = *std::max_element(sides.begin(), sides.end());
    const double rmin = 0.5 * smax;  // chord <= 2R in both geometries
    const auto angle_sum = [&](double R) {
        double sum = 0.0;
        for (double s : sides) sum += central_angle(geometry, s, R);
        return sum;
    };
    const double at_min = angle_sum(rmin * (1.0 + 1e-14));
    if (at_min >= 2 * kPi) {
        // center inside: angle_sum decreases from at_min to 0
        double lo = rmin, hi = std::max(1.0, 2.0 * rmin);
        int guard = 0;
        while (angle_sum(hi) > 2 * kPi) {
            hi *= 2.0;
            if (++guard > 200) throw NoCyclicPolygon("circumradius bracketing failed");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (angle_sum(mid) > 2 * kPi ? lo : hi) = mid;
        }
        return {0.5 * (lo + hi), true};
    }
    // center outside (or on the longest chord): the longest side's angle
    // equals the sum of the others
    const std::size_t longest =
        std::max_element(sides.begin(), sides.end()) - sides.begin();
    const auto balance = [&](double R) {
        double rest = 0.0;
        for (std::size_t i = 0; i < sides.size(); ++i)
            if (i != longest) rest += central_angle(geometry, sides[i], R);
        return central_angle(geometry, smax, R) - rest;
    };
    double lo = rmin * (1.0 + 1e-14), hi = std::max(1.0, 2.0 * rmin);
    if (balance(lo) < 0.0) throw NoCyclicPolygon("no circumradius satisfies the closure");
    int guard = 0;
    while (balance(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw NoCyclicPolygon("circumradius bracketing failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (balance(mid) > 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), false};
}

}  // namespace detail

/**
 * Reconstruct the unique cyclic polygon with the given side lengths:
 * build the fan triangulation, solve for the diagonals with vanishing
 * phi (Euclidean) or psi (hyperbolic) targets, then recover circumradius
 * and vertex coordinates as post-processing.
 */
inline PolygonSolution cyclic_polygon_solve(const PolygonSpec& spec, double h = 0.0,
                                            const SolveOptions& options = {})
{
    const int n = static_cast<int>(spec.sides.size());
    if (n < 3) throw NoCyclicPolygon("a polygon needs at least three sides");
    if (spec.geometry == Geometry::Spherical)
        throw UnsupportedGeometry("cyclic polygons are Euclidean or hyperbolic");
    double total = 0.0;
    for (double s : spec.sides) {
        if (!(s > 0.0)) throw NoCyclicPolygon("side lengths must be positive");
        total += s;
    }
    for (double s : spec.sides)
        if (!(s < total - s)) throw NoCyclicPolygon("one side dominates the others");

    PolygonSolution out;
    out.surface = polygon_fan(n);
    const Surface& s = out.surface;

    // sides as boundary data, in canonical boundary-edge order
    std::vector<double> boundary(s.boundary_edges.size());
    for (std::size_t i = 0; i < s.boundary_edges.size(); ++i) {
        const auto [a, b] = s.edges[s.boundary_edges[i]];
        boundary[i] = (b == a + 1) ? spec.sides[a] : spec.sides[n - 1];  // (0, n-1) wraps
    }

    ProblemSpec problem;
    problem.surface = &s;
    problem.geometry = spec.geometry;
    problem.h = h;
    problem.flavor = spec.geometry == Geometry::Euclidean ? TotalFlavor::WPhi
                                                          : TotalFlavor::WPsiHyperbolic;
    problem.boundary_data = boundary;
    problem.targets.assign(s.interior_edges.size(), 0.0);
    try {
        out.report = solve(problem, options);
    } catch (const MaxIterations&) {
        throw NoCyclicPolygon("diagonal solve did not converge");
    } catch (const LineSearchFailure&) {
        throw NoCyclicPolygon("diagonal solve did not converge");
    }
    if (out.report.no_geometric_solution)
        throw NoCyclicPolygon("no geometric metric realizes vanishing diagonal curvature");

    out.diagonals.resize(s.interior_edges.size());
    for (int k = 2; k + 1 < n; ++k)
        out.diagonals[k - 2] = out.report.metric->lengths[s.edge_id(0, k)];

    const auto cr = detail::circumradius_from_sides(spec.geometry, spec.sides);
    out.circumradius = cr.R;
    out.center_inside = cr.center_inside;

    // walk the rim: every side advances by its central angle, except that
    // with the center outside the longest side walks back
    int longest = 0;
    for (int i = 1; i < n; ++i)
        if (spec.sides[i] > spec.sides[longest]) longest = i;
    double phi = 0.0;
    const double rho = spec.geometry == Geometry::Euclidean ? cr.R : std::tanh(0.5 * cr.R);
    out.vertices.resize(n);
    for (int k = 0; k < n; ++k) {
        out.vertices[k] = {rho * std::cos(phi), rho * std::sin(phi)};
        const double step = detail::central_angle(spec.geometry, spec.sides[k], cr.R);
        phi += (!cr.center_inside && k == longest) ? -step : step;
    }
    return out;
}

/** Chordal distance of two points placed on the circumcircle. */
inline double polygon_vertex_distance(const PolygonSolution& sol, Geometry geometry, int a,
                                      int b)
{
    const auto& p = sol.vertices[a];
    const auto& q = sol.vertices[b];
    if (geometry == Geometry::Euclidean) return std::hypot(p[0] - q[0], p[1] - q[1]);
    // Poincare disk distance
    const double num = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
    const double pp = 1.0 - (p[0] * p[0] + p[1] * p[1]);
    const double qq = 1.0 - (q[0] * q[0] + q[1] * q[1]);
    return std::acosh(1.0 + 2.0 * num / (pp * qq));
}

}  // namespace polycurv
