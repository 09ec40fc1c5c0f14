#include <catch2/catch_amalgamated.hpp>

#include "polycurv/polygon.hpp"

using namespace polycurv;
using Catch::Matchers::WithinAbs;

TEST_CASE("regular hexagon")
{
    const PolygonSolution sol =
        cyclic_polygon_solve({std::vector<double>(6, 1.0), Geometry::Euclidean});
    REQUIRE(sol.diagonals.size() == 3);
    CHECK_THAT(sol.diagonals[0], WithinAbs(std::sqrt(3.0), 1e-8));
    CHECK_THAT(sol.diagonals[1], WithinAbs(2.0, 1e-8));
    CHECK_THAT(sol.diagonals[2], WithinAbs(std::sqrt(3.0), 1e-8));
    CHECK_THAT(sol.circumradius, WithinAbs(1.0, 1e-8));
    CHECK(sol.center_inside);
}

TEST_CASE("unit square")
{
    const PolygonSolution sol =
        cyclic_polygon_solve({std::vector<double>(4, 1.0), Geometry::Euclidean});
    REQUIRE(sol.diagonals.size() == 1);
    CHECK_THAT(sol.diagonals[0], WithinAbs(std::sqrt(2.0), 1e-8));
    CHECK_THAT(sol.circumradius, WithinAbs(std::sqrt(0.5), 1e-8));
}

TEST_CASE("polygon inequality violations")
{
    CHECK_THROWS_AS(cyclic_polygon_solve({{3.0, 1.0, 1.0, 1.0}, Geometry::Euclidean}),
                    NoCyclicPolygon);
    CHECK_THROWS_AS(cyclic_polygon_solve({{1.0, 1.0}, Geometry::Euclidean}),
                    NoCyclicPolygon);
    CHECK_THROWS_AS(cyclic_polygon_solve({{1.0, -1.0, 1.0}, Geometry::Euclidean}),
                    NoCyclicPolygon);
    CHECK_THROWS_AS(cyclic_polygon_solve({{1.0, 1.0, 1.0}, Geometry::Spherical}),
                    UnsupportedGeometry);
}

TEST_CASE("obtuse triangles put the center outside")
{
    const PolygonSolution sol = cyclic_polygon_solve({{2.0, 1.2, 1.1}, Geometry::Euclidean});
    CHECK_FALSE(sol.center_inside);
    // a triangle with sides a, b, c has circumradius abc / (4 area)
    const double a = 2.0, b = 1.2, c = 1.1;
    const double s = 0.5 * (a + b + c);
    const double area = std::sqrt(s * (s - a) * (s - b) * (s - c));
    CHECK_THAT(sol.circumradius, WithinAbs(a * b * c / (4.0 * area), 1e-9));
    for (int k = 0; k < 3; ++k)
        CHECK_THAT(polygon_vertex_distance(sol, Geometry::Euclidean, k, (k + 1) % 3),
                   WithinAbs(std::vector<double>{a, b, c}[k], 1e-9));
}

TEST_CASE("random cyclic polygons round trip in both geometries")
{
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
            const int n = rng.uniform_int(4, 12);
            const CyclicPolygonOracle oracle = random_cyclic_polygon(rng, n, g);
            const PolygonSolution sol = cyclic_polygon_solve({oracle.sides, g});
            REQUIRE(sol.diagonals.size() == oracle.fan_diagonals.size());
            for (std::size_t i = 0; i < sol.diagonals.size(); ++i)
                CHECK_THAT(sol.diagonals[i], WithinAbs(oracle.fan_diagonals[i], 1e-8));
            CHECK_THAT(sol.circumradius, WithinAbs(oracle.circumradius, 1e-8));
            // the emitted coordinates reproduce the sides
            for (int k = 0; k < n; ++k)
                CHECK_THAT(polygon_vertex_distance(sol, g, k, (k + 1) % n),
                           WithinAbs(oracle.sides[k], 1e-8));
        }
    }
}

TEST_CASE("alternating-diagonal hexagon agrees with the fan solve")
{
    // same hexagon, two triangulations: the fan solve fixes the metric, and
    // the alternating triangulation of the same vertices carries vanishing
    // psi_0 on its own diagonals as well
    Rng rng(5);
    const CyclicPolygonOracle oracle = random_cyclic_polygon(rng, 6, Geometry::Euclidean);
    const Surface alt = build_surface(6, {{1, 3, 5}, {1, 2, 3}, {3, 4, 5}, {5, 0, 1}});
    PolyhedralMetric m;
    m.geometry = Geometry::Euclidean;
    m.lengths.resize(alt.edge_count());
    for (int k = 0; k < 6; ++k) m.lengths[alt.edge_id(k, (k + 1) % 6)] = oracle.sides[k];
    const auto chord = [&](int i, int j) {
        double acc = 0.0;
        for (int q = i; q != j; q = (q + 1) % 6) acc += oracle.central_angles[q];
        return chord_length(Geometry::Euclidean, oracle.circumradius, acc);
    };
    m.lengths[alt.edge_id(1, 3)] = chord(1, 3);
    m.lengths[alt.edge_id(3, 5)] = chord(3, 5);
    m.lengths[alt.edge_id(1, 5)] = chord(1, 5);
    REQUIRE(validate_metric(alt, m).empty());
    for (double v : psi_h(alt, m, 0.0).values) CHECK_THAT(v, WithinAbs(0.0, 1e-10));
    // and the fan solve reproduces this hexagon's diagonals
    const PolygonSolution sol = cyclic_polygon_solve({oracle.sides, Geometry::Euclidean});
    CHECK_THAT(sol.circumradius, WithinAbs(oracle.circumradius, 1e-8));
}

TEST_CASE("triangles need no interior solve")
{
    const PolygonSolution sol = cyclic_polygon_solve({{1.0, 1.0, 1.0}, Geometry::Euclidean});
    CHECK(sol.diagonals.empty());
    CHECK_THAT(sol.circumradius, WithinAbs(1.0 / std::sqrt(3.0), 1e-10));
    CHECK(sol.report.converged);
}
