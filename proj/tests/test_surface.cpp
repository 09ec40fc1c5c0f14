#include <catch2/catch_amalgamated.hpp>

#include "polycurv/curvature.hpp"
#include "polycurv/generators.hpp"
#include "polycurv/surface.hpp"

using namespace polycurv;

TEST_CASE("hexagon fan combinatorics")
{
    const Surface s = hexagon_fan();
    CHECK(s.vertex_count == 7);
    CHECK(s.triangle_count() == 6);
    CHECK(s.boundary_edges.size() == 6);
    CHECK(s.interior_edges.size() == 6);
    CHECK_FALSE(s.vertex_is_boundary[0]);
    for (int v = 1; v < 7; ++v) CHECK(s.vertex_is_boundary[v]);
    for (int c : s.triangle_class) CHECK(c == 2);
    // the interior edges are exactly the spokes
    for (int e : s.interior_edges) CHECK(s.edges[e].first == 0);
}

TEST_CASE("single triangle and shared edge")
{
    const Surface tri = single_triangle();
    CHECK(tri.boundary_edges.size() == 3);
    CHECK(tri.triangle_class[0] == 0);

    const Surface two = two_triangle_strip();
    CHECK(two.boundary_edges.size() == 4);
    CHECK(two.interior_edges.size() == 1);
    CHECK(two.edges[two.interior_edges[0]] == std::make_pair(1, 2));
    CHECK(two.triangle_class[0] == 1);
    CHECK(two.triangle_class[1] == 1);
}

TEST_CASE("build errors")
{
    // three triangles on one edge
    CHECK_THROWS_AS(build_surface(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), NonManifoldEdge);
    // two islands
    CHECK_THROWS_AS(build_surface(6, {{0, 1, 2}, {3, 4, 5}}), Disconnected);
    // tetrahedron is closed
    CHECK_THROWS_AS(build_surface(4, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}),
                    ClosedSurface);
    CHECK_THROWS_AS(build_surface(3, {{0, 1, 3}}), BadIndex);
    CHECK_THROWS_AS(build_surface(3, {{0, 1, 1}}), BadIndex);
    CHECK_THROWS_AS(build_surface(3, {{0, 1, 2}, {2, 1, 0}}), BadIndex);  // duplicate
    CHECK_THROWS_AS(build_surface(4, {{0, 1, 2}}), BadIndex);             // isolated vertex
}

TEST_CASE("stripped surfaces")
{
    CHECK(is_stripped(hexagon_fan()));
    CHECK(is_stripped(single_triangle()));
    CHECK(is_stripped(annulus_strip(5)));
    CHECK_FALSE(is_stripped(two_ring_hexagonal().surface));
}

TEST_CASE("edge handshake and rebuild determinism")
{
    Rng rng(19);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 18);
    const Surface fan = hexagon_fan();
    const Surface ann = annulus_strip(7);
    for (const Surface* s : {&disk.surface, &fan, &ann}) {
        const int b = static_cast<int>(s->boundary_edges.size());
        const int i = static_cast<int>(s->interior_edges.size());
        CHECK(b + 2 * i == 3 * s->triangle_count());
        const Surface rebuilt = build_surface(s->vertex_count, s->triangles);
        CHECK(rebuilt.edges == s->edges);
        CHECK(rebuilt.edge_is_boundary == s->edge_is_boundary);
        CHECK(rebuilt.triangle_class == s->triangle_class);
    }
}

TEST_CASE("two-ring patch has an interior ring")
{
    const EmbeddedMesh m = two_ring_hexagonal();
    CHECK(m.surface.vertex_count == 19);
    CHECK(m.surface.triangle_count() == 24);
    CHECK(m.surface.interior_vertices.size() == 7);
    CHECK(m.surface.boundary_vertices.size() == 12);
    // the lattice metric is unit on every edge
    const PolyhedralMetric metric = m.metric(Geometry::Euclidean);
    for (double l : metric.lengths) CHECK_THAT(l, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("validate_metric")
{
    const Surface fan = hexagon_fan();
    PolyhedralMetric unit{std::vector<double>(fan.edge_count(), 1.0), Geometry::Euclidean};
    CHECK(validate_metric(fan, unit).empty());

    const Surface tri = single_triangle();
    PolyhedralMetric bad{{1.0, 1.0, 2.0}, Geometry::Euclidean};
    CHECK(validate_metric(tri, bad) == std::vector<int>{0});

    PolyhedralMetric sph{{2.5, 2.5, 2.5}, Geometry::Spherical};
    CHECK(validate_metric(tri, sph) == std::vector<int>{0});

    PolyhedralMetric missing{{1.0, 1.0}, Geometry::Euclidean};
    CHECK_THROWS_AS(validate_metric(tri, missing), MissingEdgeLength);
}

TEST_CASE("metric_from_map and induced packings")
{
    const Surface tri = single_triangle();
    std::map<std::pair<int, int>, double> lengths{{{0, 1}, 1.0}, {{0, 2}, 1.1}, {{1, 2}, 0.9}};
    const PolyhedralMetric m = metric_from_map(tri, lengths, Geometry::Euclidean);
    CHECK(m.lengths[tri.edge_id(1, 2)] == 0.9);
    lengths.erase({1, 2});
    CHECK_THROWS_AS(metric_from_map(tri, lengths, Geometry::Euclidean), MissingEdgeLength);

    Rng rng(23);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 16);
    CirclePackingMetric pack;
    pack.geometry = Geometry::Hyperbolic;
    pack.radii.resize(disk.surface.vertex_count);
    for (double& r : pack.radii) r = rng.uniform(0.2, 2.0);
    const PolyhedralMetric induced = induced_metric(disk.surface, pack);
    CHECK(validate_metric(disk.surface, induced).empty());
}

TEST_CASE("delaunay disks look like disks")
{
    Rng rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const EmbeddedMesh disk = random_delaunay_disk(rng, 20);
        const Surface& s = disk.surface;
        CHECK(s.triangle_count() >= 20);
        // Euler characteristic of a disk
        CHECK(s.vertex_count - s.edge_count() + s.triangle_count() == 1);
        CHECK(validate_metric(s, disk.metric(Geometry::Euclidean)).empty());
        // the distance metric of a Delaunay triangulation is intrinsically
        // Delaunay: psi_0 >= 0 on every interior edge
        CHECK(is_delaunay(s, disk.metric(Geometry::Euclidean)));
    }
}
