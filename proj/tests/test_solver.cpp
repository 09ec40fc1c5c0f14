#include <catch2/catch_amalgamated.hpp>

#include "polycurv/generators.hpp"
#include "polycurv/solver.hpp"

using namespace polycurv;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> boundary_lengths(const Surface& s, const PolyhedralMetric& m)
{
    std::vector<double> out;
    for (int e : s.boundary_edges) out.push_back(m.lengths[e]);
    return out;
}

std::vector<double> interior_lengths(const Surface& s, const PolyhedralMetric& m)
{
    std::vector<double> out;
    for (int e : s.interior_edges) out.push_back(m.lengths[e]);
    return out;
}

double max_interior_error(const Surface& s, const PolyhedralMetric& a,
                          const PolyhedralMetric& b)
{
    double err = 0.0;
    for (int e : s.interior_edges)
        err = std::max(err, std::abs(a.lengths[e] - b.lengths[e]));
    return err;
}

}  // namespace

TEST_CASE("a critical point converges immediately")
{
    const EmbeddedMesh fan = hexagon_fan_embedded();
    const PolyhedralMetric m = fan.metric(Geometry::Euclidean);
    ProblemSpec p;
    p.surface = &fan.surface;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data = boundary_lengths(fan.surface, m);
    p.targets = phi_h(fan.surface, m, 0.0).values;
    p.initial_guess = interior_lengths(fan.surface, m);
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK(r.iterations <= 1);
    CHECK(max_interior_error(fan.surface, *r.metric, m) < 1e-12);
}

TEST_CASE("hexagon fan recovery from a displaced start")
{
    const Surface fan = hexagon_fan();
    ProblemSpec p;
    p.surface = &fan;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data.assign(6, 1.0);
    p.targets.assign(6, kPi / 3);
    p.initial_guess = std::vector<double>(6, 1.3);
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK(r.descent_path_stayed_admissible);
    for (int e : fan.interior_edges)
        CHECK_THAT(r.metric->lengths[e], WithinAbs(1.0, 1e-8));
    for (double c : r.achieved_curvature) CHECK_THAT(c, WithinAbs(kPi / 3, 1e-10));
}

TEST_CASE("packing recovery on the fan")
{
    const Surface fan = hexagon_fan();
    ProblemSpec p;
    p.surface = &fan;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::UPacking;
    p.boundary_data.assign(6, 1.0);
    p.targets.assign(1, 0.0);
    p.initial_guess = std::vector<double>(1, 1.7);
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK_THAT(r.packing->radii[0], WithinAbs(1.0, 1e-10));
}

TEST_CASE("self-inversion with perturbed starts across flavors and h")
{
    Rng rng(101);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 18);
    const Surface& s = disk.surface;
    struct Pairing {
        Geometry geometry;
        TotalFlavor flavor;
        double scale;
    };
    for (const Pairing& c :
         {Pairing{Geometry::Euclidean, TotalFlavor::WPhi, 1.0},
          Pairing{Geometry::Hyperbolic, TotalFlavor::WPsiHyperbolic, 1.0},
          Pairing{Geometry::Spherical, TotalFlavor::WPhi, 0.5}}) {
        for (double h : {-2.0, 0.0, 1.0}) {
            const PolyhedralMetric m = disk.metric(c.geometry, c.scale);
            ProblemSpec p;
            p.surface = &s;
            p.geometry = c.geometry;
            p.h = h;
            p.flavor = c.flavor;
            p.boundary_data = boundary_lengths(s, m);
            p.targets = c.flavor == TotalFlavor::WPsiHyperbolic ? psi_h(s, m, h).values
                                                                : phi_h(s, m, h).values;
            std::vector<double> guess = interior_lengths(s, m);
            for (double& g : guess) g *= 1.0 + 0.18 * rng.uniform(-1.0, 1.0);
            p.initial_guess = guess;
            const SolveReport r = solve(p);
            CHECK(r.converged);
            CHECK(max_interior_error(s, *r.metric, m) < 1e-8);
            // cross-module oracle: the curvature module's independent
            // evaluation of the solved metric reproduces the targets
            const auto achieved = c.flavor == TotalFlavor::WPsiHyperbolic
                                      ? psi_h(s, *r.metric, h)
                                      : phi_h(s, *r.metric, h);
            for (std::size_t i = 0; i < achieved.values.size(); ++i)
                CHECK_THAT(achieved.values[i], WithinAbs(p.targets[i], 1e-9));
        }
    }
}

TEST_CASE("solution is independent of the initial guess")
{
    Rng rng(55);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 14);
    const Surface& s = disk.surface;
    for (auto [geom, flavor] : {std::pair{Geometry::Euclidean, TotalFlavor::WPhi},
                                std::pair{Geometry::Hyperbolic, TotalFlavor::WPsiHyperbolic}}) {
        const PolyhedralMetric m = disk.metric(geom);
        ProblemSpec p;
        p.surface = &s;
        p.geometry = geom;
        p.flavor = flavor;
        p.boundary_data = boundary_lengths(s, m);
        p.targets = flavor == TotalFlavor::WPsiHyperbolic ? psi_h(s, m, 0.0).values
                                                          : phi_h(s, m, 0.0).values;
        std::vector<std::vector<double>> solutions;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> guess = interior_lengths(s, m);
            for (double& g : guess) g *= rng.uniform(0.85, 1.18);
            p.initial_guess = guess;
            const SolveReport r = solve(p);
            REQUIRE(r.converged);
            solutions.push_back(r.interior_values);
        }
        for (std::size_t t = 1; t < solutions.size(); ++t)
            for (std::size_t i = 0; i < solutions[0].size(); ++i)
                CHECK_THAT(solutions[t][i], WithinAbs(solutions[0][i], 1e-7));
    }
}

TEST_CASE("shifted energy decreases across accepted iterates")
{
    const Surface fan = hexagon_fan();
    EnergyModel model(fan, TotalFlavor::WPhi, Geometry::Euclidean, 0.0,
                      std::vector<double>(6, 1.0));
    ProblemSpec p;
    p.surface = &fan;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data.assign(6, 1.0);
    p.targets.assign(6, kPi / 3);
    p.initial_guess = std::vector<double>(6, 1.45);
    std::vector<Eigen::VectorXd> iterates;
    SolveOptions opt;
    opt.iterate_callback = [&](const Eigen::VectorXd& u) { iterates.push_back(u); };
    const SolveReport r = solve(p, opt);
    CHECK(r.converged);
    REQUIRE(iterates.size() >= 2);
    const Eigen::VectorXd a_raw = model.raw_targets(p.targets);
    for (std::size_t i = 1; i < iterates.size(); ++i) {
        const double d_energy = model.energy_difference(iterates[i - 1], iterates[i]) -
                                a_raw.dot(iterates[i] - iterates[i - 1]);
        CHECK(d_energy <= 1e-12);
    }
}

TEST_CASE("spherical iterates respect the chart box")
{
    Rng rng(77);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 12);
    const Surface& s = disk.surface;
    const double h = -1.0;  // bounded spherical chart image
    const PolyhedralMetric m = disk.metric(Geometry::Spherical, 0.5);
    ProblemSpec p;
    p.surface = &s;
    p.geometry = Geometry::Spherical;
    p.h = h;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data = boundary_lengths(s, m);
    p.targets = phi_h(s, m, h).values;
    std::vector<double> guess = interior_lengths(s, m);
    for (double& g : guess) g *= rng.uniform(0.9, 1.12);
    p.initial_guess = guess;
    const ChartMap chart(ChartKind::Xi, h, Geometry::Spherical);
    const Interval box = chart.image();
    SolveOptions opt;
    int visited = 0;
    opt.iterate_callback = [&](const Eigen::VectorXd& u) {
        ++visited;
        for (int i = 0; i < u.size(); ++i) {
            CHECK(u(i) > box.lo);
            CHECK(u(i) < box.hi);
            const double l = chart.inverse(u(i));
            CHECK(l > 0.0);
            CHECK(l < kPi);
        }
    };
    const SolveReport r = solve(p, opt);
    CHECK(r.converged);
    CHECK(visited >= 1);
    CHECK(max_interior_error(s, *r.metric, m) < 1e-8);
}

TEST_CASE("unattainable targets converge into the extension with a flag")
{
    // two glued triangles with unit cross sides: phi_0 of the shared edge
    // ranges over (-pi, pi); the infimum -pi is attained only by the
    // degenerate configuration, so the minimizer sits in the extension
    const Surface s = two_triangle_strip();
    ProblemSpec p;
    p.surface = &s;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data.assign(4, 1.0);
    p.targets.assign(1, -kPi);
    p.initial_guess = std::vector<double>(1, 1.2);
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK_FALSE(r.descent_path_stayed_admissible);
    CHECK(r.no_geometric_solution);
    CHECK(r.interior_values[0] >= 2.0);
}

TEST_CASE("validation errors")
{
    const Surface fan = hexagon_fan();
    ProblemSpec p;
    p.surface = &fan;
    p.geometry = Geometry::Hyperbolic;
    p.flavor = TotalFlavor::WPhi;  // not covered for hyperbolic metrics
    p.boundary_data.assign(6, 1.0);
    p.targets.assign(6, 0.0);
    CHECK_THROWS_AS(solve(p), InfeasibleSpec);

    p.flavor = TotalFlavor::WPsiHyperbolic;
    p.targets.assign(5, 0.0);  // wrong size
    CHECK_THROWS_AS(solve(p), InfeasibleSpec);

    p.targets.assign(6, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(solve(p), InfeasibleSpec);
}

TEST_CASE("rigidity probe")
{
    Rng rng(31);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 14);
    const Surface& s = disk.surface;
    const PolyhedralMetric m = disk.metric(Geometry::Euclidean);

    const RigidityVerdict same = rigidity_probe(s, TotalFlavor::WPhi, 0.0, m, m);
    CHECK(same.boundary_match);
    CHECK(same.curvature_match);
    CHECK(same.interior_match);
    CHECK_FALSE(same.counterexample_candidate);

    // equal boundary, different interior: curvatures must differ
    for (int trial = 0; trial < 25; ++trial) {
        PolyhedralMetric other = perturb_metric(rng, s, m, 0.10);
        for (int e : s.boundary_edges) other.lengths[e] = m.lengths[e];
        if (validate_metric(s, other).empty() == false) continue;
        const RigidityVerdict v = rigidity_probe(s, TotalFlavor::WPhi, 0.0, m, other);
        CHECK(v.boundary_match);
        if (!v.interior_match) {
            CHECK_FALSE(v.curvature_match);
            CHECK_FALSE(v.counterexample_candidate);
        }
    }

    // scaling changes the boundary: the probe reports the mismatch
    PolyhedralMetric doubled = m;
    for (double& l : doubled.lengths) l *= 2.0;
    const RigidityVerdict sc = rigidity_probe(s, TotalFlavor::WPhi, 0.0, m, doubled);
    CHECK_FALSE(sc.boundary_match);
    CHECK_FALSE(sc.counterexample_candidate);

    // packing probe
    CirclePackingMetric pa{std::vector<double>(s.vertex_count, 1.0), Geometry::Euclidean};
    CirclePackingMetric pb = pa;
    pb.radii[s.interior_vertices[0]] = 1.2;
    const RigidityVerdict pv = rigidity_probe(s, 0.0, pa, pb);
    CHECK(pv.boundary_match);
    CHECK_FALSE(pv.curvature_match);
    CHECK_FALSE(pv.counterexample_candidate);
}

TEST_CASE("default initial guess covers the annulus V problem")
{
    const EmbeddedMesh ann = annulus_strip_embedded(8, 1.0, 1.8);
    const PolyhedralMetric m = ann.metric(Geometry::Hyperbolic);
    ProblemSpec p;
    p.surface = &ann.surface;
    p.geometry = Geometry::Hyperbolic;
    p.flavor = TotalFlavor::VPhiStripped;
    p.boundary_data = boundary_lengths(ann.surface, m);
    p.targets = phi_h_stripped(ann.surface, m, 0.0).values;
    // no initial guess: the default mean-boundary start must work
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK(max_interior_error(ann.surface, *r.metric, m) < 1e-8);
}

TEST_CASE("conflicting boundary data converges on the extension")
{
    // triangle A needs the shared edge below 2, triangle B needs it above 4;
    // no interior length is geometric, yet the extended problem has a
    // well-defined minimizer
    const Surface s = two_triangle_strip();
    ProblemSpec p;
    p.surface = &s;
    p.geometry = Geometry::Euclidean;
    p.flavor = TotalFlavor::WPhi;
    p.boundary_data.resize(4);
    for (std::size_t i = 0; i < s.boundary_edges.size(); ++i) {
        const auto [a, b] = s.edges[s.boundary_edges[i]];
        p.boundary_data[i] = (a == 1 && b == 3) ? 5.0 : 1.0;
    }
    p.targets.assign(1, 0.0);
    const SolveReport r = solve(p);
    CHECK(r.converged);
    CHECK(r.no_geometric_solution);
    CHECK_FALSE(r.descent_path_stayed_admissible);
    CHECK_THAT(r.achieved_curvature[0], WithinAbs(0.0, 1e-9));
}
