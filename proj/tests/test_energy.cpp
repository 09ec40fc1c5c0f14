#include <catch2/catch_amalgamated.hpp>

#include "polycurv/energy.hpp"
#include "polycurv/generators.hpp"

using namespace polycurv;
using Catch::Matchers::WithinAbs;

TEST_CASE("Euclidean F at the equilateral point")
{
    // xi_0(1) = 0, so u = (0,0,0)
    const std::vector<double> u{0.0, 0.0, 0.0};
    const TriangleEnergyEval ev = triangle_energy_F(u, {}, FFlavor::EPhi, 3, 0.0);
    REQUIRE(ev.grad.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK_THAT(ev.grad(i), WithinAbs(-kPi / 6, 1e-13));
    CHECK_FALSE(ev.extension);
    // kernel along (1,1,1), two equal positive eigenvalues
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ev.hess);
    CHECK_THAT(eig.eigenvalues()(0), WithinAbs(0.0, 1e-12));
    CHECK(eig.eigenvalues()(1) > 0.1);
    CHECK_THAT(eig.eigenvalues()(1), WithinAbs(eig.eigenvalues()(2), 1e-10));
    CHECK((ev.hess * Eigen::Vector3d(1, 1, 1)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("extension region evaluation")
{
    const ChartMap xi(ChartKind::Xi, 0.0, Geometry::Euclidean);
    const std::vector<double> u{xi.forward(1.0), xi.forward(1.0), xi.forward(2.1)};
    const TriangleEnergyEval ev = triangle_energy_F(u, {}, FFlavor::EPhi, 3, 0.0);
    CHECK(ev.extension);
    CHECK_THAT(ev.grad(0), WithinAbs(-kPi / 2, 1e-14));  // integral pi/2 -> 0
    CHECK_THAT(ev.grad(1), WithinAbs(-kPi / 2, 1e-14));
    CHECK_THAT(ev.grad(2), WithinAbs(kPi / 2, 1e-14));   // integral pi/2 -> pi
    CHECK(ev.hess.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hyperbolic psi energy at the equilateral point")
{
    const ChartMap xi(ChartKind::Xi, 0.0, Geometry::Hyperbolic);
    const std::vector<double> u(3, xi.forward(1.0));
    const TriangleEnergyEval ev = triangle_energy_F(u, {}, FFlavor::HPsi, 3, 0.0);
    for (int i = 0; i < 3; ++i)
        CHECK_THAT(ev.grad(i), WithinAbs(-0.45939893608901368, 1e-13));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ev.hess);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("gamma energy")
{
    const ChartMap gam(ChartKind::Gamma, 0.0, Geometry::Hyperbolic);
    // s = 1: single variable facing theta_0, others fixed at 1
    const std::vector<double> u{gam.forward(1.2)};
    const std::vector<double> fixed{1.0, 1.0};
    const TriangleEnergyEval ev = triangle_energy_G(u, fixed, 1, 0.0);
    const TriangleAngles th =
        angles_from_lengths({{1.2, 1.0, 1.0}, Geometry::Hyperbolic});
    CHECK_THAT(ev.grad(0), WithinAbs(th.theta[0] - kPi / 2, 1e-12));
    CHECK(ev.hess(0, 0) > 0.0);

    // s = 2 is strictly convex
    const std::vector<double> u2{gam.forward(1.1), gam.forward(0.9)};
    const std::vector<double> fixed2{1.0};
    const TriangleEnergyEval ev2 = triangle_energy_G(u2, fixed2, 2, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ev2.hess);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);

    CHECK_THROWS_AS(triangle_energy_G(std::vector<double>(3, 0.0), {}, 3, 0.0),
                    UnsupportedArity);

    // extension region: zero Hessian
    const std::vector<double> ue{gam.forward(2.6)};
    const TriangleEnergyEval eve = triangle_energy_G(ue, fixed, 1, 0.0);
    CHECK(eve.extension);
    CHECK(eve.hess(0, 0) == 0.0);
}

TEST_CASE("packing energy")
{
    const ChartMap g(ChartKind::G, 0.0, Geometry::Euclidean);
    const std::vector<double> q(3, g.forward(1.0));
    const TriangleEnergyEval ev = triangle_energy_C(q, {}, Geometry::Euclidean, 3, 0.0);
    for (int i = 0; i < 3; ++i) CHECK_THAT(ev.grad(i), WithinAbs(kPi / 6, 1e-13));
    // h = 0 Euclidean: row sums vanish (uniform scaling direction is flat)
    for (int i = 0; i < 3; ++i)
        CHECK_THAT(ev.hess.row(i).sum(), WithinAbs(0.0, 1e-12));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ev.hess);
    CHECK(eig.eigenvalues().minCoeff() > -1e-13);

    const ChartMap gh(ChartKind::G, 0.0, Geometry::Hyperbolic);
    const std::vector<double> qh(3, gh.forward(1.0));
    const TriangleEnergyEval evh = triangle_energy_C(qh, {}, Geometry::Hyperbolic, 3, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigh(evh.hess);
    CHECK(eigh.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("per-triangle Hessians match finite differences of the gradients")
{
    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
        const double h = std::vector<double>{-2, -1, 0, 0.5, 1, 2}[i % 6];
        for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                               MetricEnergy::HPhiGamma}) {
            const Geometry g = metric_energy_geometry(f);
            const ChartMap chart(f == MetricEnergy::HPhiGamma ? ChartKind::Gamma
                                                              : ChartKind::Xi,
                                 h, g);
            const TriangleLengths t = random_triangle(rng, g, 5e-2);
            std::array<double, 3> u{};
            for (int q = 0; q < 3; ++q) u[q] = chart.forward(t.l[q]);
            const Eigen::Matrix3d H = detail::eval_metric_triangle(f, h, t.l).hess;
            CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-10);
            const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
            for (int col = 0; col < 3; ++col) {
                const double du = 1e-6 * std::max(1.0, std::abs(u[col]));
                auto up = u, um = u;
                up[col] += du;
                um[col] -= du;
                std::array<double, 3> lp{}, lm{};
                for (int q = 0; q < 3; ++q) {
                    lp[q] = chart.inverse(up[q]);
                    lm[q] = chart.inverse(um[q]);
                }
                const auto gp = detail::eval_metric_triangle(f, h, lp).grad;
                const auto gm = detail::eval_metric_triangle(f, h, lm).grad;
                for (int row = 0; row < 3; ++row)
                    CHECK_THAT(H(row, col),
                               WithinAbs((gp[row] - gm[row]) / (2 * du), 1e-5 * scale));
            }
        }
    }
}

TEST_CASE("assembled gradient matches the curvature module")
{
    const Surface fan = hexagon_fan();
    // unit fan, W_phi, h = 0: every spoke carries phi_0 = pi/3
    EnergyModel model(fan, TotalFlavor::WPhi, Geometry::Euclidean, 0.0,
                      std::vector<double>(6, 1.0));
    const Eigen::VectorXd u = model.u_from_values(std::vector<double>(6, 1.0));
    const AssembledSystem sys = model.assemble(u);
    for (int i = 0; i < 6; ++i) CHECK_THAT(sys.curvature(i), WithinAbs(kPi / 3, 1e-13));

    Rng rng(7);
    const EmbeddedMesh disk = random_delaunay_disk(rng, 16);
    for (double h : {-1.0, 0.0, 0.7}) {
        for (auto [flavor, geom] :
             {std::pair{TotalFlavor::WPhi, Geometry::Euclidean},
              std::pair{TotalFlavor::WPsiHyperbolic, Geometry::Hyperbolic},
              std::pair{TotalFlavor::WPhi, Geometry::Spherical}}) {
            const double scale = geom == Geometry::Spherical ? 0.5 : 1.0;
            const PolyhedralMetric m = disk.metric(geom, scale);
            std::vector<double> boundary, interior;
            for (int e : disk.surface.boundary_edges) boundary.push_back(m.lengths[e]);
            for (int e : disk.surface.interior_edges) interior.push_back(m.lengths[e]);
            EnergyModel mod(disk.surface, flavor, geom, h, boundary);
            const AssembledSystem sys2 = mod.assemble(mod.u_from_values(interior));
            const auto curv = flavor == TotalFlavor::WPsiHyperbolic
                                  ? psi_h(disk.surface, m, h)
                                  : phi_h(disk.surface, m, h);
            for (int i = 0; i < mod.variable_count(); ++i)
                CHECK_THAT(sys2.curvature(i), WithinAbs(curv.values[i], 1e-10));
        }
    }
}

TEST_CASE("assembled packing gradient carries the combinatorial shift")
{
    const Surface fan = hexagon_fan();
    EnergyModel model(fan, TotalFlavor::UPacking, Geometry::Euclidean, 0.0,
                      std::vector<double>(6, 1.0));
    const Eigen::VectorXd u = model.u_from_values(std::vector<double>(1, 1.0));
    const AssembledSystem sys = model.assemble(u);
    // k_0(center) = 0 and (2 - 6/2) pi = -pi, so the gradient reads +pi
    CHECK_THAT(sys.curvature(0), WithinAbs(kPi, 1e-13));
    CHECK_THAT(model.user_curvature(sys.raw_gradient)(0), WithinAbs(0.0, 1e-13));
}

TEST_CASE("energy differences are path independent")
{
    const Surface fan = hexagon_fan();
    EnergyModel model(fan, TotalFlavor::WPhi, Geometry::Euclidean, 0.0,
                      std::vector<double>(6, 1.0));
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd a(6), b(6), w(6);
        for (int i = 0; i < 6; ++i) {
            a(i) = model.chart().forward(rng.uniform(0.6, 1.6));
            b(i) = model.chart().forward(rng.uniform(0.6, 1.6));
            w(i) = model.chart().forward(rng.uniform(0.6, 1.6));
        }
        const double direct = model.energy_difference(a, b, 1e-12);
        const double via = model.energy_difference(a, w, 1e-12) +
                           model.energy_difference(w, b, 1e-12);
        CHECK_THAT(direct, WithinAbs(via, 1e-8));
    }
}

TEST_CASE("flavor validation")
{
    const Surface fan = hexagon_fan();
    const std::vector<double> b6(6, 1.0);
    CHECK_THROWS_AS(
        EnergyModel(fan, TotalFlavor::WPsiHyperbolic, Geometry::Euclidean, 0.0, b6),
        InfeasibleSpec);
    CHECK_THROWS_AS(EnergyModel(fan, TotalFlavor::WPhi, Geometry::Hyperbolic, 0.0, b6),
                    InfeasibleSpec);
    CHECK_THROWS_AS(EnergyModel(fan, TotalFlavor::UPacking, Geometry::Spherical, 0.0,
                                std::vector<double>(6, 1.0)),
                    InfeasibleSpec);
    // V needs a stripped surface
    const EmbeddedMesh ring = two_ring_hexagonal();
    CHECK_THROWS_AS(EnergyModel(ring.surface, TotalFlavor::VPhiStripped,
                                Geometry::Hyperbolic, 0.0,
                                std::vector<double>(ring.surface.boundary_edges.size(), 1.0)),
                    InfeasibleSpec);
    // boundary size mismatch
    CHECK_THROWS_AS(EnergyModel(fan, TotalFlavor::WPhi, Geometry::Euclidean, 0.0,
                                std::vector<double>(5, 1.0)),
                    InfeasibleSpec);
}

TEST_CASE("midpoint convexity across the extension boundary")
{
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        const double h = std::vector<double>{-0.5, 0.0, 1.0}[i % 3];
        for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                               MetricEnergy::HPhiGamma}) {
            const Geometry g = metric_energy_geometry(f);
            const ChartMap chart(f == MetricEnergy::HPhiGamma ? ChartKind::Gamma
                                                              : ChartKind::Xi,
                                 h, g);
            const TriangleLengths t0 = random_triangle(rng, g, 5e-2);
            std::array<double, 3> l1 = t0.l;
            const int which = rng.uniform_int(0, 2);
            l1[which] =
                t0.l[(which + 1) % 3] + t0.l[(which + 2) % 3] + rng.uniform(0.05, 0.25);
            if (g == Geometry::Spherical && l1[which] >= kPi) continue;
            Eigen::Vector3d u0, u1;
            for (int q = 0; q < 3; ++q) {
                u0(q) = chart.forward(t0.l[q]);
                u1(q) = chart.forward(l1[q]);
            }
            const auto grad_dot = [&](double s) {
                std::array<double, 3> l{};
                for (int q = 0; q < 3; ++q) l[q] = chart.inverse((1 - s) * u0(q) + s * u1(q));
                const auto ev = detail::eval_metric_triangle(f, h, l);
                double dot = 0.0;
                for (int q = 0; q < 3; ++q) dot += ev.grad[q] * (u1(q) - u0(q));
                return dot;
            };
            const double e_half = integrate_adaptive(grad_dot, 0.0, 0.5, 1e-12);
            const double e_full = e_half + integrate_adaptive(grad_dot, 0.5, 1.0, 1e-12);
            CHECK(e_half <= 0.5 * e_full + 1e-9);
        }
    }
}

TEST_CASE("u outside the chart image is a domain error")
{
    // xi_1 maps onto (-inf, 0); positive u is outside
    CHECK_THROWS_AS(triangle_energy_F(std::vector<double>{0.5, -1.0, -1.0}, {},
                                      FFlavor::EPhi, 3, 1.0),
                    OutOfDomain);
    CHECK_THROWS_AS(triangle_energy_F(std::vector<double>(4, 0.0), {}, FFlavor::EPhi, 3, 0.0),
                    UnsupportedArity);
}
