#include <catch2/catch_amalgamated.hpp>

#include "polycurv/charts.hpp"

using namespace polycurv;
using Catch::Matchers::WithinAbs;

TEST_CASE("closed-form chart values")
{
    const ChartMap xi0(ChartKind::Xi, 0.0, Geometry::Euclidean);
    CHECK(xi0.forward(1.0) == 0.0);
    CHECK_THAT(xi0.inverse(0.0), WithinAbs(1.0, 1e-15));

    const ChartMap xi1(ChartKind::Xi, 1.0, Geometry::Euclidean);
    CHECK_THAT(xi1.forward(2.0), WithinAbs(-0.5, 1e-15));

    const ChartMap g2(ChartKind::G, 2.0, Geometry::Euclidean);
    CHECK_THAT(g2.forward(3.0), WithinAbs(4.5, 1e-15));

    for (double h : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
        const ChartMap gam(ChartKind::Gamma, h, Geometry::Hyperbolic);
        CHECK_THAT(gam.forward(1.0), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("quadrature chart values against frozen integrals")
{
    CHECK_THAT(ChartMap(ChartKind::Xi, 0.5, Geometry::Hyperbolic).forward(1.7),
               WithinAbs(1.6066769619368736, 1e-11));
    CHECK_THAT(ChartMap(ChartKind::Xi, 0.5, Geometry::Spherical).forward(0.8),
               WithinAbs(-0.29035421404060512, 1e-11));
    CHECK_THAT(ChartMap(ChartKind::Gamma, 0.5, Geometry::Hyperbolic).forward(1.7),
               WithinAbs(0.31132517934713834, 1e-11));
    CHECK_THAT(ChartMap(ChartKind::G, 0.5, Geometry::Hyperbolic).forward(1.7),
               WithinAbs(0.52716288888789129, 1e-11));
    // h = 0 hyperbolic xi has the closed form 2 ln sinh(t/2) - 2 ln sinh(1/2)
    CHECK_THAT(ChartMap(ChartKind::Xi, 0.0, Geometry::Hyperbolic).forward(1.7),
               WithinAbs(1.2138924994392732, 1e-11));
}

TEST_CASE("round trips")
{
    Rng rng(3);
    for (double h : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        for (int i = 0; i < 30; ++i) {
            const double tE = rng.uniform(0.1, 4.0);
            const ChartMap xiE(ChartKind::Xi, h, Geometry::Euclidean);
            CHECK_THAT(xiE.inverse(xiE.forward(tE)), WithinAbs(tE, 1e-10));
            const ChartMap gE(ChartKind::G, h, Geometry::Euclidean);
            CHECK_THAT(gE.inverse(gE.forward(tE)), WithinAbs(tE, 1e-10));
            const ChartMap xiH(ChartKind::Xi, h, Geometry::Hyperbolic);
            CHECK_THAT(xiH.inverse(xiH.forward(tE)), WithinAbs(tE, 1e-10));
            const ChartMap gam(ChartKind::Gamma, h, Geometry::Hyperbolic);
            CHECK_THAT(gam.inverse(gam.forward(tE)), WithinAbs(tE, 1e-10));
            const ChartMap gH(ChartKind::G, h, Geometry::Hyperbolic);
            CHECK_THAT(gH.inverse(gH.forward(tE)), WithinAbs(tE, 1e-10));
            const double tS = rng.uniform(0.1, 3.0);
            const ChartMap xiS(ChartKind::Xi, h, Geometry::Spherical);
            CHECK_THAT(xiS.inverse(xiS.forward(tS)), WithinAbs(tS, 1e-10));
        }
    }
}

TEST_CASE("derivatives match finite differences and are positive")
{
    Rng rng(5);
    for (double h : {-1.5, 0.0, 0.7, 2.0}) {
        for (int i = 0; i < 20; ++i) {
            const double t = rng.uniform(0.3, 2.5);
            for (auto [kind, geom] :
                 {std::pair{ChartKind::Xi, Geometry::Euclidean},
                  std::pair{ChartKind::Xi, Geometry::Hyperbolic},
                  std::pair{ChartKind::Xi, Geometry::Spherical},
                  std::pair{ChartKind::Gamma, Geometry::Hyperbolic},
                  std::pair{ChartKind::G, Geometry::Euclidean},
                  std::pair{ChartKind::G, Geometry::Hyperbolic}}) {
                if (kind == ChartKind::Xi && geom == Geometry::Spherical && t >= kPi - 0.01)
                    continue;
                const ChartMap chart(kind, h, geom);
                const double d = chart.derivative(t);
                CHECK(d > 0.0);
                const double fd =
                    (chart.forward(t + 1e-6) - chart.forward(t - 1e-6)) / 2e-6;
                CHECK_THAT(d, WithinAbs(fd, 1e-5 * std::max(1.0, std::abs(fd))));
            }
        }
    }
}

TEST_CASE("chart images")
{
    // Euclidean xi: h > 0 maps onto (-inf, 0), h < 0 onto (0, inf)
    const ChartMap xi1(ChartKind::Xi, 1.0, Geometry::Euclidean);
    CHECK(xi1.image().hi == 0.0);
    CHECK(xi1.image().lo == -kInf);
    CHECK_THROWS_AS(xi1.inverse(0.5), OutOfImage);

    const ChartMap xim(ChartKind::Xi, -1.0, Geometry::Euclidean);
    CHECK(xim.image().lo == 0.0);
    CHECK_THROWS_AS(xim.inverse(-0.5), OutOfImage);

    const ChartMap xi0(ChartKind::Xi, 0.0, Geometry::Euclidean);
    CHECK(xi0.image().lo == -kInf);
    CHECK(xi0.image().hi == kInf);

    // gamma at h = 0: image is (-inf, -ln tanh(1/2))
    const ChartMap gam0(ChartKind::Gamma, 0.0, Geometry::Hyperbolic);
    CHECK(gam0.image().lo == -kInf);
    CHECK_THAT(gam0.image().hi, WithinAbs(0.77193683290530473, 1e-10));
    CHECK_THROWS_AS(gam0.inverse(0.8), OutOfImage);
    CHECK_THAT(gam0.inverse(0.7), WithinAbs(gam0.inverse(0.7), 0.0));  // finite

    // spherical xi with h < 0 has a bounded image
    const ChartMap xis(ChartKind::Xi, -2.0, Geometry::Spherical);
    const Interval im = xis.image();
    CHECK(std::isfinite(im.lo));
    CHECK(std::isfinite(im.hi));
    CHECK_THAT(im.lo, WithinAbs(std::cos(1.0) - 1.0, 1e-10));   // int_1^0 sin = cos1 - cos0
    CHECK_THAT(im.hi, WithinAbs(std::cos(1.0) + 1.0, 1e-10));   // int_1^pi sin

    // hyperbolic xi: lower endpoint finite iff h < 0
    CHECK(std::isfinite(ChartMap(ChartKind::Xi, -0.5, Geometry::Hyperbolic).image().lo));
    CHECK(ChartMap(ChartKind::Xi, 0.5, Geometry::Hyperbolic).image().lo == -kInf);
}

TEST_CASE("domain errors")
{
    const ChartMap xis(ChartKind::Xi, 0.0, Geometry::Spherical);
    CHECK_THROWS_AS(xis.forward(3.5), OutOfDomain);
    CHECK_THROWS_AS(xis.forward(-1.0), OutOfDomain);
    CHECK_THROWS_AS(ChartMap(ChartKind::Gamma, 0.0, Geometry::Euclidean),
                    UnsupportedGeometry);
    CHECK_THROWS_AS(ChartMap(ChartKind::G, 0.0, Geometry::Spherical), UnsupportedGeometry);
}

TEST_CASE("monotonicity")
{
    Rng rng(11);
    for (double h : {-1.0, 0.5, 1.5}) {
        const ChartMap gam(ChartKind::Gamma, h, Geometry::Hyperbolic);
        double prev = -kInf;
        for (double t = 0.2; t < 3.0; t += 0.17) {
            const double u = gam.forward(t);
            CHECK(u > prev);
            prev = u;
        }
    }
    (void)rng;
}
