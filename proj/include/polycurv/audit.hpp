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

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycurv/curvature.hpp"
#include "polycurv/energy.hpp"
#include "polycurv/generators.hpp"

namespace polycurv {

struct AuditOptions {
    std::uint64_t seed = 1;
    int samples = 1000;
    /** Test-only hook: negates an entry of matrix_P inside the
     *  definiteness check, to prove the harness can fail. */
    bool inject_matrix_p_fault = false;
};

struct AuditCheck {
    std::string name;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct AuditReport {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<AuditCheck> checks;
    bool all_passed = true;

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["seed"] = seed;
        j["samples"] = samples;
        j["all_passed"] = all_passed;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json cj;
            cj["name"] = c.name;
            cj["worst_residual"] = c.worst_residual;
            cj["tolerance"] = c.tolerance;
            cj["passed"] = c.passed;
            j["checks"].push_back(cj);
        }
        return j;
    }
};

namespace audit_detail {

inline const std::vector<double>& h_grid()
{
    static const std::vector<double> g{-2.0, -1.0, 0.0, 0.5, 1.0, 2.0};
    return g;
}

/** scaled error |a - b| / max(1, |a|) */
inline double scaled_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

/** Gradient integrand value of a metric energy, per slot. */
inline double form_coefficient(MetricEnergy f, double h, const std::array<double, 3>& l, int i)
{
    const Geometry geom = metric_energy_geometry(f);
    const TriangleAngles th = angles_from_lengths(TriangleLengths{l, geom});
    switch (f) {
        case MetricEnergy::EPhi:
            return power_integral(PowerKernel::Sin, h, 0.5 * kPi, th.theta[i]) /
                   std::pow(l[i], h + 1.0);
        case MetricEnergy::SPhi:
            return power_integral(PowerKernel::Sin, h, 0.5 * kPi, th.theta[i]) /
                   std::pow(std::sin(l[i]), h + 1.0);
        case MetricEnergy::HPhiGamma:
            return power_integral(PowerKernel::Sin, h, 0.5 * kPi, th.theta[i]) /
                   std::pow(std::sinh(l[i]), h + 1.0);
        case MetricEnergy::HPsi: {
            const double a = 0.5 * (th.theta[i] - th.theta[(i + 1) % 3] - th.theta[(i + 2) % 3]);
            return power_integral(PowerKernel::Cos, h, 0.0, a) /
                   std::pow(std::tanh(0.5 * l[i]), h + 1.0);
        }
    }
    return 0.0;
}

/** Coefficient of the packing one-forms, per slot. */
inline double packing_form_coefficient(Geometry geom, double h, const std::array<double, 3>& r,
                                       int i)
{
    const TriangleAngles th = angles_from_lengths(packing_lengths(r, geom));
    const double I = power_integral(PowerKernel::TanHalf, h, 0.5 * kPi, th.theta[i]);
    return geom == Geometry::Euclidean ? I * std::pow(r[i], h - 1.0)
                                       : I * std::pow(std::sinh(r[i]), h - 1.0);
}

}  // namespace audit_detail

/**
 * Randomized audit of the library's mathematical invariants. Identical
 * seeds produce identical reports. Residuals are defined so that a check
 * passes iff worst_residual <= tolerance (several tolerances are 0: the
 * residual is a signed margin that must stay nonpositive).
 */
inline AuditReport run_audit(const AuditOptions& options = {})
{
    AuditReport report;
    report.seed = options.seed;
    report.samples = options.samples;
    const Rng base(options.seed);
    const int n = std::max(10, options.samples);

    const auto add = [&](const std::string& name, double worst, double tol) {
        AuditCheck c{name, worst, tol, worst <= tol};
        report.checks.push_back(c);
        report.all_passed = report.all_passed && c.passed;
    };

    // --- angle sums -------------------------------------------------------
    {
        Rng rng = base.fork(1);
        double we = 0.0, wh = -kInf, ws = -kInf;
        for (int i = 0; i < n; ++i) {
            const auto te = random_triangle(rng, Geometry::Euclidean);
            we = std::max(we, std::abs(angles_from_lengths(te).sum() - kPi));
            const auto thy = random_triangle(rng, Geometry::Hyperbolic);
            wh = std::max(wh, angles_from_lengths(thy).sum() - kPi);
            const auto ts = random_triangle(rng, Geometry::Spherical);
            ws = std::max(ws, kPi - angles_from_lengths(ts).sum());
        }
        add("euclidean-angle-sum", we, 1e-12);
        add("hyperbolic-angle-sum-below-pi", wh, 0.0);
        add("spherical-angle-sum-above-pi", ws, 0.0);
    }

    // --- angle Jacobian vs finite differences ------------------------------
    {
        Rng rng = base.fork(2);
        double worst = 0.0;
        const double step = 1e-6;
        for (int i = 0; i < n / 2; ++i) {
            for (Geometry g :
                 {Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical}) {
                TriangleLengths t = random_triangle(rng, g);
                const Eigen::Matrix3d J = angle_jacobian(t);
                for (int col = 0; col < 3; ++col) {
                    TriangleLengths tp = t, tm = t;
                    tp.l[col] += step;
                    tm.l[col] -= step;
                    const auto ap = angles_from_lengths(tp), am = angles_from_lengths(tm);
                    for (int row = 0; row < 3; ++row) {
                        const double fd = (ap.theta[row] - am.theta[row]) / (2 * step);
                        worst = std::max(worst, audit_detail::scaled_err(J(row, col), fd));
                    }
                }
            }
        }
        add("angle-jacobian-vs-fd", worst, 1e-6);
    }

    // --- weighted derivative symmetry in the aux coordinates ---------------
    {
        Rng rng = base.fork(3);
        double worst = 0.0;
        for (int i = 0; i < n / 2; ++i) {
            for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
                const TriangleLengths t = random_triangle(rng, g);
                const AuxCoords aux = aux_coords(t);
                const Eigen::Matrix3d J = angle_jacobian(t);
                Eigen::Matrix3d B;  // dl_m/dr_j = 1 iff m != j
                B.setOnes();
                B.diagonal().setZero();
                const Eigen::Matrix3d dth_dr = J * B;
                for (int a = 0; a < 3; ++a) {
                    for (int b = a + 1; b < 3; ++b) {
                        const double sa = g == Geometry::Euclidean ? aux.r[a]
                                                                   : std::sinh(aux.r[a]);
                        const double sb = g == Geometry::Euclidean ? aux.r[b]
                                                                   : std::sinh(aux.r[b]);
                        worst = std::max(
                            worst, std::abs(dth_dr(a, b) / sa - dth_dr(b, a) / sb));
                    }
                }
            }
        }
        add("aux-derivative-symmetry", worst, 1e-8);
    }

    // --- hyperbolic alpha-derivative proportionality ------------------------
    {
        Rng rng = base.fork(4);
        double worst = 0.0;
        for (int i = 0; i < n / 2; ++i) {
            const TriangleLengths t = random_triangle(rng, Geometry::Hyperbolic);
            const Eigen::Matrix3d J = angle_jacobian(t);
            const double S =
                std::cosh(t.l[0]) + std::cosh(t.l[1]) + std::cosh(t.l[2]) + 1.0;
            std::vector<double> cs;
            for (int a = 0; a < 3; ++a) {
                const int aj = (a + 1) % 3, ak = (a + 2) % 3;
                for (int x = 0; x < 3; ++x) {
                    const double num = J(a, x) - J(aj, x) - J(ak, x);
                    double bracket;
                    if (x == a) {
                        bracket = std::tanh(0.5 * t.l[a]) * S;
                    } else {
                        const int other = 3 - a - x;
                        bracket = (1.0 / std::tanh(0.5 * t.l[x])) *
                                  (-std::cosh(t.l[a]) - std::cosh(t.l[x]) +
                                   std::cosh(t.l[other]) + 1.0);
                    }
                    cs.push_back(num / bracket);
                }
            }
            for (double c : cs) {
                if (!(c > 0.0)) worst = std::max(worst, 1.0);
                worst = std::max(worst, std::abs(c - cs[0]) / std::abs(cs[0]));
            }
        }
        add("alpha-derivative-proportionality", worst, 1e-8);
    }

    // --- matrix M: kernel and (semi)definiteness ---------------------------
    {
        Rng rng = base.fork(5);
        double wker = 0.0, wpsd = -kInf, wpd = -kInf;
        for (int i = 0; i < n; ++i) {
            const TriangleLengths te = random_triangle(rng, Geometry::Euclidean);
            const Eigen::Matrix3d M = matrix_M(angles_from_lengths(te));
            const Eigen::Vector3d l(te.l[0], te.l[1], te.l[2]);
            wker = std::max(wker, (M * l).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(M);
            wpsd = std::max(wpsd, -eig.eigenvalues().minCoeff());
            const TriangleLengths ts = random_triangle(rng, Geometry::Spherical);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigs(
                matrix_M(angles_from_lengths(ts)));
            wpd = std::max(wpd, -eigs.eigenvalues().minCoeff());
        }
        add("matrix-m-euclidean-kernel", wker, 1e-10);
        add("matrix-m-euclidean-psd", wpsd, 1e-12);
        add("matrix-m-spherical-pd", wpd, 0.0);
    }

    // --- matrix P definiteness ---------------------------------------------
    {
        Rng rng = base.fork(6);
        double worst = -kInf;
        for (int i = 0; i < n; ++i) {
            const TriangleLengths t = random_triangle(rng, Geometry::Hyperbolic);
            Eigen::Matrix3d P = matrix_P(t);
            if (options.inject_matrix_p_fault) P(0, 0) = -P(0, 0);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(P);
            worst = std::max(worst, -eig.eigenvalues().minCoeff());
        }
        add("matrix-p-positive-definite", worst, 0.0);
    }

    // --- tangent law index independence -------------------------------------
    {
        Rng rng = base.fork(7);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            for (Geometry g :
                 {Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical}) {
                const TriangleLengths t = random_triangle(rng, g);
                try {
                    tangent_law_invariant(t);
                } catch (const IndexMismatch&) {
                    worst = 1.0;
                }
            }
        }
        add("tangent-law-index-independence", worst, 0.0);
    }

    // --- extension continuity of the angles ---------------------------------
    {
        Rng rng = base.fork(8);
        double worst = 0.0;
        for (int i = 0; i < n / 10 + 5; ++i) {
            for (Geometry g :
                 {Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical}) {
                const TriangleLengths t0 = random_triangle(rng, g, 5e-2);
                std::array<double, 3> l1 = t0.l;
                // push one length past the triangle inequality
                const int which = rng.uniform_int(0, 2);
                l1[which] = t0.l[(which + 1) % 3] + t0.l[(which + 2) % 3] +
                            rng.uniform(0.05, 0.3);
                if (g == Geometry::Spherical && l1[which] >= kPi) continue;
                // bisect the crossing of the boundary
                double lo = 0.0, hi = 1.0;
                const auto at = [&](double s) {
                    std::array<double, 3> l{};
                    for (int q = 0; q < 3; ++q) l[q] = (1 - s) * t0.l[q] + s * l1[q];
                    return l;
                };
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (in_moduli_space(TriangleLengths{at(mid), g}) ? lo : hi) = mid;
                }
                // the angles have square-root modulus of continuity at the
                // crossing, so straddle it at the bisected interval itself
                const auto before = extended_angles(at(lo), g);
                const auto after = extended_angles(at(hi), g);
                for (int q = 0; q < 3; ++q)
                    worst = std::max(worst,
                                     std::abs(before.theta[q] - after.theta[q]));
            }
        }
        add("extension-angle-continuity", worst, 1e-6);
    }

    // --- closedness of the six one-forms ------------------------------------
    {
        Rng rng = base.fork(9);
        double worst = 0.0;
        const double step = 1e-5;
        const int pts = std::max(5, n / 20);
        for (double h : audit_detail::h_grid()) {
            for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                                   MetricEnergy::HPhiGamma}) {
                for (int i = 0; i < pts; ++i) {
                    const auto t = random_triangle(rng, metric_energy_geometry(f), 5e-2);
                    for (int a = 0; a < 3; ++a) {
                        for (int b = a + 1; b < 3; ++b) {
                            auto lp = t.l, lm = t.l;
                            lp[b] += step;
                            lm[b] -= step;
                            const double dab =
                                (audit_detail::form_coefficient(f, h, lp, a) -
                                 audit_detail::form_coefficient(f, h, lm, a)) /
                                (2 * step);
                            lp = t.l;
                            lm = t.l;
                            lp[a] += step;
                            lm[a] -= step;
                            const double dba =
                                (audit_detail::form_coefficient(f, h, lp, b) -
                                 audit_detail::form_coefficient(f, h, lm, b)) /
                                (2 * step);
                            worst = std::max(worst, std::abs(dab - dba));
                        }
                    }
                }
                // packing forms
                for (int i = 0; f == MetricEnergy::EPhi && i < pts; ++i) {
                    for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
                        const auto r = random_radii(rng);
                        for (int a = 0; a < 3; ++a) {
                            for (int b = a + 1; b < 3; ++b) {
                                auto rp = r, rm = r;
                                rp[b] += step;
                                rm[b] -= step;
                                const double dab =
                                    (audit_detail::packing_form_coefficient(g, h, rp, a) -
                                     audit_detail::packing_form_coefficient(g, h, rm, a)) /
                                    (2 * step);
                                rp = r;
                                rm = r;
                                rp[a] += step;
                                rm[a] -= step;
                                const double dba =
                                    (audit_detail::packing_form_coefficient(g, h, rp, b) -
                                     audit_detail::packing_form_coefficient(g, h, rm, b)) /
                                    (2 * step);
                                worst = std::max(worst, std::abs(dab - dba));
                            }
                        }
                    }
                }
            }
        }
        add("one-form-closedness", worst, 1e-6);
    }

    // --- Hessian factorizations vs finite differences -----------------------
    {
        Rng rng = base.fork(10);
        double worst = 0.0;
        const int pts = std::max(5, n / 20);
        for (int i = 0; i < pts; ++i) {
            const double h = audit_detail::h_grid()[i % audit_detail::h_grid().size()];
            for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                                   MetricEnergy::HPhiGamma}) {
                const Geometry g = metric_energy_geometry(f);
                const ChartKind ck =
                    f == MetricEnergy::HPhiGamma ? ChartKind::Gamma : ChartKind::Xi;
                const ChartMap chart(ck, h, g);
                const auto t = random_triangle(rng, g, 5e-2);
                std::array<double, 3> u{};
                for (int q = 0; q < 3; ++q) u[q] = chart.forward(t.l[q]);
                const auto grad_at = [&](const std::array<double, 3>& uu) {
                    std::array<double, 3> l{};
                    for (int q = 0; q < 3; ++q) l[q] = chart.inverse(uu[q]);
                    return detail::eval_metric_triangle(f, h, l).grad;
                };
                const Eigen::Matrix3d H = detail::eval_metric_triangle(f, h, t.l).hess;
                const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
                for (int col = 0; col < 3; ++col) {
                    const double du = 1e-6 * std::max(1.0, std::abs(u[col]));
                    auto up = u, um = u;
                    up[col] += du;
                    um[col] -= du;
                    const auto gp = grad_at(up), gm = grad_at(um);
                    for (int row = 0; row < 3; ++row) {
                        const double fd = (gp[row] - gm[row]) / (2 * du);
                        worst = std::max(worst, std::abs(H(row, col) - fd) / scale);
                    }
                }
            }
            // packing Hessians
            for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
                const ChartMap chart(ChartKind::G, h, g);
                const auto r = random_radii(rng);
                std::array<double, 3> q{};
                for (int x = 0; x < 3; ++x) q[x] = chart.forward(r[x]);
                const auto grad_at = [&](const std::array<double, 3>& qq) {
                    std::array<double, 3> rr{};
                    for (int x = 0; x < 3; ++x) rr[x] = chart.inverse(qq[x]);
                    return detail::eval_packing_triangle(g, h, rr).grad;
                };
                const Eigen::Matrix3d H = detail::eval_packing_triangle(g, h, r).hess;
                const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
                for (int col = 0; col < 3; ++col) {
                    const double dq = 1e-6 * std::max(1.0, std::abs(q[col]));
                    auto qp = q, qm = q;
                    qp[col] += dq;
                    qm[col] -= dq;
                    const auto gp = grad_at(qp), gm = grad_at(qm);
                    for (int row = 0; row < 3; ++row) {
                        const double fd = (gp[row] - gm[row]) / (2 * dq);
                        worst = std::max(worst, std::abs(H(row, col) - fd) / scale);
                    }
                }
            }
        }
        add("hessian-factorization-vs-fd", worst, 1e-5);
    }

    // --- gradient continuity across the moduli boundary ---------------------
    {
        Rng rng = base.fork(11);
        double worst = 0.0;
        const int pts = std::max(5, n / 20);
        const std::vector<double> hs{0.0, 0.5, 1.0};
        for (int i = 0; i < pts; ++i) {
            for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                                   MetricEnergy::HPhiGamma}) {
                const double h = hs[i % hs.size()];
                const Geometry g = metric_energy_geometry(f);
                const auto t0 = random_triangle(rng, g, 5e-2);
                std::array<double, 3> l1 = t0.l;
                const int which = rng.uniform_int(0, 2);
                l1[which] =
                    t0.l[(which + 1) % 3] + t0.l[(which + 2) % 3] + rng.uniform(0.05, 0.2);
                if (g == Geometry::Spherical && l1[which] >= kPi) continue;
                const auto at = [&](double s) {
                    std::array<double, 3> l{};
                    for (int q = 0; q < 3; ++q) l[q] = (1 - s) * t0.l[q] + s * l1[q];
                    return l;
                };
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (in_moduli_space(TriangleLengths{at(mid), g}) ? lo : hi) = mid;
                }
                const auto ga = detail::eval_metric_triangle(f, h, at(lo));
                const auto gb = detail::eval_metric_triangle(f, h, at(hi));
                for (int q = 0; q < 3; ++q)
                    worst = std::max(worst, std::abs(ga.grad[q] - gb.grad[q]));
            }
        }
        add("extension-gradient-continuity", worst, 1e-6);
    }

    // --- midpoint convexity of extended energies ----------------------------
    {
        Rng rng = base.fork(12);
        double worst = -kInf;
        const int pts = std::max(5, n / 20);
        const std::vector<double> hs{-0.5, 0.0, 1.0};
        for (int i = 0; i < pts; ++i) {
            for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                                   MetricEnergy::HPhiGamma}) {
                const double h = hs[i % hs.size()];
                const Geometry g = metric_energy_geometry(f);
                const ChartKind ck =
                    f == MetricEnergy::HPhiGamma ? ChartKind::Gamma : ChartKind::Xi;
                const ChartMap chart(ck, h, g);
                const auto t0 = random_triangle(rng, g, 5e-2);
                std::array<double, 3> l1 = t0.l;
                const int which = rng.uniform_int(0, 2);
                l1[which] =
                    t0.l[(which + 1) % 3] + t0.l[(which + 2) % 3] + rng.uniform(0.05, 0.2);
                if (g == Geometry::Spherical && l1[which] >= kPi) continue;
                Eigen::Vector3d u0, u1;
                for (int q = 0; q < 3; ++q) {
                    u0(q) = chart.forward(t0.l[q]);
                    u1(q) = chart.forward(l1[q]);
                }
                const auto grad_dot = [&](double s) {
                    std::array<double, 3> l{};
                    for (int q = 0; q < 3; ++q) {
                        const double uq = (1 - s) * u0(q) + s * u1(q);
                        l[q] = chart.inverse(uq);
                    }
                    const auto ev = detail::eval_metric_triangle(f, h, l);
                    double dot = 0.0;
                    for (int q = 0; q < 3; ++q) dot += ev.grad[q] * (u1(q) - u0(q));
                    return dot;
                };
                const double e_half = integrate_adaptive(grad_dot, 0.0, 0.5, 1e-12);
                const double e_full = e_half + integrate_adaptive(grad_dot, 0.5, 1.0, 1e-12);
                worst = std::max(worst, e_half - 0.5 * e_full);
            }
        }
        add("extension-midpoint-convexity", worst, 1e-9);
    }

    // --- path independence of line-integrated energies ----------------------
    {
        Rng rng = base.fork(13);
        double worst = 0.0;
        const int pts = std::max(3, n / 50);
        for (int i = 0; i < pts; ++i) {
            for (MetricEnergy f : {MetricEnergy::EPhi, MetricEnergy::HPsi, MetricEnergy::SPhi,
                                   MetricEnergy::HPhiGamma}) {
                const double h = audit_detail::h_grid()[i % audit_detail::h_grid().size()];
                const Geometry g = metric_energy_geometry(f);
                const ChartKind ck =
                    f == MetricEnergy::HPhiGamma ? ChartKind::Gamma : ChartKind::Xi;
                const ChartMap chart(ck, h, g);
                const auto ta = random_triangle(rng, g, 5e-2);
                const auto tb = random_triangle(rng, g, 5e-2);
                const auto tw = random_triangle(rng, g, 5e-2);
                Eigen::Vector3d ua, ub, uw;
                for (int q = 0; q < 3; ++q) {
                    ua(q) = chart.forward(ta.l[q]);
                    ub(q) = chart.forward(tb.l[q]);
                    uw(q) = chart.forward(tw.l[q]);
                }
                const auto leg = [&](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
                    const auto fdot = [&](double s) {
                        std::array<double, 3> l{};
                        for (int q = 0; q < 3; ++q)
                            l[q] = chart.inverse((1 - s) * x(q) + s * y(q));
                        const auto ev = detail::eval_metric_triangle(f, h, l);
                        double dot = 0.0;
                        for (int q = 0; q < 3; ++q) dot += ev.grad[q] * (y(q) - x(q));
                        return dot;
                    };
                    return integrate_adaptive(fdot, 0.0, 1.0, 1e-12);
                };
                worst = std::max(worst, std::abs(leg(ua, ub) - (leg(ua, uw) + leg(uw, ub))));
            }
        }
        add("energy-path-independence", worst, 1e-8);
    }

    // --- curvature identities ------------------------------------------------
    {
        Rng rng = base.fork(14);
        double wpp = 0.0, wk0 = 0.0, wstar = 0.0, wquad = 0.0, wmono = -kInf;
        const int pts = std::max(3, n / 20);
        const EmbeddedMesh ring = two_ring_hexagonal();
        const EmbeddedMesh fan = hexagon_fan_embedded();
        for (int i = 0; i < pts; ++i) {
            // Euclidean phi == psi for all h
            const PolyhedralMetric base_m = ring.metric(Geometry::Euclidean);
            const PolyhedralMetric m = perturb_metric(rng, ring.surface, base_m, 0.05);
            for (double h : audit_detail::h_grid()) {
                const auto p = phi_h(ring.surface, m, h);
                const auto q = psi_h(ring.surface, m, h);
                for (std::size_t e = 0; e < p.values.size(); ++e)
                    wpp = std::max(wpp, std::abs(p.values[e] - q.values[e]));
            }
            // k_0 equals the angle defect
            CirclePackingMetric pack;
            pack.geometry = i % 2 == 0 ? Geometry::Euclidean : Geometry::Hyperbolic;
            pack.radii.resize(ring.surface.vertex_count);
            for (double& r : pack.radii) r = rng.uniform(0.4, 1.6);
            const auto kv = k_h(ring.surface, pack, 0.0);
            const PolyhedralMetric ind = induced_metric(ring.surface, pack);
            const auto stars = vertex_stars(ring.surface);
            for (std::size_t vi = 0; vi < ring.surface.interior_vertices.size(); ++vi) {
                const int v = ring.surface.interior_vertices[vi];
                double sum = 0.0;
                for (int t : stars[v]) sum += angle_at_vertex(ring.surface, ind, t, v);
                wk0 = std::max(wk0, std::abs(kv.values[vi] - (2 * kPi - sum)));
            }
            // star identity at the two-ring center
            wstar = std::max(wstar,
                             std::abs(vertex_edge_identity_residual(ring.surface, m, 0)));
            // psi_0 vanishes on diagonals of cyclic quadrilaterals
            for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
                const auto quad = random_cyclic_polygon(rng, 4, g);
                const Surface qs = polygon_fan(4);
                PolyhedralMetric qm;
                qm.geometry = g;
                qm.lengths.resize(qs.edge_count());
                for (int k = 0; k < 4; ++k)
                    qm.lengths[qs.edge_id(k, (k + 1) % 4)] = quad.sides[k];
                qm.lengths[qs.edge_id(0, 2)] = quad.fan_diagonals[0];
                const auto psi = psi_h(qs, qm, 0.0);
                wquad = std::max(wquad, std::abs(psi.values[0]));
            }
            // phi_h decreases as a facing angle grows
            {
                const double h = audit_detail::h_grid()[i % audit_detail::h_grid().size()];
                const double a1 = rng.uniform(0.3, 1.2);
                const double a2 = a1 + rng.uniform(0.05, 0.8);
                const double other = rng.uniform(0.3, 2.0);
                const double f1 = integral_kernel(IntegralKind::SinPow, h, a1, 0.5 * kPi) +
                                  integral_kernel(IntegralKind::SinPow, h, other, 0.5 * kPi);
                const double f2 = integral_kernel(IntegralKind::SinPow, h, a2, 0.5 * kPi) +
                                  integral_kernel(IntegralKind::SinPow, h, other, 0.5 * kPi);
                wmono = std::max(wmono, f2 - f1);  // must be negative
            }
            (void)fan;
        }
        add("euclidean-phi-equals-psi", wpp, 1e-10);
        add("k0-angle-defect", wk0, 1e-12);
        add("star-identity", wstar, 1e-10);
        add("cyclic-quad-psi0", wquad, 1e-9);
        add("phi-monotone-in-facing-angle", wmono, 0.0);
    }

    return report;
}

}  // namespace polycurv
