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
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "polycurv/energy.hpp"

namespace polycurv {

/**
 * A prescribed-curvature problem: fixed boundary data plus target
 * curvatures on the interior set. Boundary data is indexed by position in
 * Surface::boundary_edges (lengths) or Surface::boundary_vertices (radii
 * for the packing flavor); targets by position in interior_edges /
 * interior_vertices.
 */
struct ProblemSpec {
    const Surface* surface = nullptr;
    Geometry geometry = Geometry::Euclidean;
    double h = 0.0;
    TotalFlavor flavor = TotalFlavor::WPhi;
    std::vector<double> boundary_data;
    std::vector<double> targets;
    std::optional<std::vector<double>> initial_guess;  // interior lengths / radii
};

struct SolveOptions {
    double tol = 1e-10;            // infinity norm of the shifted gradient
    int max_iterations = 200;
    double backtrack = 0.5;
    double armijo = 1e-4;
    double boundary_fraction = 0.9;  // fraction-to-the-boundary cap in the chart box
    bool project_initial_guess = true;
    /** observer invoked at the start point and every accepted iterate */
    std::function<void(const Eigen::VectorXd&)> iterate_callback;
};

struct SolveReport {
    std::optional<PolyhedralMetric> metric;
    std::optional<CirclePackingMetric> packing;
    std::vector<double> interior_values;  // solved lengths / radii, variable order
    std::vector<double> achieved_curvature;
    int iterations = 0;
    double final_gradient_norm = 0.0;
    bool converged = false;
    bool descent_path_stayed_admissible = true;
    bool no_geometric_solution = false;
};

namespace detail {

/**
 * Move infeasible interior lengths toward the midpoint of their locally
 * feasible interval, sweeping until every triangle is strictly
 * admissible (or the sweep budget runs out; fixed boundary triples can
 * be infeasible beyond repair).
 */
inline std::vector<double> project_feasible_lengths(const EnergyModel& model,
                                                    std::vector<double> interior)
{
    const Surface& s = model.surface();
    const Geometry geom = model.geometry();
    const double margin = 0.02;
    std::vector<double> full = model.combine(interior);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool changed = false;
        for (int t = 0; t < s.triangle_count(); ++t) {
            std::array<double, 3> l{};
            for (int i = 0; i < 3; ++i) l[i] = full[s.triangle_edges[t][i]];
            if (in_moduli_space(TriangleLengths{l, geom}, 1e-9)) continue;
            for (int i = 0; i < 3; ++i) {
                const int e = s.triangle_edges[t][i];
                if (s.edge_is_boundary[e]) continue;
                const double a = l[(i + 1) % 3], b = l[(i + 2) % 3];
                double lo = std::abs(a - b), hi = a + b;
                if (geom == Geometry::Spherical) hi = std::min({hi, kPi, 2 * kPi - a - b});
                if (!(hi > lo)) continue;
                const double w = hi - lo;
                const double clo = lo + margin * w, chi = hi - margin * w;
                if (l[i] < clo || l[i] > chi) {
                    l[i] = std::min(chi, std::max(clo, l[i]));
                    full[e] = l[i];
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    for (std::size_t i = 0; i < s.interior_edges.size(); ++i)
        interior[i] = full[s.interior_edges[i]];
    return interior;
}

inline std::vector<double> default_initial_guess(const EnergyModel& model)
{
    const auto& b = model.boundary_data();
    double mean = 0.0;
    for (double x : b) mean += x;
    mean /= static_cast<double>(b.size());
    if (model.geometry() == Geometry::Spherical) mean = std::min(mean, 0.9 * kPi);
    std::vector<double> interior(model.variable_count(), mean);
    if (!model.is_packing()) interior = project_feasible_lengths(model, interior);
    return interior;
}

/** Newton step with escalating Tikhonov regularization. */
inline Eigen::VectorXd newton_direction(const Eigen::MatrixXd& H, const Eigen::VectorXd& resid)
{
    const int n = static_cast<int>(resid.size());
    const double hnorm = H.cwiseAbs().maxCoeff();
    double lambda = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd Hreg = H;
        if (lambda > 0.0) Hreg += lambda * Eigen::MatrixXd::Identity(n, n);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Hreg);
        if (ldlt.info() == Eigen::Success) {
            Eigen::VectorXd delta = ldlt.solve(-resid);
            if (delta.allFinite() && resid.dot(delta) < 0.0) return delta;
        }
        lambda = lambda == 0.0 ? std::max(1e-10, 1e-8 * hnorm) : lambda * 100.0;
    }
    return -resid;  // steepest descent as a last resort
}

}  // namespace detail

/**
 * Recover the interior metric (or packing radii) whose curvature matches
 * the targets: damped Newton on the convex extended total energy shifted
 * by the targets' linear term, with a fraction-to-the-boundary cap in the
 * chart box and Armijo backtracking on line-integrated energy values.
 *
 * Converged solutions whose final point leaves the moduli space of some
 * triangle are reported with no_geometric_solution = true (the theorems
 * guarantee uniqueness, not existence, for arbitrary targets).
 *
 * Throws MaxIterations / LineSearchFailure when the iteration does not
 * converge, InfeasibleSpec for flavor/geometry mismatches.
 */
inline SolveReport solve(const ProblemSpec& p, const SolveOptions& opt = {})
{
    if (p.surface == nullptr) throw InfeasibleSpec("no surface");
    for (double t : p.targets)
        if (!std::isfinite(t)) throw InfeasibleSpec("targets must be finite");
    EnergyModel model(*p.surface, p.flavor, p.geometry, p.h, p.boundary_data);
    const int n = model.variable_count();
    const Eigen::VectorXd a_raw = model.raw_targets(p.targets);

    std::vector<double> interior0;
    if (p.initial_guess) {
        interior0 = *p.initial_guess;
        if (static_cast<int>(interior0.size()) != n)
            throw InfeasibleSpec("initial guess size mismatch");
        const Interval dom = model.chart().domain();
        for (double v : interior0)
            if (!(v > dom.lo && v < dom.hi)) throw InfeasibleSpec("initial guess outside J");
    } else {
        interior0 = detail::default_initial_guess(model);
    }

    Eigen::VectorXd u = model.u_from_values(interior0);
    AssembledSystem A = model.assemble(u);
    if (!A.finite && opt.project_initial_guess && !model.is_packing()) {
        // un-evaluable start (extension region with h <= -1): repair it,
        // blending toward the uniform default guess if the local sweep
        // cannot untangle conflicting triangles
        interior0 = detail::project_feasible_lengths(model, interior0);
        u = model.u_from_values(interior0);
        A = model.assemble(u);
        if (!A.finite) {
            const std::vector<double> fallback = detail::default_initial_guess(model);
            for (double beta : {0.25, 0.5, 0.75, 1.0}) {
                std::vector<double> blend(interior0.size());
                for (std::size_t i = 0; i < blend.size(); ++i)
                    blend[i] = (1.0 - beta) * interior0[i] + beta * fallback[i];
                blend = detail::project_feasible_lengths(model, blend);
                u = model.u_from_values(blend);
                A = model.assemble(u);
                if (A.finite) break;
            }
        }
    }
    if (!A.finite)
        throw LineSearchFailure("gradient is not finite at the initial point");

    const Interval box = model.box();
    SolveReport report;
    int ls_failures = 0;
    if (opt.iterate_callback) opt.iterate_callback(u);
    for (int it = 0;; ++it) {
        const Eigen::VectorXd resid = A.raw_gradient - a_raw;
        const double gnorm = n == 0 ? 0.0 : resid.lpNorm<Eigen::Infinity>();
        if (gnorm <= opt.tol) {
            report.converged = true;
            report.iterations = it;
            report.final_gradient_norm = gnorm;
            break;
        }
        if (it >= opt.max_iterations)
            throw MaxIterations("no convergence within the iteration budget");

        Eigen::VectorXd delta = detail::newton_direction(A.dense_hessian(n), resid);
        bool accepted = false;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            if (attempt == 1) delta = -resid;  // steepest descent fallback
            // fraction to the boundary of the chart box
            double alpha = 1.0;
            for (int i = 0; i < n; ++i) {
                if (delta(i) > 0.0 && box.hi < kInf)
                    alpha = std::min(alpha, opt.boundary_fraction * (box.hi - u(i)) / delta(i));
                else if (delta(i) < 0.0 && box.lo > -kInf)
                    alpha = std::min(alpha, opt.boundary_fraction * (box.lo - u(i)) / delta(i));
            }
            const double slope = resid.dot(delta);
            while (alpha > 1e-16) {
                const Eigen::VectorXd trial = u + alpha * delta;
                const double dE =
                    model.energy_difference(u, trial) - a_raw.dot(trial - u);
                if (std::isfinite(dE) && dE <= opt.armijo * alpha * slope) {
                    const AssembledSystem At = model.assemble(trial);
                    if (At.finite) {
                        u = trial;
                        A = At;
                        accepted = true;
                        if (opt.iterate_callback) opt.iterate_callback(u);
                        break;
                    }
                }
                alpha *= opt.backtrack;
            }
        }
        if (!accepted) {
            if (++ls_failures >= 2)
                throw LineSearchFailure("backtracking failed along Newton and descent steps");
        } else {
            ls_failures = 0;
        }
    }

    report.interior_values = model.values_from_u(u);
    const std::vector<double> full = model.combine(report.interior_values);
    report.descent_path_stayed_admissible = model.admissible(full);
    report.no_geometric_solution = !report.descent_path_stayed_admissible;
    const Eigen::VectorXd c = model.user_curvature(A.raw_gradient);
    report.achieved_curvature.assign(c.data(), c.data() + c.size());
    if (model.is_packing()) {
        report.packing = CirclePackingMetric{full, p.geometry};
    } else {
        report.metric = PolyhedralMetric{full, p.geometry};
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rigidity probe
// ---------------------------------------------------------------------------

struct RigidityVerdict {
    double boundary_max_diff = 0.0;
    double curvature_max_diff = 0.0;
    double interior_max_diff = 0.0;
    bool boundary_match = false;
    bool curvature_match = false;
    bool interior_match = false;
    /** Equal data but different interior metrics; never expected. */
    bool counterexample_candidate = false;
};

/**
 * Compare two metrics on the same surface: do boundary values and
 * interior curvatures agree, and do the interior lengths? Agreement of
 * the data with disagreement of the lengths would contradict rigidity.
 */
inline RigidityVerdict rigidity_probe(const Surface& s, TotalFlavor flavor, double h,
                                      const PolyhedralMetric& ma, const PolyhedralMetric& mb,
                                      double tol = 1e-10)
{
    if (ma.geometry != mb.geometry) throw InfeasibleSpec("metrics in different geometries");
    const auto curv = [&](const PolyhedralMetric& m) {
        switch (flavor) {
            case TotalFlavor::WPsiHyperbolic: return psi_h(s, m, h);
            case TotalFlavor::VPhiStripped: return phi_h_stripped(s, m, h);
            default: return phi_h(s, m, h);
        }
    };
    RigidityVerdict v;
    for (int e : s.boundary_edges)
        v.boundary_max_diff = std::max(v.boundary_max_diff,
                                       std::abs(ma.lengths[e] - mb.lengths[e]));
    const auto ca = curv(ma), cb = curv(mb);
    for (std::size_t i = 0; i < ca.values.size(); ++i)
        v.curvature_max_diff =
            std::max(v.curvature_max_diff, std::abs(ca.values[i] - cb.values[i]));
    for (int e : s.interior_edges)
        v.interior_max_diff = std::max(v.interior_max_diff,
                                       std::abs(ma.lengths[e] - mb.lengths[e]));
    v.boundary_match = v.boundary_max_diff <= tol;
    v.curvature_match = v.curvature_max_diff <= tol;
    v.interior_match = v.interior_max_diff <= tol;
    v.counterexample_candidate = v.boundary_match && v.curvature_match && !v.interior_match;
    return v;
}

inline RigidityVerdict rigidity_probe(const Surface& s, double h, const CirclePackingMetric& pa,
                                      const CirclePackingMetric& pb, double tol = 1e-10)
{
    if (pa.geometry != pb.geometry) throw InfeasibleSpec("packings in different geometries");
    RigidityVerdict v;
    for (int vert : s.boundary_vertices)
        v.boundary_max_diff =
            std::max(v.boundary_max_diff, std::abs(pa.radii[vert] - pb.radii[vert]));
    const auto ka = k_h(s, pa, h), kb = k_h(s, pb, h);
    for (std::size_t i = 0; i < ka.values.size(); ++i)
        v.curvature_max_diff =
            std::max(v.curvature_max_diff, std::abs(ka.values[i] - kb.values[i]));
    for (int vert : s.interior_vertices)
        v.interior_max_diff =
            std::max(v.interior_max_diff, std::abs(pa.radii[vert] - pb.radii[vert]));
    v.boundary_match = v.boundary_max_diff <= tol;
    v.curvature_match = v.curvature_max_diff <= tol;
    v.interior_match = v.interior_max_diff <= tol;
    v.counterexample_candidate = v.boundary_match && v.curvature_match && !v.interior_match;
    return v;
}

}  // namespace polycurv
