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

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polycurv/charts.hpp"
#include "polycurv/curvature.hpp"
#include "polycurv/quadrature.hpp"
#include "polycurv/surface.hpp"

namespace polycurv {

/**
 * The four per-triangle metric energies. Gradients integrate the
 * curvature kernels up to the constant-extended angles; Hessians take the
 * factorized closed forms D A D inside the moduli space and vanish on the
 * extension regions, which makes every energy convex on its whole chart
 * box.
 *
 *   EPhi      Euclidean,  xi chart,    weights l_i,        Hessian m D M D
 *   SPhi      spherical,  xi chart,    weights sin l_i,    Hessian m D M D
 *   HPsi      hyperbolic, xi chart,    weights tanh(l/2),  Hessian (m/2) D P D
 *   HPhiGamma hyperbolic, gamma chart, weights sinh l_i,   Hessian m D M D
 *
 * HPhiGamma's M carries hyperbolic angles and is indefinite in general;
 * its 1x1 and 2x2 leading blocks are positive definite, which is why the
 * stripped-surface problem restricts to triangles with at most two
 * variable slots.
 */
enum class MetricEnergy { EPhi, SPhi, HPsi, HPhiGamma };

inline Geometry metric_energy_geometry(MetricEnergy f)
{
    switch (f) {
        case MetricEnergy::EPhi: return Geometry::Euclidean;
        case MetricEnergy::SPhi: return Geometry::Spherical;
        case MetricEnergy::HPsi:
        case MetricEnergy::HPhiGamma: return Geometry::Hyperbolic;
    }
    return Geometry::Euclidean;
}

namespace detail {

struct TriangleEval {
    std::array<double, 3> grad{};  // d(energy)/du per slot
    Eigen::Matrix3d hess = Eigen::Matrix3d::Zero();
    bool interior = false;  // strictly inside Omega (slack 1e-12)
    bool finite = true;
};

/** signed sin^h integral from pi/2 to theta; +-inf where divergent */
inline double facing_gradient(double h, double theta)
{
    if (power_integral_divergent_at(PowerKernel::Sin, h, theta))
        return theta < 0.5 * kPi ? -kInf : kInf;
    return power_integral(PowerKernel::Sin, h, 0.5 * kPi, theta);
}

/**
 * signed cos^h integral from 0 to alpha; +-inf where divergent. The
 * continuous extension has |alpha| <= pi/2 exactly, but the clamped
 * cosine law can overshoot the wall by roundoff near degenerate
 * triples, so the limit is clamped back onto the closed interval.
 */
inline double alpha_gradient(double h, double alpha)
{
    alpha = std::min(0.5 * kPi, std::max(-0.5 * kPi, alpha));
    if (power_integral_divergent_at(PowerKernel::Cos, h, alpha))
        return alpha < 0.0 ? -kInf : kInf;
    return power_integral(PowerKernel::Cos, h, 0.0, alpha);
}

/** Hessian of the phi-type energies: m * D M D with per-geometry weights. */
inline Eigen::Matrix3d phi_type_hessian(Geometry geom, double h, const TriangleLengths& t,
                                        const TriangleAngles& a)
{
    std::array<double, 3> w{};
    for (int i = 0; i < 3; ++i) w[i] = metric_factor(geom, t.l[i]);
    const double m =
        std::pow(std::sin(a.theta[0]), h - 1.0) / (std::pow(w[0], h) * w[1] * w[2]);
    Eigen::Vector3d d;
    for (int i = 0; i < 3; ++i) d(i) = std::pow(w[i], h + 1.0);
    return m * d.asDiagonal() * matrix_M(a) * d.asDiagonal();
}

/** Hessian of the hyperbolic psi energy: (m2/2) D2 P D2. */
inline Eigen::Matrix3d psi_hessian(double h, const TriangleLengths& t, const TriangleAngles& a)
{
    const double alpha0 = 0.5 * (a.theta[0] - a.theta[1] - a.theta[2]);
    const double m2 = std::pow(std::cos(alpha0), h) /
                      (std::pow(std::tanh(0.5 * t.l[0]), h) * std::sin(a.theta[0]) *
                       std::sinh(t.l[1]) * std::sinh(t.l[2]));
    Eigen::Vector3d d;
    for (int i = 0; i < 3; ++i) d(i) = std::pow(std::tanh(0.5 * t.l[i]), h);
    return 0.5 * m2 * d.asDiagonal() * matrix_P(t) * d.asDiagonal();
}

/** Full 3-slot evaluation of a metric energy at a length triple. */
inline TriangleEval eval_metric_triangle(MetricEnergy flavor, double h,
                                         const std::array<double, 3>& l)
{
    const Geometry geom = metric_energy_geometry(flavor);
    TriangleEval out;
    const TriangleLengths t{l, geom};
    const TriangleAngles theta = extended_angles(l, geom);
    if (flavor == MetricEnergy::HPsi) {
        for (int i = 0; i < 3; ++i) {
            const double ai = 0.5 * (theta.theta[i] - theta.theta[(i + 1) % 3] -
                                     theta.theta[(i + 2) % 3]);
            out.grad[i] = alpha_gradient(h, ai);
        }
    } else {
        for (int i = 0; i < 3; ++i) out.grad[i] = facing_gradient(h, theta.theta[i]);
    }
    for (double g : out.grad) out.finite = out.finite && std::isfinite(g);
    out.interior = in_moduli_space(t, 1e-12);
    if (out.interior) {
        out.hess = flavor == MetricEnergy::HPsi ? psi_hessian(h, t, theta)
                                                : phi_type_hessian(geom, h, t, theta);
    }
    return out;
}

/**
 * Full 3-slot evaluation of a packing energy: gradient components
 * -int_{pi/2}^{theta_i} tan^h(t/2) dt, Hessian by chain rule through the
 * induced lengths. Packing triangles are never degenerate, so there is
 * no extension branch.
 */
inline TriangleEval eval_packing_triangle(Geometry geom, double h, const std::array<double, 3>& r)
{
    const TriangleLengths t = packing_lengths(r, geom);
    const TriangleAngles a = angles_from_lengths(t);
    TriangleEval out;
    out.interior = true;
    for (int i = 0; i < 3; ++i)
        out.grad[i] = -power_integral(PowerKernel::TanHalf, h, 0.5 * kPi, a.theta[i]);
    for (double g : out.grad) out.finite = out.finite && std::isfinite(g);

    const Eigen::Matrix3d J = angle_jacobian(t);
    Eigen::Matrix3d B;  // dl_m / dr_j = 1 iff m != j
    B.setOnes();
    B.diagonal().setZero();
    const Eigen::Matrix3d dth_dr = J * B;
    Eigen::Matrix3d H;
    for (int i = 0; i < 3; ++i) {
        const double ti = std::pow(std::tan(0.5 * a.theta[i]), h);
        for (int j = 0; j < 3; ++j) {
            const double wj = geom == Geometry::Euclidean
                                  ? std::pow(r[j], 1.0 - h)
                                  : std::pow(std::sinh(r[j]), 1.0 - h);
            H(i, j) = -ti * dth_dr(i, j) * wj;
        }
    }
    out.hess = 0.5 * (H + H.transpose());
    return out;
}

}  // namespace detail

/** Compact per-triangle energy evaluation: one entry per variable slot. */
struct TriangleEnergyEval {
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;   // zero on extension regions
    bool extension = false;
};

namespace detail {

inline TriangleEnergyEval compact(const TriangleEval& full, int s)
{
    TriangleEnergyEval out;
    out.grad.resize(s);
    out.hess = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < s; ++i) {
        out.grad(i) = full.grad[i];
        if (full.interior)
            for (int j = 0; j < s; ++j) out.hess(i, j) = full.hess(i, j);
    }
    out.extension = !full.interior;
    return out;
}

inline std::array<double, 3> slot_values(std::span<const double> u,
                                         std::span<const double> fixed, const ChartMap& chart,
                                         int s)
{
    if (s < 1 || s > 3 || static_cast<int>(u.size()) != s ||
        u.size() + fixed.size() != 3)
        throw UnsupportedArity("triangle energy: need s variable and 3-s fixed slots");
    std::array<double, 3> vals{};
    for (int i = 0; i < s; ++i) {
        try {
            vals[i] = chart.inverse(u[i]);
        } catch (const OutOfImage&) {
            throw OutOfDomain("triangle energy: u outside the chart image");
        }
    }
    for (int i = s; i < 3; ++i) vals[i] = fixed[i - s];
    return vals;
}

}  // namespace detail

/** Public flavor tags of the xi-chart energies. */
enum class FFlavor { EPhi, HPsi, SPhi };

/**
 * F-family energy of a triangle whose first s slots are variable (given
 * as u-coordinates of the xi chart) and whose remaining slots are fixed
 * boundary lengths.
 */
inline TriangleEnergyEval triangle_energy_F(std::span<const double> u,
                                            std::span<const double> fixed_lengths,
                                            FFlavor flavor, int s, double h)
{
    const MetricEnergy me = flavor == FFlavor::EPhi
                                ? MetricEnergy::EPhi
                                : (flavor == FFlavor::SPhi ? MetricEnergy::SPhi
                                                           : MetricEnergy::HPsi);
    const ChartMap chart(ChartKind::Xi, h, metric_energy_geometry(me));
    const auto l = detail::slot_values(u, fixed_lengths, chart, s);
    return detail::compact(detail::eval_metric_triangle(me, h, l), s);
}

/**
 * Gamma-chart hyperbolic energy; only one or two variable slots are
 * allowed, matching where the energy is strictly convex.
 */
inline TriangleEnergyEval triangle_energy_G(std::span<const double> u,
                                            std::span<const double> fixed_lengths, int s,
                                            double h)
{
    if (s == 3) throw UnsupportedArity("triangle_energy_G: s = 3 is not convex");
    const ChartMap chart(ChartKind::Gamma, h, Geometry::Hyperbolic);
    const auto l = detail::slot_values(u, fixed_lengths, chart, s);
    return detail::compact(detail::eval_metric_triangle(MetricEnergy::HPhiGamma, h, l), s);
}

/**
 * Packing energy of a triangle whose first s vertex slots are variable
 * (u-coordinates of the g chart), the rest fixed at the given radii.
 */
inline TriangleEnergyEval triangle_energy_C(std::span<const double> q,
                                            std::span<const double> fixed_radii,
                                            Geometry geometry, int s, double h)
{
    const ChartMap chart(ChartKind::G, h, geometry);
    const auto r = detail::slot_values(q, fixed_radii, chart, s);
    return detail::compact(detail::eval_packing_triangle(geometry, h, r), s);
}

// ---------------------------------------------------------------------------
// Total energies over a surface
// ---------------------------------------------------------------------------

/** The four prescribed-curvature problems. */
enum class TotalFlavor { WPhi, WPsiHyperbolic, VPhiStripped, UPacking };

inline const char* to_string(TotalFlavor f)
{
    switch (f) {
        case TotalFlavor::WPhi: return "W_phi";
        case TotalFlavor::WPsiHyperbolic: return "W_psi_hyperbolic";
        case TotalFlavor::VPhiStripped: return "V_phi_stripped";
        case TotalFlavor::UPacking: return "U_packing";
    }
    return "?";
}

/** Assembled gradient/Hessian of a total energy at one point. */
struct AssembledSystem {
    /** Gradient of the convex energy (what the solver minimizes). */
    Eigen::VectorXd raw_gradient;
    /**
     * Curvature-convention gradient: phi_h or psi_h per interior edge for
     * the metric flavors, k_h minus the combinatorial shift (2 - m/2) pi
     * per interior vertex for packings.
     */
    Eigen::VectorXd curvature;
    /** Symmetric coordinate list in deterministic scatter order. */
    std::vector<Eigen::Triplet<double>> hessian_triplets;
    bool finite = true;
    bool all_interior = true;

    Eigen::MatrixXd dense_hessian(int n) const
    {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (const auto& t : hessian_triplets) H(t.row(), t.col()) += t.value();
        return H;
    }
};

/**
 * A prescribed-curvature energy bound to a surface, flavor, parameter h
 * and fixed boundary data. Variables are the interior edges (metric
 * flavors) or interior vertices (packing), in the surface's deterministic
 * order; assembly accumulates per-triangle terms in triangle order, so
 * results are bit-stable across runs and independent of any threading in
 * the per-triangle evaluations.
 */
class EnergyModel {
public:
    EnergyModel(const Surface& surface, TotalFlavor flavor, Geometry geometry, double h,
                std::vector<double> boundary_data)
        : surface_(&surface),
          flavor_(flavor),
          geometry_(geometry),
          h_(h),
          boundary_(std::move(boundary_data)),
          chart_(validated_chart_kind(surface, flavor, geometry), h, geometry)
    {
        const std::size_t want = is_packing() ? surface.boundary_vertices.size()
                                              : surface.boundary_edges.size();
        if (boundary_.size() != want)
            throw InfeasibleSpec("boundary data must cover exactly the boundary set");
        for (double b : boundary_) {
            if (!(b > 0.0)) throw InfeasibleSpec("boundary data must be positive");
            if (!is_packing() && geometry == Geometry::Spherical && !(b < kPi))
                throw InfeasibleSpec("spherical boundary lengths must be < pi");
        }
        if (is_packing()) {
            degree_.assign(surface.vertex_count, 0);
            for (const auto& tri : surface.triangles)
                for (int v : tri) ++degree_[v];
        }
    }

    const Surface& surface() const { return *surface_; }
    TotalFlavor flavor() const { return flavor_; }
    Geometry geometry() const { return geometry_; }
    double h() const { return h_; }
    const ChartMap& chart() const { return chart_; }
    const std::vector<double>& boundary_data() const { return boundary_; }
    bool is_packing() const { return flavor_ == TotalFlavor::UPacking; }

    int variable_count() const
    {
        return static_cast<int>(is_packing() ? surface_->interior_vertices.size()
                                             : surface_->interior_edges.size());
    }

    /** Chart image interval; the feasible box is its n-fold product. */
    Interval box() const { return chart_.image(); }

    Eigen::VectorXd u_from_values(const std::vector<double>& vals) const
    {
        Eigen::VectorXd u(variable_count());
        for (int i = 0; i < variable_count(); ++i) u(i) = chart_.forward(vals[i]);
        return u;
    }

    std::vector<double> values_from_u(const Eigen::VectorXd& u) const
    {
        std::vector<double> vals(variable_count());
        for (int i = 0; i < variable_count(); ++i) vals[i] = chart_.inverse(u(i));
        return vals;
    }

    /** Per-edge lengths or per-vertex radii combining boundary data with
     *  the given interior values. */
    std::vector<double> combine(const std::vector<double>& interior_values) const
    {
        if (is_packing()) {
            std::vector<double> radii(surface_->vertex_count, 0.0);
            for (std::size_t i = 0; i < surface_->boundary_vertices.size(); ++i)
                radii[surface_->boundary_vertices[i]] = boundary_[i];
            for (std::size_t i = 0; i < surface_->interior_vertices.size(); ++i)
                radii[surface_->interior_vertices[i]] = interior_values[i];
            return radii;
        }
        std::vector<double> lengths(surface_->edge_count(), 0.0);
        for (std::size_t i = 0; i < surface_->boundary_edges.size(); ++i)
            lengths[surface_->boundary_edges[i]] = boundary_[i];
        for (std::size_t i = 0; i < surface_->interior_edges.size(); ++i)
            lengths[surface_->interior_edges[i]] = interior_values[i];
        return lengths;
    }

    std::vector<double> full_values(const Eigen::VectorXd& u) const
    {
        return combine(values_from_u(u));
    }

    AssembledSystem assemble(const Eigen::VectorXd& u) const
    {
        return assemble_full(full_values(u));
    }

    /** Assembly from explicit full per-edge / per-vertex values. */
    AssembledSystem assemble_full(const std::vector<double>& full) const
    {
        const Surface& s = *surface_;
        const int n = variable_count();
        AssembledSystem out;
        out.raw_gradient = Eigen::VectorXd::Zero(n);
        for (int t = 0; t < s.triangle_count(); ++t) {
            std::array<double, 3> local{};
            std::array<int, 3> var{-1, -1, -1};
            if (is_packing()) {
                for (int i = 0; i < 3; ++i) {
                    const int v = s.triangles[t][i];
                    local[i] = full[v];
                    var[i] = s.interior_vertex_position(v);
                }
            } else {
                for (int i = 0; i < 3; ++i) {
                    const int e = s.triangle_edges[t][i];
                    local[i] = full[e];
                    var[i] = s.interior_edge_position(e);
                }
            }
            const detail::TriangleEval ev =
                is_packing() ? detail::eval_packing_triangle(geometry_, h_, local)
                             : detail::eval_metric_triangle(metric_energy(), h_, local);
            out.all_interior = out.all_interior && ev.interior;
            if (var[0] < 0 && var[1] < 0 && var[2] < 0) continue;
            for (int i = 0; i < 3; ++i) {
                if (var[i] < 0) continue;
                if (!std::isfinite(ev.grad[i])) out.finite = false;
                out.raw_gradient(var[i]) += ev.grad[i];
                if (!ev.interior) continue;
                for (int j = 0; j < 3; ++j) {
                    if (var[j] < 0) continue;
                    out.hessian_triplets.emplace_back(var[i], var[j], ev.hess(i, j));
                }
            }
        }
        if (is_packing())
            out.curvature = out.raw_gradient;
        else
            out.curvature = -out.raw_gradient;
        return out;
    }

    /**
     * Difference of the convex energy between two points of the box, by
     * adaptive line integration of the gradient along the segment.
     * Returns +inf if the gradient turns non-finite along the way.
     */
    double energy_difference(const Eigen::VectorXd& u0, const Eigen::VectorXd& u1,
                             double abstol = 1e-11) const
    {
        const Eigen::VectorXd delta = u1 - u0;
        if (delta.norm() == 0.0) return 0.0;
        const auto f = [&](double t) {
            const AssembledSystem a = assemble(u0 + t * delta);
            if (!a.finite) return std::numeric_limits<double>::quiet_NaN();
            return a.raw_gradient.dot(delta);
        };
        const double v = integrate_adaptive(f, 0.0, 1.0, abstol);
        return std::isnan(v) ? kInf : v;
    }

    /** Linear shift turning prescribed curvatures into raw-gradient targets. */
    Eigen::VectorXd raw_targets(const std::vector<double>& curvature_targets) const
    {
        if (static_cast<int>(curvature_targets.size()) != variable_count())
            throw InfeasibleSpec("targets must cover exactly the interior set");
        Eigen::VectorXd a(variable_count());
        for (int i = 0; i < variable_count(); ++i) {
            if (is_packing()) {
                const int v = surface_->interior_vertices[i];
                a(i) = curvature_targets[i] - (2.0 - 0.5 * degree_[v]) * kPi;
            } else {
                a(i) = -curvature_targets[i];
            }
        }
        return a;
    }

    /** Curvature values in the user convention from a raw gradient. */
    Eigen::VectorXd user_curvature(const Eigen::VectorXd& raw_gradient) const
    {
        Eigen::VectorXd c(variable_count());
        for (int i = 0; i < variable_count(); ++i) {
            if (is_packing()) {
                const int v = surface_->interior_vertices[i];
                c(i) = raw_gradient(i) + (2.0 - 0.5 * degree_[v]) * kPi;
            } else {
                c(i) = -raw_gradient(i);
            }
        }
        return c;
    }

    /** Strict admissibility of every triangle at the given full values. */
    bool admissible(const std::vector<double>& full) const
    {
        const Surface& s = *surface_;
        if (is_packing()) {
            for (double r : full)
                if (!(r > 0.0)) return false;
            return true;  // induced lengths always satisfy the inequalities
        }
        for (int t = 0; t < s.triangle_count(); ++t) {
            std::array<double, 3> local{};
            for (int i = 0; i < 3; ++i) local[i] = full[s.triangle_edges[t][i]];
            if (!in_moduli_space(TriangleLengths{local, geometry_})) return false;
        }
        return true;
    }

    MetricEnergy metric_energy() const
    {
        if (flavor_ == TotalFlavor::WPsiHyperbolic) return MetricEnergy::HPsi;
        if (flavor_ == TotalFlavor::VPhiStripped) return MetricEnergy::HPhiGamma;
        return geometry_ == Geometry::Spherical ? MetricEnergy::SPhi : MetricEnergy::EPhi;
    }

private:
    const Surface* surface_;
    TotalFlavor flavor_;
    Geometry geometry_;
    double h_;
    std::vector<double> boundary_;
    ChartMap chart_;
    std::vector<int> degree_;

    /** flavor/geometry validation happens before the chart is built */
    static ChartKind validated_chart_kind(const Surface& surface, TotalFlavor flavor,
                                          Geometry geometry)
    {
        switch (flavor) {
            case TotalFlavor::WPhi:
                if (geometry == Geometry::Hyperbolic)
                    throw InfeasibleSpec("W_phi covers Euclidean and spherical metrics");
                return ChartKind::Xi;
            case TotalFlavor::WPsiHyperbolic:
                if (geometry != Geometry::Hyperbolic)
                    throw InfeasibleSpec("W_psi requires hyperbolic geometry");
                return ChartKind::Xi;
            case TotalFlavor::VPhiStripped:
                if (geometry != Geometry::Hyperbolic)
                    throw InfeasibleSpec("V_phi requires hyperbolic geometry");
                if (!is_stripped(surface))
                    throw InfeasibleSpec("V_phi requires a stripped surface");
                return ChartKind::Gamma;
            case TotalFlavor::UPacking:
                if (geometry == Geometry::Spherical)
                    throw InfeasibleSpec("packing problems are Euclidean or hyperbolic");
                return ChartKind::G;
        }
        return ChartKind::Xi;
    }
};

}  // namespace polycurv
