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

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "polycurv/common.hpp"

namespace polycurv {

/**
 * Per-triangle trigonometry in the three constant-curvature geometries.
 *
 * Index convention throughout: for i in {0,1,2}, l[i] is the edge opposite
 * the angle theta[i]; (i, j, k) always means (i, i+1 mod 3, i+2 mod 3).
 * Spherical lengths are radians of arc.
 */
struct TriangleLengths {
    std::array<double, 3> l;
    Geometry geometry;
};

struct TriangleAngles {
    std::array<double, 3> theta;

    double sum() const { return theta[0] + theta[1] + theta[2]; }
};

/**
 * Auxiliary coordinates of a triangle:
 *   r[i]     = (l_j + l_k - l_i) / 2   (positive iff strict triangle inequality)
 *   alpha[i] = (theta_i - theta_j - theta_k) / 2
 *   zeta     = -(theta_0 + theta_1 + theta_2) / 2
 */
struct AuxCoords {
    std::array<double, 3> r;
    std::array<double, 3> alpha;
    double zeta;
};

// half-open length domain J: (0, inf), or (0, pi) in spherical geometry
inline double length_domain_sup(Geometry g)
{
    return g == Geometry::Spherical ? kPi : kInf;
}

/**
 * Strict membership in the moduli space Omega of nondegenerate triangles,
 * with optional slack: every inequality must hold with margin > eps.
 * Spherical geometry additionally requires l_i < pi - eps and
 * l_0 + l_1 + l_2 < 2 pi - eps.
 */
inline bool in_moduli_space(const TriangleLengths& t, double eps = 0.0)
{
    const auto& l = t.l;
    for (int i = 0; i < 3; ++i) {
        if (!(l[i] > eps)) return false;
        if (!(l[(i + 1) % 3] + l[(i + 2) % 3] - l[i] > eps)) return false;
    }
    if (t.geometry == Geometry::Spherical) {
        for (int i = 0; i < 3; ++i)
            if (!(l[i] < kPi - eps)) return false;
        if (!(l[0] + l[1] + l[2] < 2 * kPi - eps)) return false;
    }
    return true;
}

namespace detail {

/**
 * acos with the spec'ed clamping band: arguments within 1e-12 of [-1, 1]
 * are clamped, anything further out signals a degenerate input.
 */
inline double acos_clamped(double x)
{
    if (x > 1.0) {
        if (x > 1.0 + 1e-12) throw DegenerateTriangle("cosine-law argument > 1");
        x = 1.0;
    } else if (x < -1.0) {
        if (x < -1.0 - 1e-12) throw DegenerateTriangle("cosine-law argument < -1");
        x = -1.0;
    }
    return std::acos(x);
}

inline double cos_angle(const TriangleLengths& t, int i)
{
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double li = t.l[i], lj = t.l[j], lk = t.l[k];
    switch (t.geometry) {
        case Geometry::Euclidean:
            return (-li * li + lj * lj + lk * lk) / (2 * lj * lk);
        case Geometry::Hyperbolic:
            return (-std::cosh(li) + std::cosh(lj) * std::cosh(lk)) /
                   (std::sinh(lj) * std::sinh(lk));
        case Geometry::Spherical:
            return (std::cos(li) - std::cos(lj) * std::cos(lk)) /
                   (std::sin(lj) * std::sin(lk));
    }
    return 0.0;
}

/** m_i of Lemma-style derivative formulas: l, sinh l, sin l by geometry. */
inline double metric_factor(Geometry g, double l)
{
    switch (g) {
        case Geometry::Euclidean: return l;
        case Geometry::Hyperbolic: return std::sinh(l);
        case Geometry::Spherical: return std::sin(l);
    }
    return l;
}

}  // namespace detail

/**
 * Cosine-law angles of a nondegenerate triangle.
 * Requires the lengths to lie strictly inside the moduli space.
 */
inline TriangleAngles angles_from_lengths(const TriangleLengths& t)
{
    if (!in_moduli_space(t)) throw DegenerateTriangle("lengths outside the open moduli space");
    TriangleAngles a{};
    for (int i = 0; i < 3; ++i) a.theta[i] = detail::acos_clamped(detail::cos_angle(t, i));
    return a;
}

/**
 * Angles extended continuously by constants to all of J^3: theta_i = pi
 * and theta_j = theta_k = 0 when l_j + l_k <= l_i; in spherical geometry
 * every angle is pi when l_0 + l_1 + l_2 >= 2 pi.
 */
inline TriangleAngles extended_angles(const std::array<double, 3>& l, Geometry geometry)
{
    for (int i = 0; i < 3; ++i) {
        if (!(l[i] > 0.0)) throw NonPositiveLength("extended_angles: length must be positive");
        if (geometry == Geometry::Spherical && !(l[i] < kPi))
            throw OutOfDomain("extended_angles: spherical length must be < pi");
    }
    const TriangleLengths t{l, geometry};
    if (in_moduli_space(t)) return angles_from_lengths(t);
    if (geometry == Geometry::Spherical && l[0] + l[1] + l[2] >= 2 * kPi)
        return TriangleAngles{{kPi, kPi, kPi}};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        if (l[j] + l[k] <= l[i]) {
            TriangleAngles a{{0.0, 0.0, 0.0}};
            a.theta[i] = kPi;
            return a;
        }
    }
    // remaining points of the closure (roundoff slivers): fall back to the
    // clamped cosine law
    TriangleAngles a{};
    for (int i = 0; i < 3; ++i) a.theta[i] = detail::acos_clamped(detail::cos_angle(t, i));
    return a;
}

/**
 * Analytic Jacobian J[i][j] = d theta_i / d l_j:
 *   d theta_i / d l_i = m_i / (sin theta_i m_j m_k),
 *   d theta_i / d l_j = -cos theta_k * d theta_i / d l_i,
 * with m = id / sinh / sin by geometry.
 */
inline Eigen::Matrix3d angle_jacobian(const TriangleLengths& t)
{
    const TriangleAngles a = angles_from_lengths(t);
    const double m0 = detail::metric_factor(t.geometry, t.l[0]);
    const double m1 = detail::metric_factor(t.geometry, t.l[1]);
    const double m2 = detail::metric_factor(t.geometry, t.l[2]);
    const std::array<double, 3> m{m0, m1, m2};
    Eigen::Matrix3d out;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double dii = m[i] / (std::sin(a.theta[i]) * m[j] * m[k]);
        out(i, i) = dii;
        out(i, j) = -std::cos(a.theta[k]) * dii;
        out(i, k) = -std::cos(a.theta[j]) * dii;
    }
    return out;
}

inline AuxCoords aux_coords(const TriangleLengths& t)
{
    const TriangleAngles a = angles_from_lengths(t);
    AuxCoords out{};
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        out.r[i] = 0.5 * (t.l[j] + t.l[k] - t.l[i]);
        out.alpha[i] = 0.5 * (a.theta[i] - a.theta[j] - a.theta[k]);
    }
    out.zeta = -0.5 * a.sum();
    return out;
}

/**
 * The index-independent tangent-law quantity of the triangle's geometry:
 *   Euclidean:  r_i tan(theta_i/2)          (the inradius)
 *   hyperbolic: cos(alpha_i) coth(l_i/2)    (sinh r_i tan(theta_i/2) also
 *                                            checked for agreement)
 *   spherical:  cos(alpha_i) cot(l_i/2)
 * Raises IndexMismatch if the three index evaluations disagree; that
 * signals a kernel bug, not bad input.
 */
inline double tangent_law_invariant(const TriangleLengths& t)
{
    const TriangleAngles a = angles_from_lengths(t);
    const AuxCoords aux = aux_coords(t);
    std::array<double, 3> v{};
    std::array<double, 3> v2{};
    bool has_second = false;
    for (int i = 0; i < 3; ++i) {
        switch (t.geometry) {
            case Geometry::Euclidean:
                v[i] = aux.r[i] * std::tan(0.5 * a.theta[i]);
                break;
            case Geometry::Hyperbolic:
                v[i] = std::cos(aux.alpha[i]) / std::tanh(0.5 * t.l[i]);
                v2[i] = std::sinh(aux.r[i]) * std::tan(0.5 * a.theta[i]);
                has_second = true;
                break;
            case Geometry::Spherical:
                v[i] = std::cos(aux.alpha[i]) / std::tan(0.5 * t.l[i]);
                break;
        }
    }
    const auto check = [](const std::array<double, 3>& w) {
        const double scale = std::max({1.0, std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
        if (std::abs(w[0] - w[1]) > 1e-12 * scale || std::abs(w[0] - w[2]) > 1e-12 * scale)
            throw IndexMismatch("tangent-law evaluations disagree across indices");
    };
    check(v);
    if (has_second) check(v2);
    return v[0];
}

/**
 * Lemma matrix P of a hyperbolic triangle:
 *   p_ii = tanh^2(l_i/2) (cosh l_0 + cosh l_1 + cosh l_2 + 1)
 *   p_ij = -cosh l_i - cosh l_j + cosh l_k + 1
 * Positive definite on the open moduli space.
 */
inline Eigen::Matrix3d matrix_P(const TriangleLengths& t)
{
    if (t.geometry != Geometry::Hyperbolic)
        throw UnsupportedGeometry("matrix_P is defined for hyperbolic triangles");
    if (!in_moduli_space(t)) throw DegenerateTriangle("matrix_P: degenerate lengths");
    const double c0 = std::cosh(t.l[0]), c1 = std::cosh(t.l[1]), c2 = std::cosh(t.l[2]);
    const double S = c0 + c1 + c2 + 1.0;
    const std::array<double, 3> ch{c0, c1, c2};
    Eigen::Matrix3d P;
    for (int i = 0; i < 3; ++i) {
        const double th = std::tanh(0.5 * t.l[i]);
        P(i, i) = th * th * S;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const int k = 3 - i - j;
            P(i, j) = -ch[i] - ch[j] + ch[k] + 1.0;
        }
    }
    return P;
}

/**
 * Lemma matrix M: m_ii = 1, m_ij = -cos theta_k. Positive semidefinite for
 * Euclidean angles (kernel spanned by the length vector), positive
 * definite for spherical angles.
 */
inline Eigen::Matrix3d matrix_M(const TriangleAngles& a)
{
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i) {
        M(i, i) = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            const int k = 3 - i - j;
            M(i, j) = -std::cos(a.theta[k]);
        }
    }
    return M;
}

/**
 * Edge lengths induced by a circle-packing radius triple: l_i = r_j + r_k.
 * Always strictly inside the moduli space. Euclidean or hyperbolic only.
 */
inline TriangleLengths packing_lengths(const std::array<double, 3>& radii, Geometry geometry)
{
    if (geometry == Geometry::Spherical)
        throw UnsupportedGeometry("packing metrics are Euclidean or hyperbolic");
    for (double r : radii)
        if (!(r > 0.0)) throw NonPositiveRadius("packing radius must be positive");
    TriangleLengths t{{}, geometry};
    for (int i = 0; i < 3; ++i) t.l[i] = radii[(i + 1) % 3] + radii[(i + 2) % 3];
    return t;
}

}  // namespace polycurv
