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
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "polycurv/common.hpp"

namespace polycurv {

// ---------------------------------------------------------------------------
// Generic adaptive Gauss-Kronrod 7-15 quadrature
// ---------------------------------------------------------------------------

namespace detail {

// Kronrod-15 abscissae on [-1,1] (symmetric) and weights; Gauss-7 weights
// sit at the odd Kronrod nodes.
inline constexpr double kGK15Nodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
inline constexpr double kGK15WeightsK[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
inline constexpr double kGK15WeightsG[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct PanelResult {
    double value;
    double error;
};

template <class F>
PanelResult gk15_panel(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kGK15WeightsK[0] * fc;
    double gauss = kGK15WeightsG[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = hw * kGK15Nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kGK15WeightsK[i] * fsum;
        if (i % 2 == 0) gauss += kGK15WeightsG[i / 2] * fsum;
    }
    kron *= hw;
    gauss *= hw;
    return {kron, std::abs(kron - gauss)};
}

}  // namespace detail

/**
 * Adaptive quadrature of f over the oriented interval [a, b] to absolute
 * tolerance `abstol`. Returns NaN if the integrand produces non-finite
 * values anywhere it is sampled.
 */
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abstol = 1e-13,
                          int max_depth = 52)
{
    if (a == b) return 0.0;
    struct Seg {
        double a, b, tol;
        int depth;
    };
    // explicit stack; worst case max_depth levels deep
    std::vector<Seg> stack;
    stack.push_back({a, b, abstol, 0});
    double total = 0.0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        auto r = detail::gk15_panel(f, s.a, s.b);
        if (!std::isfinite(r.value)) return std::numeric_limits<double>::quiet_NaN();
        if (r.error <= std::max(s.tol, 5e-16 * std::abs(r.value)) || s.depth >= max_depth) {
            total += r.value;
        } else {
            const double m = 0.5 * (s.a + s.b);
            const double t = s.tol * 0.7071067811865476;
            stack.push_back({s.a, m, t, s.depth + 1});
            stack.push_back({m, s.b, t, s.depth + 1});
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Power-kernel integrals  (integrands of the curvature functionals and
// chart maps: base(t)^p with base in the table below)
// ---------------------------------------------------------------------------

/** Base function of a power integrand. */
enum class PowerKernel { Sin, Cos, TanHalf, Sinh, TanhHalf };

namespace detail {

inline double kernel_value(PowerKernel k, double t)
{
    switch (k) {
        case PowerKernel::Sin: return std::sin(t);
        case PowerKernel::Cos: return std::cos(t);
        case PowerKernel::TanHalf: return std::tan(0.5 * t);
        case PowerKernel::Sinh: return std::sinh(t);
        case PowerKernel::TanhHalf: return std::tanh(0.5 * t);
    }
    return 0.0;
}

/** Closed-form antiderivative of kernel^p for small integer p, if known. */
inline std::optional<double> antiderivative(PowerKernel k, int p, double t)
{
    if (p == 0) return t;
    switch (k) {
        case PowerKernel::Sin:
            switch (p) {
                case 1: return -std::cos(t);
                case 2: return 0.5 * t - 0.25 * std::sin(2 * t);
                case -1: return std::log(std::abs(std::tan(0.5 * t)));
                case -2: return -std::cos(t) / std::sin(t);
                case -3: {
                    const double s = std::sin(t);
                    return 0.5 * (-std::cos(t) / (s * s) +
                                  std::log(std::abs(std::tan(0.5 * t))));
                }
            }
            break;
        case PowerKernel::Cos:
            switch (p) {
                case 1: return std::sin(t);
                case 2: return 0.5 * t + 0.25 * std::sin(2 * t);
                case -1: return std::log(std::abs(std::tan(0.5 * t + 0.25 * kPi)));
                case -2: return std::tan(t);
                case -3: {
                    const double c = std::cos(t);
                    return 0.5 * (std::sin(t) / (c * c) +
                                  std::log(std::abs(std::tan(0.5 * t + 0.25 * kPi))));
                }
            }
            break;
        case PowerKernel::TanHalf:
            switch (p) {
                case 1: return -2.0 * std::log(std::abs(std::cos(0.5 * t)));
                case 2: return 2.0 * std::tan(0.5 * t) - t;
                case -1: return 2.0 * std::log(std::abs(std::sin(0.5 * t)));
                case -2: return -2.0 / std::tan(0.5 * t) - t;
            }
            break;
        case PowerKernel::Sinh:
            switch (p) {
                case 1: return std::cosh(t);
                case 2: return 0.25 * std::sinh(2 * t) - 0.5 * t;
                case -1: return std::log(std::abs(std::tanh(0.5 * t)));
                case -2: return -std::cosh(t) / std::sinh(t);
                case -3: {
                    const double s = std::sinh(t);
                    return 0.5 * (-std::cosh(t) / (s * s) -
                                  std::log(std::abs(std::tanh(0.5 * t))));
                }
            }
            break;
        case PowerKernel::TanhHalf:
            switch (p) {
                case 1: return 2.0 * std::log(std::cosh(0.5 * t));
                case 2: return t - 2.0 * std::tanh(0.5 * t);
                case -1: return 2.0 * std::log(std::abs(std::sinh(0.5 * t)));
                case -2: return t - 2.0 / std::tanh(0.5 * t);
                case -3: {
                    const double th = std::tanh(0.5 * t);
                    return 2.0 * std::log(std::abs(std::sinh(0.5 * t))) - 1.0 / (th * th);
                }
            }
            break;
    }
    return std::nullopt;
}

/**
 * Near its zero each kernel behaves as s*x*(1 + c2 x^2 + c4 x^4 + ...) in
 * the local coordinate x = distance to the zero. Used to integrate
 * integrable endpoint singularities (p in (-1, 0)) by series.
 */
struct LocalExpansion {
    double scale;  // s
    double c2;
    double c4;
};

inline LocalExpansion local_expansion(PowerKernel k)
{
    switch (k) {
        case PowerKernel::Sin: return {1.0, -1.0 / 6.0, 1.0 / 120.0};
        case PowerKernel::Cos: return {1.0, -1.0 / 6.0, 1.0 / 120.0};  // via cos(pi/2 - x) = sin x
        case PowerKernel::TanHalf: return {0.5, 1.0 / 12.0, 1.0 / 120.0};
        case PowerKernel::Sinh: return {1.0, 1.0 / 6.0, 1.0 / 120.0};
        case PowerKernel::TanhHalf: return {0.5, -1.0 / 12.0, 1.0 / 120.0};
    }
    return {1.0, 0.0, 0.0};
}

/** integral of (s x (1 + c2 x^2 + c4 x^4))^p over [0, delta], delta small */
inline double singular_tail(PowerKernel k, double p, double delta)
{
    const auto e = local_expansion(k);
    const double d1 = std::pow(delta, p + 1) / (p + 1);
    const double d3 = std::pow(delta, p + 3) / (p + 3);
    const double d5 = std::pow(delta, p + 5) / (p + 5);
    const double b2 = p * e.c2;
    const double b4 = p * e.c4 + 0.5 * p * (p - 1) * e.c2 * e.c2;
    return std::pow(e.scale, p) * (d1 + b2 * d3 + b4 * d5);
}

/**
 * Distance from t to the nearest zero of the kernel, together with the
 * sign direction of the zero (-1: zero below t, +1: zero above t).
 * Only zeros relevant to the library's integration ranges are handled.
 */
inline double nearest_zero(PowerKernel k, double t)
{
    switch (k) {
        case PowerKernel::Sin: return kPi * std::round(t / kPi);
        case PowerKernel::Cos: return kPi * std::round((t - 0.5 * kPi) / kPi) + 0.5 * kPi;
        case PowerKernel::TanHalf: return 2 * kPi * std::round(t / (2 * kPi));
        case PowerKernel::Sinh: return 0.0;
        case PowerKernel::TanhHalf: return 0.0;
    }
    return 0.0;
}

}  // namespace detail

/**
 * Signed integral of kernel(t)^p over [a, b] assuming the integrand is
 * integrable there (singularities allowed only at the endpoints, with
 * p > -1). Closed forms for small integer p, adaptive quadrature plus
 * endpoint series otherwise.
 */
inline double power_integral(PowerKernel k, double p, double a, double b)
{
    if (a == b) return 0.0;
    const double ri = std::round(p);
    if (ri == p && std::abs(ri) <= 3) {
        auto Fa = detail::antiderivative(k, static_cast<int>(ri), a);
        auto Fb = detail::antiderivative(k, static_cast<int>(ri), b);
        if (Fa && Fb) return *Fb - *Fa;
    }
    const auto f = [k, p](double t) { return std::pow(detail::kernel_value(k, t), p); };
    double lo = std::min(a, b), hi = std::max(a, b);
    const double sign = (b >= a) ? 1.0 : -1.0;
    double tail = 0.0;
    if (p < 0) {
        // Peel off endpoint neighborhoods that touch a kernel zero.
        const double delta = 1e-3;
        const double zlo = detail::nearest_zero(k, lo);
        if (std::abs(lo - zlo) < 1e-14 && hi > lo + delta) {
            tail += detail::singular_tail(k, p, delta);
            lo += delta;
        }
        const double zhi = detail::nearest_zero(k, hi);
        if (std::abs(hi - zhi) < 1e-14 && hi - delta > lo) {
            tail += detail::singular_tail(k, p, delta);
            hi -= delta;
        }
    }
    return sign * (integrate_adaptive(f, lo, hi, 1e-13) + tail);
}

/** True if the integral of kernel^p diverges as its limit approaches `t`. */
inline bool power_integral_divergent_at(PowerKernel k, double p, double t)
{
    if (p < 0) {
        const double z = detail::nearest_zero(k, t);
        if (std::abs(t - z) < 1e-14 && p <= -1) return true;
    }
    if (k == PowerKernel::TanHalf && p > 0) {
        // tan(t/2) has a pole at t = pi (mod 2 pi)
        const double zp = 2 * kPi * std::round((t - kPi) / (2 * kPi)) + kPi;
        if (std::abs(t - zp) < 1e-14 && p >= 1) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// integral_kernel: the public curvature-functional integrals
// ---------------------------------------------------------------------------

/** Integrand families of the curvature functionals. */
enum class IntegralKind { SinPow, CosPow, TanHalfPow, SinhPow };

namespace detail {

inline PowerKernel to_power_kernel(IntegralKind kind)
{
    switch (kind) {
        case IntegralKind::SinPow: return PowerKernel::Sin;
        case IntegralKind::CosPow: return PowerKernel::Cos;
        case IntegralKind::TanHalfPow: return PowerKernel::TanHalf;
        case IntegralKind::SinhPow: return PowerKernel::Sinh;
    }
    return PowerKernel::Sin;
}

/** Is there a point of the set {offset + k*period} inside [lo, hi]? */
inline bool interval_hits(double lo, double hi, double offset, double period)
{
    const double k0 = std::ceil((lo - offset) / period - 1e-15);
    return offset + k0 * period <= hi + 1e-15;
}

}  // namespace detail

/**
 * Signed integral of the chosen integrand^h from a to b (b < a allowed).
 *
 * Raises SingularIntegrand if for h < 0 the closed interval touches a
 * singular point of the integrand (multiples of pi for sin, pi/2 + k pi
 * for cos, multiples of 2 pi for tan(t/2), 0 for sinh), or if a pole of
 * tan^h(t/2) (h > 0, t = pi mod 2 pi) lies inside, or if a fractional
 * power would be taken of a negative base.
 */
inline double integral_kernel(IntegralKind kind, double h, double a, double b)
{
    const double lo = std::min(a, b), hi = std::max(a, b);
    const PowerKernel k = detail::to_power_kernel(kind);
    if (h < 0) {
        bool hit = false;
        switch (kind) {
            case IntegralKind::SinPow: hit = detail::interval_hits(lo, hi, 0.0, kPi); break;
            case IntegralKind::CosPow: hit = detail::interval_hits(lo, hi, 0.5 * kPi, kPi); break;
            case IntegralKind::TanHalfPow: hit = detail::interval_hits(lo, hi, 0.0, 2 * kPi); break;
            case IntegralKind::SinhPow: hit = lo <= 0.0 && hi >= 0.0; break;
        }
        if (hit) throw SingularIntegrand("integral_kernel: singular point inside interval");
    }
    if (kind == IntegralKind::TanHalfPow && h > 0 &&
        detail::interval_hits(lo, hi, kPi, 2 * kPi)) {
        throw SingularIntegrand("integral_kernel: tan(t/2) pole inside interval");
    }
    if (h != std::round(h)) {
        // fractional powers need a nonnegative base on the interval
        bool ok = true;
        switch (kind) {
            case IntegralKind::SinPow: ok = lo >= -1e-15 && hi <= kPi + 1e-15; break;
            case IntegralKind::CosPow: ok = lo >= -0.5 * kPi - 1e-15 && hi <= 0.5 * kPi + 1e-15; break;
            case IntegralKind::TanHalfPow: ok = lo >= -1e-15 && hi <= kPi; break;
            case IntegralKind::SinhPow: ok = lo >= -1e-15; break;
        }
        if (!ok) throw SingularIntegrand("integral_kernel: negative base under fractional power");
    }
    return power_integral(k, h, a, b);
}

/** Quadrature-only evaluation; test oracle for the closed-form fast paths. */
inline double integral_kernel_adaptive(IntegralKind kind, double h, double a, double b)
{
    const PowerKernel k = detail::to_power_kernel(kind);
    const auto f = [k, h](double t) { return std::pow(detail::kernel_value(k, t), h); };
    return integrate_adaptive(f, a, b, 1e-13);
}

}  // namespace polycurv
