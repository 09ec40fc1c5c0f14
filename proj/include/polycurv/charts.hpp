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

#include <cmath>

#include "polycurv/common.hpp"
#include "polycurv/quadrature.hpp"
#include "polycurv/triangle.hpp"

namespace polycurv {

/**
 * The three monotone coordinate changes in which the energies are convex:
 *
 *   Xi    on lengths:  d/dt = t^{-h-1}            (Euclidean)
 *                      d/dt = tanh^{-h-1}(t/2)    (hyperbolic)
 *                      d/dt = sin^{-h-1}(t)       (spherical)
 *   Gamma on lengths:  d/dt = sinh^{-h-1}(t)      (hyperbolic only)
 *   G     on radii:    d/dt = t^{h-1}             (Euclidean)
 *                      d/dt = sinh^{h-1}(t)       (hyperbolic)
 *
 * Integral-defined charts use base point 1 (forward(1) = 0); Euclidean
 * charts use the closed forms -t^{-h}/h, t^h/h (ln t at h = 0), whose
 * images differ from 0-at-1 by an irrelevant constant.
 */
enum class ChartKind { Xi, Gamma, G };

class ChartMap {
public:
    ChartMap(ChartKind kind, double h, Geometry geometry)
        : kind_(kind), h_(h), geometry_(geometry)
    {
        if (kind == ChartKind::Gamma && geometry != Geometry::Hyperbolic)
            throw UnsupportedGeometry("gamma chart is hyperbolic-only");
        if (kind == ChartKind::G && geometry == Geometry::Spherical)
            throw UnsupportedGeometry("packing chart has no spherical branch");
        image_ = compute_image();  // eager, so const instances are shareable
    }

    ChartKind kind() const { return kind_; }
    double h() const { return h_; }
    Geometry geometry() const { return geometry_; }

    /** Open domain J of the chart. */
    Interval domain() const
    {
        return {0.0, kind_ == ChartKind::Xi ? length_domain_sup(geometry_) : kInf};
    }

    double forward(double t) const
    {
        require_in_domain(t);
        if (geometry_ == Geometry::Euclidean) {
            if (h_ == 0.0) return std::log(t);
            return kind_ == ChartKind::G ? std::pow(t, h_) / h_ : -std::pow(t, -h_) / h_;
        }
        return power_integral(integral_kernel_base(), exponent(), 1.0, t);
    }

    /** dU/dt; strictly positive on the open domain. */
    double derivative(double t) const
    {
        require_in_domain(t);
        if (geometry_ == Geometry::Euclidean) return std::pow(t, exponent());
        return std::pow(detail::kernel_value(integral_kernel_base(), t), exponent());
    }

    double inverse(double u) const
    {
        const Interval im = image();
        if (!(u > im.lo && u < im.hi)) throw OutOfImage("chart inverse: point outside open image");
        if (geometry_ == Geometry::Euclidean) {
            if (h_ == 0.0) return std::exp(u);
            if (kind_ == ChartKind::G) return std::pow(h_ * u, 1.0 / h_);
            return std::pow(-h_ * u, -1.0 / h_);
        }
        return invert_monotone(u);
    }

    /** Open image interval; endpoints are finite exactly when the defining
     *  integral converges there. */
    Interval image() const { return image_; }

private:
    ChartKind kind_;
    double h_;
    Geometry geometry_;
    Interval image_;

    // power of the integrand (Euclidean charts included)
    double exponent() const { return kind_ == ChartKind::G ? h_ - 1.0 : -h_ - 1.0; }

    PowerKernel integral_kernel_base() const
    {
        if (kind_ == ChartKind::Xi && geometry_ == Geometry::Hyperbolic)
            return PowerKernel::TanhHalf;
        if (kind_ == ChartKind::Xi && geometry_ == Geometry::Spherical) return PowerKernel::Sin;
        return PowerKernel::Sinh;  // Gamma, and G hyperbolic
    }

    void require_in_domain(double t) const
    {
        const Interval d = domain();
        if (!(t > d.lo && t < d.hi)) throw OutOfDomain("chart argument outside J");
    }

    Interval compute_image() const
    {
        if (geometry_ == Geometry::Euclidean) {
            if (h_ == 0.0) return {-kInf, kInf};
            if (kind_ == ChartKind::G) return h_ > 0 ? Interval{0.0, kInf} : Interval{-kInf, 0.0};
            return h_ > 0 ? Interval{-kInf, 0.0} : Interval{0.0, kInf};
        }
        const double p = exponent();
        const PowerKernel k = integral_kernel_base();
        Interval im{-kInf, kInf};
        // near t = 0 the integrand behaves like (s t)^p: the endpoint value
        // is finite iff p > -1, and power_integral's analytic tail handles
        // the integrable singularity
        if (p > -1.0) im.lo = -power_integral(k, p, 0.0, 1.0);
        if (kind_ == ChartKind::Xi && geometry_ == Geometry::Spherical) {
            if (p > -1.0) im.hi = power_integral(k, p, 1.0, kPi);
        } else if (k == PowerKernel::Sinh && p < 0.0) {
            // sinh^p decays like (e^t/2)^p; tanh^p -> 1 never does
            const double T = std::min(700.0, std::max(4.0, 42.0 / std::min(1.0, -p)));
            const double body = power_integral(k, p, 1.0, T);
            const double tail = std::pow(2.0, -p) * std::exp(p * T) / (-p);
            im.hi = body + tail;
        }
        return im;
    }

    double forward_from(double t) const
    {
        return power_integral(integral_kernel_base(), exponent(), 1.0, t);
    }

    /** Monotone root find for the integral-defined charts. */
    double invert_monotone(double u) const
    {
        const Interval d = domain();
        double lo, hi;
        if (u <= 0.0) {  // forward(1) = 0, so the root is at or below 1
            hi = 1.0;
            lo = 0.5;
            int guard = 0;
            while (forward_from(lo) - u > 0.0) {
                hi = lo;
                lo *= 0.5;
                if (++guard > 1000 || lo < 1e-300)
                    throw OutOfImage("chart inverse: bracketing failed below");
            }
        } else {
            lo = 1.0;
            hi = d.hi < kInf ? 0.5 * (1.0 + d.hi) : 2.0;
            int guard = 0;
            while (forward_from(hi) - u < 0.0) {
                lo = hi;
                hi = d.hi < kInf ? 0.5 * (hi + d.hi) : hi * 2.0;
                if (++guard > 1000) throw OutOfImage("chart inverse: bracketing failed above");
            }
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double fx = forward_from(x) - u;
            if (fx > 0.0)
                hi = x;
            else
                lo = x;
            double xn = x - fx / derivative(x);
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            const double move = std::abs(xn - x);
            x = xn;
            if (move <= 1e-15 * std::max(1.0, std::abs(x))) break;
        }
        return x;
    }
};

}  // namespace polycurv
