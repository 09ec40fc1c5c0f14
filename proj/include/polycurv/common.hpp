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
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace polycurv {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/** Constant-curvature background geometry of a triangle or metric. */
enum class Geometry { Euclidean, Hyperbolic, Spherical };

inline const char* to_string(Geometry g)
{
    switch (g) {
        case Geometry::Euclidean: return "euclidean";
        case Geometry::Hyperbolic: return "hyperbolic";
        case Geometry::Spherical: return "spherical";
    }
    return "?";
}

/** Base class for all polycurv exceptions. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define POLYCURV_DEFINE_ERROR(Name)                                           \
    class Name : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
    }

// trig kernel / metric errors
POLYCURV_DEFINE_ERROR(DegenerateTriangle);
POLYCURV_DEFINE_ERROR(NonPositiveLength);
POLYCURV_DEFINE_ERROR(NonPositiveRadius);
POLYCURV_DEFINE_ERROR(UnsupportedGeometry);
POLYCURV_DEFINE_ERROR(IndexMismatch);
POLYCURV_DEFINE_ERROR(SingularIntegrand);
POLYCURV_DEFINE_ERROR(MissingEdgeLength);
// chart errors
POLYCURV_DEFINE_ERROR(OutOfDomain);
POLYCURV_DEFINE_ERROR(OutOfImage);
POLYCURV_DEFINE_ERROR(UnsupportedArity);
// combinatorial surface errors
POLYCURV_DEFINE_ERROR(NonManifoldEdge);
POLYCURV_DEFINE_ERROR(Disconnected);
POLYCURV_DEFINE_ERROR(ClosedSurface);
POLYCURV_DEFINE_ERROR(BadIndex);
POLYCURV_DEFINE_ERROR(NotApplicable);
// solver errors
POLYCURV_DEFINE_ERROR(InfeasibleSpec);
POLYCURV_DEFINE_ERROR(MaxIterations);
POLYCURV_DEFINE_ERROR(LineSearchFailure);
// application errors
POLYCURV_DEFINE_ERROR(NoCyclicPolygon);
POLYCURV_DEFINE_ERROR(LayoutInconsistent);
POLYCURV_DEFINE_ERROR(ParseError);

#undef POLYCURV_DEFINE_ERROR

/** Open interval, possibly unbounded on either side. */
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double x) const { return x > lo && x < hi; }
};

/**
 * Deterministic random source. std::uniform_real_distribution is
 * implementation-defined, so doubles are mapped from raw bits directly;
 * identical seeds give identical streams on every platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    /** Uniform double in [0, 1). */
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /** Uniform integer in [a, b] inclusive. */
    int uniform_int(int a, int b)
    {
        return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
    }

    /** Derived generator with a decorrelated seed, for per-check streams. */
    Rng fork(std::uint64_t salt) const
    {
        return Rng(seed_ ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace polycurv
