#pragma once

/*!
 * \file extended_space.hpp
 * \brief Points of the one-point compactifications R^3 ∪ {∞} and C ∪ {∞},
 *        the chordal metric used to compare them, and tolerance settings.
 *
 * Every comparison in the library goes through the chordal metric, which is
 * the Euclidean distance after embedding the compactified space in the unit
 * sphere one dimension up. The ideal point then behaves like any other point.
 */

#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Core>

#include "confdual/error.hpp"

namespace confdual {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

namespace detail {
inline bool all_finite(const Vec3& v)
{
    return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}
} // namespace detail

/// A point of R^3 ∪ {∞}. Finite coordinates are always finite reals.
class ExtendedPoint3 {
public:
    /// Defaults to the origin.
    ExtendedPoint3() : coords_(Vec3::Zero()) {}

    ExtendedPoint3(double x, double y, double z) : ExtendedPoint3(Vec3(x, y, z)) {}

    explicit ExtendedPoint3(const Vec3& v) : coords_(v)
    {
        if (!detail::all_finite(v))
            throw GeometryError(ErrorKind::InvalidArgument, "non-finite point coordinate");
    }

    static ExtendedPoint3 infinity()
    {
        ExtendedPoint3 p;
        p.coords_.reset();
        return p;
    }

    bool is_infinite() const noexcept { return !coords_.has_value(); }
    bool is_finite() const noexcept { return coords_.has_value(); }

    /// Coordinates of a finite point. Throws on the ideal point.
    const Vec3& coords() const
    {
        if (!coords_)
            throw GeometryError(ErrorKind::InvalidArgument, "coordinates of the point at infinity");
        return *coords_;
    }

    friend bool operator==(const ExtendedPoint3& a, const ExtendedPoint3& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() && b.is_infinite();
        return *a.coords_ == *b.coords_;
    }

private:
    std::optional<Vec3> coords_;
};

/// A point of C ∪ {∞}.
class ExtendedComplex {
public:
    ExtendedComplex() : value_(Complex(0.0, 0.0)) {}
    ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(Complex(re, im)) {}
    ExtendedComplex(Complex z) : value_(z)
    {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw GeometryError(ErrorKind::InvalidArgument, "non-finite complex value");
    }

    static ExtendedComplex infinity()
    {
        ExtendedComplex z;
        z.value_.reset();
        return z;
    }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }

    Complex value() const
    {
        if (!value_)
            throw GeometryError(ErrorKind::InvalidArgument, "value of the complex point at infinity");
        return *value_;
    }

    friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() && b.is_infinite();
        return *a.value_ == *b.value_;
    }

private:
    std::optional<Complex> value_;
};

/// Comparison thresholds. Defaults: 1e-9 for single algebraic steps, 1e-7
/// for multi-stage pipelines, 1e-6 for declaring a configuration degenerate.
struct ToleranceConfig {
    double eps_alg = 1e-9;
    double eps_pipe = 1e-7;
    double eps_degen = 1e-6;

    void validate() const
    {
        if (!(eps_alg > 0.0) || !(eps_alg <= eps_pipe) || !(eps_degen > 0.0))
            throw GeometryError(ErrorKind::InvalidArgument,
                                "tolerances must satisfy 0 < eps_alg <= eps_pipe and eps_degen > 0");
    }
};

/// Chordal distance on R^3 ∪ {∞}; bounded by 2, zero iff the points coincide.
inline double chordal_distance(const ExtendedPoint3& p, const ExtendedPoint3& q)
{
    if (p.is_infinite() && q.is_infinite())
        return 0.0;
    if (p.is_infinite())
        return 2.0 / std::sqrt(1.0 + q.coords().squaredNorm());
    if (q.is_infinite())
        return 2.0 / std::sqrt(1.0 + p.coords().squaredNorm());
    const Vec3& a = p.coords();
    const Vec3& b = q.coords();
    return 2.0 * (a - b).norm() / std::sqrt((1.0 + a.squaredNorm()) * (1.0 + b.squaredNorm()));
}

inline double chordal_distance(const ExtendedComplex& z, const ExtendedComplex& w)
{
    auto lift = [](const ExtendedComplex& c) {
        if (c.is_infinite())
            return ExtendedPoint3::infinity();
        return ExtendedPoint3(c.value().real(), c.value().imag(), 0.0);
    };
    return chordal_distance(lift(z), lift(w));
}

inline bool approx_eq(const ExtendedPoint3& p, const ExtendedPoint3& q, double tol)
{
    if (!(tol > 0.0))
        throw GeometryError(ErrorKind::InvalidArgument, "tolerance must be positive");
    return chordal_distance(p, q) < tol;
}

} // namespace confdual
