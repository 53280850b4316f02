#pragma once

/*!
 * \file triangle_centers.hpp
 * \brief Incenter, excenters and angle-bisector lines of a planar triangle
 *        with vertices in the complex plane.
 *
 * Side lengths follow the usual convention: a = |B - C| is opposite vertex 0,
 * b = |C - A| opposite vertex 1, c = |A - B| opposite vertex 2.
 */

#include <algorithm>
#include <array>
#include <cmath>

#include "confdual/extended_space.hpp"

namespace confdual {

enum class BisectorKind { Internal, External };

struct OrientedLine2 {
    Complex anchor;
    Complex direction; // unit length
};

class Triangle2 {
public:
    Triangle2(Complex a, Complex b, Complex c, const ToleranceConfig& tol = {}) : v_{a, b, c}
    {
        for (const auto& z : v_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw GeometryError(ErrorKind::DegenerateTriangle, "vertex is not finite");
        const double max_side = std::max({std::abs(b - c), std::abs(c - a), std::abs(a - b)});
        if (!(max_side > 0.0) || std::abs(twice_signed_area()) <= tol.eps_degen * max_side * max_side)
            throw GeometryError(ErrorKind::DegenerateTriangle, "vertices are collinear or coincident");
    }

    Triangle2(const ExtendedComplex& a, const ExtendedComplex& b, const ExtendedComplex& c,
              const ToleranceConfig& tol = {})
        : Triangle2(finite_or_throw(a), finite_or_throw(b), finite_or_throw(c), tol)
    {
    }

    const Complex& vertex(int k) const { return v_.at(static_cast<std::size_t>(k)); }

    /// Side length opposite vertex k.
    double side(int k) const { return std::abs(vertex((k + 1) % 3) - vertex((k + 2) % 3)); }

    double twice_signed_area() const
    {
        const Complex ab = v_[1] - v_[0];
        const Complex ac = v_[2] - v_[0];
        return ab.real() * ac.imag() - ab.imag() * ac.real();
    }

private:
    static Complex finite_or_throw(const ExtendedComplex& z)
    {
        if (z.is_infinite())
            throw GeometryError(ErrorKind::DegenerateTriangle, "vertex at infinity");
        return z.value();
    }

    std::array<Complex, 3> v_;
};

namespace detail {
// Weighted vertex average with weights (±a, ±b, ±c); flip selects the
// vertex whose weight is negated (-1 for none).
inline Complex weighted_center(const Triangle2& t, int flip)
{
    Complex num(0.0, 0.0);
    double den = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double w = (k == flip ? -1.0 : 1.0) * t.side(k);
        num += w * t.vertex(k);
        den += w;
    }
    return num / den;
}
} // namespace detail

inline ExtendedComplex incenter(const Triangle2& t)
{
    return ExtendedComplex(detail::weighted_center(t, -1));
}

/// Excenter opposite vertex k, i.e. the weighted average with weights
/// (-a, b, c) for k = 0 and likewise for k = 1, 2.
///
/// With u, v the edges leaving vertex k, the denominator b + c - a equals
/// 2(|u||v| + u·v) / perimeter. For an obtuse angle at k the sum cancels,
/// and (u×v)^2 / (|u||v| - u·v) is used instead, which keeps the error
/// proportional to the flatness of the triangle rather than its square.
inline ExtendedComplex excenter(const Triangle2& t, int k)
{
    if (k < 0 || k > 2)
        throw GeometryError(ErrorKind::InvalidArgument, "vertex index out of range");
    const Complex vk = t.vertex(k);
    const Complex u = t.vertex((k + 1) % 3) - vk;
    const Complex v = t.vertex((k + 2) % 3) - vk;
    const double lu = std::abs(u);
    const double lv = std::abs(v);
    const double dot = u.real() * v.real() + u.imag() * v.imag();
    const double cross = u.real() * v.imag() - u.imag() * v.real();
    const double sum = dot >= 0.0 ? lu * lv + dot : cross * cross / (lu * lv - dot);
    const double den = 2.0 * sum / (t.side(0) + t.side(1) + t.side(2));
    if (!(den > 0.0))
        throw GeometryError(ErrorKind::DegenerateTriangle, "excenter denominator vanishes");
    const Complex z = vk + (lv * u + lu * v) / den;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw GeometryError(ErrorKind::DegenerateTriangle, "excenter overflows");
    return ExtendedComplex(z);
}

inline OrientedLine2 bisector_line(const Triangle2& t, int k, BisectorKind kind)
{
    if (k < 0 || k > 2)
        throw GeometryError(ErrorKind::InvalidArgument, "vertex index out of range");
    const Complex v = t.vertex(k);
    const Complex to_next = t.vertex((k + 1) % 3) - v;
    const Complex to_prev = t.vertex((k + 2) % 3) - v;
    const Complex internal = to_next / std::abs(to_next) + to_prev / std::abs(to_prev);
    Complex dir = internal / std::abs(internal);
    if (kind == BisectorKind::External)
        dir *= Complex(0.0, -1.0);
    return OrientedLine2{v, dir};
}

/// Distance from p to the line through a and b.
inline double line_distance(Complex p, Complex a, Complex b)
{
    const Complex d = b - a;
    const Complex w = p - a;
    return std::abs(d.real() * w.imag() - d.imag() * w.real()) / std::abs(d);
}

} // namespace confdual
