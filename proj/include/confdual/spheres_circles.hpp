#pragma once

/*!
 * \file spheres_circles.hpp
 * \brief Generalized spheres (sphere or plane ∪ {∞}) and oriented generalized
 *        circles (circle or line ∪ {∞}) in R^3 ∪ {∞}: fitting through points,
 *        containment residuals, inversion and tangent angles.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "confdual/extended_space.hpp"

namespace confdual {

namespace detail {

/// Right-handed frame (e1, e2, n) completing a unit vector n. e1 is built from
/// the coordinate axis least aligned with n; ties go to the smaller index.
inline std::pair<Vec3, Vec3> complete_frame(const Vec3& n)
{
    int axis = 0;
    double best = std::abs(n[0]);
    for (int k = 1; k < 3; ++k) {
        if (std::abs(n[k]) < best) {
            best = std::abs(n[k]);
            axis = k;
        }
    }
    const Vec3 a = Vec3::Unit(axis);
    const Vec3 e1 = (a - a.dot(n) * n).normalized();
    const Vec3 e2 = n.cross(e1);
    return {e1, e2};
}

inline void require_distinct(std::initializer_list<const ExtendedPoint3*> pts, double eps)
{
    for (auto i = pts.begin(); i != pts.end(); ++i)
        for (auto j = std::next(i); j != pts.end(); ++j)
            if (chordal_distance(**i, **j) < eps)
                throw GeometryError(ErrorKind::DegenerateInput, "coincident points");
}

// Flip a normal so that its largest-magnitude component is positive.
inline Vec3 canonical_normal(Vec3 n)
{
    Eigen::Index k;
    n.cwiseAbs().maxCoeff(&k);
    return n[k] < 0.0 ? Vec3(-n) : n;
}

} // namespace detail

/// A sphere, or a plane together with the point at infinity.
class GeneralizedSphere {
public:
    struct Sphere {
        Vec3 center;
        double radius;
    };
    /// {x : normal·x = offset} ∪ {∞}
    struct Plane {
        Vec3 normal;
        double offset;
    };

    static GeneralizedSphere sphere(const Vec3& center, double radius)
    {
        if (!(radius > 0.0) || !std::isfinite(radius) || !detail::all_finite(center))
            throw GeometryError(ErrorKind::InvalidArgument, "sphere radius must be positive and finite");
        return GeneralizedSphere(Sphere{center, radius});
    }

    static GeneralizedSphere plane(const Vec3& normal, double offset)
    {
        const double len = normal.norm();
        if (!(len > 0.0) || !detail::all_finite(normal) || !std::isfinite(offset))
            throw GeometryError(ErrorKind::InvalidArgument, "plane normal must be nonzero");
        return GeneralizedSphere(Plane{normal / len, offset / len});
    }

    bool is_sphere() const noexcept { return std::holds_alternative<Sphere>(shape_); }
    bool is_plane() const noexcept { return std::holds_alternative<Plane>(shape_); }
    const Sphere& as_sphere() const { return std::get<Sphere>(shape_); }
    const Plane& as_plane() const { return std::get<Plane>(shape_); }

    /// Chordal distance from p to the nearest Euclidean point of the surface
    /// (for p = ∞ on a sphere: the point of largest norm).
    double residual(const ExtendedPoint3& p) const
    {
        if (const auto* s = std::get_if<Sphere>(&shape_)) {
            if (p.is_infinite()) {
                const double cn = s->center.norm();
                const Vec3 dir = cn > 0.0 ? Vec3(s->center / cn) : Vec3::UnitX();
                return chordal_distance(p, ExtendedPoint3(s->center + s->radius * dir));
            }
            const Vec3 d = p.coords() - s->center;
            const double dn = d.norm();
            const Vec3 dir = dn > 0.0 ? Vec3(d / dn) : Vec3::UnitX();
            return chordal_distance(p, ExtendedPoint3(s->center + s->radius * dir));
        }
        const auto& pl = std::get<Plane>(shape_);
        if (p.is_infinite())
            return 0.0;
        const Vec3& x = p.coords();
        return chordal_distance(p, ExtendedPoint3(x - (pl.normal.dot(x) - pl.offset) * pl.normal));
    }

    bool contains(const ExtendedPoint3& p, double tol) const { return residual(p) < tol; }

private:
    explicit GeneralizedSphere(std::variant<Sphere, Plane> s) : shape_(std::move(s)) {}
    std::variant<Sphere, Plane> shape_;
};

/// An oriented circle, or an oriented line together with the point at
/// infinity. The orientation is the cyclic order of the three support points.
class OrientedCircle3 {
public:
    /// Traversed counterclockwise when viewed from the tip of `normal`.
    struct Circle {
        Vec3 center;
        double radius;
        Vec3 normal;
    };
    struct Line {
        Vec3 anchor;
        Vec3 direction;
    };
    using Support = std::array<ExtendedPoint3, 3>;

    OrientedCircle3(Circle c, Support support) : shape_(c), support_(std::move(support)) {}
    OrientedCircle3(Line l, Support support) : shape_(l), support_(std::move(support)) {}

    bool is_circle() const noexcept { return std::holds_alternative<Circle>(shape_); }
    bool is_line() const noexcept { return std::holds_alternative<Line>(shape_); }
    const Circle& as_circle() const { return std::get<Circle>(shape_); }
    const Line& as_line() const { return std::get<Line>(shape_); }
    const Support& support() const noexcept { return support_; }

    /// Same carrier, opposite orientation.
    OrientedCircle3 reversed() const
    {
        Support rev{support_[2], support_[1], support_[0]};
        if (const auto* c = std::get_if<Circle>(&shape_))
            return OrientedCircle3(Circle{c->center, c->radius, -c->normal}, rev);
        const auto& l = std::get<Line>(shape_);
        return OrientedCircle3(Line{l.anchor, -l.direction}, rev);
    }

    /// Chordal distance from p to the nearest Euclidean point of the carrier.
    double residual(const ExtendedPoint3& p) const
    {
        if (const auto* c = std::get_if<Circle>(&shape_)) {
            if (p.is_infinite()) {
                const Vec3 radial = c->center - c->center.dot(c->normal) * c->normal;
                const double rn = radial.norm();
                const Vec3 dir = rn > 0.0 ? Vec3(radial / rn) : detail::complete_frame(c->normal).first;
                return chordal_distance(p, ExtendedPoint3(c->center + c->radius * dir));
            }
            Vec3 d = p.coords() - c->center;
            d -= d.dot(c->normal) * c->normal;
            const double dn = d.norm();
            const Vec3 dir = dn > 0.0 ? Vec3(d / dn) : detail::complete_frame(c->normal).first;
            return chordal_distance(p, ExtendedPoint3(c->center + c->radius * dir));
        }
        const auto& l = std::get<Line>(shape_);
        if (p.is_infinite())
            return 0.0;
        const Vec3& x = p.coords();
        return chordal_distance(p, ExtendedPoint3(l.anchor + (x - l.anchor).dot(l.direction) * l.direction));
    }

    /// Unit tangent in the direction of traversal at a point of the carrier.
    Vec3 tangent_at(const ExtendedPoint3& at, double tol) const
    {
        if (residual(at) >= tol)
            throw GeometryError(ErrorKind::NotOnCircle, "point is not on the circle");
        if (const auto* c = std::get_if<Circle>(&shape_))
            return c->normal.cross(at.coords() - c->center).normalized();
        return std::get<Line>(shape_).direction;
    }

    /// n points spread along the carrier (for a line, around the anchor at
    /// the given length scale, never including ∞).
    std::vector<ExtendedPoint3> sample(int n, double line_scale = 1.0) const
    {
        std::vector<ExtendedPoint3> out;
        out.reserve(static_cast<std::size_t>(n));
        if (const auto* c = std::get_if<Circle>(&shape_)) {
            const auto [u, v] = detail::complete_frame(c->normal);
            for (int k = 0; k < n; ++k) {
                const double t = 2.0 * std::numbers::pi * (k + 0.5) / n;
                out.emplace_back(Vec3(c->center + c->radius * (std::cos(t) * u + std::sin(t) * v)));
            }
            return out;
        }
        const auto& l = std::get<Line>(shape_);
        for (int k = 0; k < n; ++k) {
            const double t = std::tan(std::numbers::pi * ((k + 0.5) / n - 0.5));
            out.emplace_back(Vec3(l.anchor + line_scale * t * l.direction));
        }
        return out;
    }

private:
    std::variant<Circle, Line> shape_;
    Support support_;
};

/// The generalized circle through three distinct points, oriented by their
/// order. Near-collinear triples (circumradius beyond max side / eps_degen)
/// become lines.
inline OrientedCircle3 circle_through(const ExtendedPoint3& p, const ExtendedPoint3& q,
                                      const ExtendedPoint3& r, const ToleranceConfig& tol = {})
{
    detail::require_distinct({&p, &q, &r}, tol.eps_degen);
    OrientedCircle3::Support support{p, q, r};

    if (p.is_infinite() || q.is_infinite() || r.is_infinite()) {
        // Rotate the cyclic order so that it starts right after ∞.
        const ExtendedPoint3* a;
        const ExtendedPoint3* b;
        if (p.is_infinite()) {
            a = &q;
            b = &r;
        } else if (q.is_infinite()) {
            a = &r;
            b = &p;
        } else {
            a = &p;
            b = &q;
        }
        const Vec3& anchor = p.is_finite() ? p.coords() : q.coords();
        const Vec3 dir = (b->coords() - a->coords()).normalized();
        return OrientedCircle3(OrientedCircle3::Line{anchor, dir}, support);
    }

    const Vec3& a = p.coords();
    const Vec3 ab = q.coords() - a;
    const Vec3 ac = r.coords() - a;
    const Vec3 n = ab.cross(ac);
    const double max_side = std::max({ab.norm(), ac.norm(), (r.coords() - q.coords()).norm()});
    const double n2 = n.squaredNorm();

    if (n2 > 0.0) {
        const Vec3 offset = (n.cross(ab) * ac.squaredNorm() + ac.cross(n) * ab.squaredNorm()) / (2.0 * n2);
        const double radius = offset.norm();
        if (radius * tol.eps_degen <= max_side)
            return OrientedCircle3(OrientedCircle3::Circle{a + offset, radius, n / std::sqrt(n2)}, support);
    }

    // Collinear: orient along q - p unless the cyclic order p, q, r runs backwards.
    Vec3 dir = ab.normalized();
    const double tq = ab.norm();
    const double tr = ac.dot(dir);
    if (tr > 0.0 && tr < tq)
        dir = -dir;
    return OrientedCircle3(OrientedCircle3::Line{a, dir}, support);
}

/// Chordal residual of p4 from the generalized circle through p1, p2, p3.
inline double cocircularity_residual(const ExtendedPoint3& p1, const ExtendedPoint3& p2,
                                     const ExtendedPoint3& p3, const ExtendedPoint3& p4,
                                     const ToleranceConfig& tol = {})
{
    detail::require_distinct({&p1, &p2, &p3, &p4}, tol.eps_degen);
    return circle_through(p1, p2, p3, tol).residual(p4);
}

/// Möbius-invariant distance from cocircularity: with a >= b >= c the three
/// products |12||34|, |13||24|, |14||23|, returns sqrt((b + c - a) / a).
/// Ptolemy's inequality makes this nonnegative, and it vanishes exactly on
/// generalized circles. Distances to ∞ cancel from every ratio and are
/// taken as 1.
inline double cocircularity_defect(const ExtendedPoint3& p1, const ExtendedPoint3& p2, const ExtendedPoint3& p3,
                                   const ExtendedPoint3& p4, const ToleranceConfig& tol = {})
{
    detail::require_distinct({&p1, &p2, &p3, &p4}, tol.eps_degen);
    auto dist = [](const ExtendedPoint3& a, const ExtendedPoint3& b) {
        if (a.is_infinite() || b.is_infinite())
            return 1.0;
        return (a.coords() - b.coords()).norm();
    };
    std::array<double, 3> prod{dist(p1, p2) * dist(p3, p4), dist(p1, p3) * dist(p2, p4),
                               dist(p1, p4) * dist(p2, p3)};
    std::sort(prod.begin(), prod.end());
    return std::sqrt(std::max(0.0, (prod[0] + prod[1] - prod[2]) / prod[2]));
}

/// True when the four points lie on one generalized circle (lines count),
/// judged by cocircularity_defect.
inline bool is_cocircular(const ExtendedPoint3& p1, const ExtendedPoint3& p2, const ExtendedPoint3& p3,
                          const ExtendedPoint3& p4, double threshold, const ToleranceConfig& tol = {})
{
    return cocircularity_defect(p1, p2, p3, p4, tol) < threshold;
}

/// The generalized sphere through four distinct, non-cocircular points.
/// Any ideal point or a vanishing scaled determinant yields a plane.
inline GeneralizedSphere circumsphere(const ExtendedPoint3& p1, const ExtendedPoint3& p2,
                                      const ExtendedPoint3& p3, const ExtendedPoint3& p4,
                                      const ToleranceConfig& tol = {})
{
    if (is_cocircular(p1, p2, p3, p4, tol.eps_degen, tol))
        throw GeometryError(ErrorKind::Cocircular, "no unique sphere through cocircular points");

    const std::array<const ExtendedPoint3*, 4> pts{&p1, &p2, &p3, &p4};
    std::vector<Vec3> finite;
    for (const auto* p : pts)
        if (p->is_finite())
            finite.push_back(p->coords());

    auto plane_through_best_triple = [&]() {
        Vec3 best = Vec3::Zero();
        Vec3 base = finite[0];
        for (std::size_t i = 0; i < finite.size(); ++i)
            for (std::size_t j = i + 1; j < finite.size(); ++j)
                for (std::size_t k = j + 1; k < finite.size(); ++k) {
                    const Vec3 n = (finite[j] - finite[i]).cross(finite[k] - finite[i]);
                    if (n.squaredNorm() > best.squaredNorm()) {
                        best = n;
                        base = finite[i];
                    }
                }
        const Vec3 n = detail::canonical_normal(best.normalized());
        return GeneralizedSphere::plane(n, n.dot(base));
    };

    if (finite.size() < 4)
        return plane_through_best_triple();

    // 2 (p_i - p_1) · y = |p_i - p_1|^2 with y = center - p_1.
    Mat3 m;
    Vec3 rhs;
    for (int i = 0; i < 3; ++i) {
        const Vec3 d = finite[static_cast<std::size_t>(i) + 1] - finite[0];
        m.row(i) = 2.0 * d.transpose();
        rhs[i] = d.squaredNorm();
    }
    const double scale = m.row(0).norm() * m.row(1).norm() * m.row(2).norm();
    if (std::abs(m.determinant()) < tol.eps_degen * scale)
        return plane_through_best_triple();

    const Vec3 y = m.colPivHouseholderQr().solve(rhs);
    return GeneralizedSphere::sphere(finite[0] + y, y.norm());
}

/// Inversion in a sphere, or reflection in a plane.
inline ExtendedPoint3 invert(const GeneralizedSphere& mirror, const ExtendedPoint3& p)
{
    if (mirror.is_sphere()) {
        const auto& s = mirror.as_sphere();
        if (p.is_infinite())
            return ExtendedPoint3(s.center);
        const Vec3 d = p.coords() - s.center;
        const double d2 = d.squaredNorm();
        if (d2 == 0.0)
            return ExtendedPoint3::infinity();
        return ExtendedPoint3(Vec3(s.center + (s.radius * s.radius / d2) * d));
    }
    if (p.is_infinite())
        return p;
    const auto& pl = mirror.as_plane();
    const Vec3& x = p.coords();
    return ExtendedPoint3(Vec3(x - 2.0 * (pl.normal.dot(x) - pl.offset) * pl.normal));
}

/// Angle in [0, π] between the oriented tangents of two generalized circles
/// at a common point. At ∞ (two lines) this is the angle between directions.
inline double circle_angle_at(const OrientedCircle3& c1, const OrientedCircle3& c2, const ExtendedPoint3& at,
                              const ToleranceConfig& tol = {})
{
    const Vec3 t1 = c1.tangent_at(at, tol.eps_alg);
    const Vec3 t2 = c2.tangent_at(at, tol.eps_alg);
    return std::atan2(t1.cross(t2).norm(), t1.dot(t2));
}

} // namespace confdual
