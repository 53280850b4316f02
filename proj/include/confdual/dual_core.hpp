#pragma once

/*!
 * \file dual_core.hpp
 * \brief The conformal dual of a quadruplet of points in R^3 ∪ {∞}, circular
 *        angle bisectors, and cross ratios.
 *
 * For four non-cocircular points, the dual is computed in a stereographic
 * chart of their common sphere centered at one of the points: the images of
 * the other three points span a triangle, and the dual points are the
 * preimages of its incenter (for the pole) and its excenters (for the other
 * three, each excenter taken opposite the point's own image).
 *
 * When the common generalized sphere is a plane, the quadruplet is first
 * moved onto a round sphere by an inversion, and the result is mapped back.
 * For cocircular quadruplets, each point is exchanged with the point
 * diagonal to it in the cyclic order along the circle.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confdual/moebius.hpp"
#include "confdual/projection.hpp"
#include "confdual/triangle_centers.hpp"

namespace confdual {

/// An ordered 4-tuple of pairwise distinct points.
class Quadruplet {
public:
    using Points = std::array<ExtendedPoint3, 4>;

    explicit Quadruplet(Points p, const ToleranceConfig& tol = {}) : p_(std::move(p))
    {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                if (chordal_distance(p_[i], p_[j]) < tol.eps_degen)
                    throw GeometryError(ErrorKind::DegenerateInput,
                                        "points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " coincide");
    }

    const ExtendedPoint3& operator[](std::size_t i) const { return p_.at(i); }
    const Points& points() const noexcept { return p_; }

    /// Möbius-invariant distance from cocircularity (see cocircularity_defect).
    double cocircularity(const ToleranceConfig& tol = {}) const
    {
        return cocircularity_defect(p_[0], p_[1], p_[2], p_[3], tol);
    }

private:
    Points p_;
};

inline Quadruplet transform(const MoebiusMap& m, const Quadruplet& q, const ToleranceConfig& tol = {})
{
    return Quadruplet({m(q[0]), m(q[1]), m(q[2]), m(q[3])}, tol);
}

/// Largest per-point chordal distance between two quadruplets.
inline double max_chordal_error(const Quadruplet& a, const Quadruplet& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        worst = std::max(worst, chordal_distance(a[i], b[i]));
    return worst;
}

using Carrier = std::variant<GeneralizedSphere, OrientedCircle3>;

struct DualResult {
    Quadruplet dual;
    bool cocircular = false;
    /// Σ for the generic case, the common generalized circle otherwise.
    Carrier carrier;
    std::size_t chart_pole = 0;
    /// The inversion used to move a planar Σ onto a round sphere.
    std::optional<MoebiusMap> normalization;
    std::map<std::string, double> residuals;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::array<std::size_t, 3> others(std::size_t pole)
{
    std::array<std::size_t, 3> out{};
    std::size_t m = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != pole)
            out[m++] = i;
    return out;
}

/// Inversion in the unit sphere centered 2D above the centroid of the finite
/// points along the plane normal, D being their largest pairwise distance.
inline MoebiusMap plane_normalization(const Quadruplet& q, const GeneralizedSphere::Plane& plane)
{
    Vec3 centroid = Vec3::Zero();
    int count = 0;
    double diameter = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (q[i].is_infinite())
            continue;
        centroid += q[i].coords();
        ++count;
        for (std::size_t j = i + 1; j < 4; ++j)
            if (q[j].is_finite())
                diameter = std::max(diameter, (q[i].coords() - q[j].coords()).norm());
    }
    centroid /= count;
    const Vec3 center = centroid + 2.0 * diameter * plane.normal;
    return MoebiusMap({Inversion{GeneralizedSphere::sphere(center, 1.0)}});
}

inline Quadruplet::Points dual_in_chart(const Quadruplet& q, const GeneralizedSphere& sigma, std::size_t pole,
                                        const ToleranceConfig& tol)
{
    const auto chart = make_chart(sigma, q[pole], tol);
    const auto idx = others(pole);
    const Triangle2 tri(project(chart, q[idx[0]], tol), project(chart, q[idx[1]], tol),
                        project(chart, q[idx[2]], tol), tol);
    Quadruplet::Points out;
    out[pole] = unproject(chart, incenter(tri));
    for (int m = 0; m < 3; ++m)
        out[idx[static_cast<std::size_t>(m)]] = unproject(chart, excenter(tri, m));
    return out;
}

inline Quadruplet::Points map_points(const MoebiusMap& m, const Quadruplet::Points& p)
{
    return {m(p[0]), m(p[1]), m(p[2]), m(p[3])};
}

inline double cyclic_position_gap(std::array<double, 4> pos)
{
    std::sort(pos.begin(), pos.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < 4; ++i)
        gap = std::min(gap, pos[i + 1] - pos[i]);
    return gap;
}

} // namespace detail

/// Exchange each point of a cocircular quadruplet with its diagonal partner
/// in the cyclic order along the common circle. When the labels already run
/// along the circle this is (P3, P4, P1, P2).
inline Quadruplet cocircular_dual(const Quadruplet& q, const ToleranceConfig& tol = {})
{
    if (q.cocircularity(tol) >= tol.eps_degen)
        throw GeometryError(ErrorKind::NotCocircular, "points do not lie on a common circle");
    const auto carrier = circle_through(q[0], q[1], q[2], tol);

    std::array<double, 4> pos{};
    if (carrier.is_circle()) {
        const auto& c = carrier.as_circle();
        Vec3 u = q[0].coords() - c.center;
        u = (u - u.dot(c.normal) * c.normal).normalized();
        const Vec3 v = c.normal.cross(u);
        for (std::size_t i = 0; i < 4; ++i) {
            if (q[i].is_infinite())
                throw GeometryError(ErrorKind::NotCocircular, "ideal point on a bounded circle");
            const Vec3 d = q[i].coords() - c.center;
            const double a = std::atan2(d.dot(v), d.dot(u));
            pos[i] = a < 0.0 ? a + 2.0 * std::numbers::pi : a;
        }
        pos[0] = 0.0;
    } else {
        const auto& l = carrier.as_line();
        for (std::size_t i = 0; i < 4; ++i)
            pos[i] = q[i].is_infinite() ? std::numeric_limits<double>::infinity()
                                        : (q[i].coords() - l.anchor).dot(l.direction);
    }
    if (!(detail::cyclic_position_gap(pos) > 0.0))
        throw GeometryError(ErrorKind::DegenerateInput, "two points share a position on the circle");

    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });
    Quadruplet::Points out;
    for (std::size_t m = 0; m < 4; ++m)
        out[order[m]] = q[order[(m + 2) % 4]];
    return Quadruplet(out, tol);
}

/// The generalized sphere through q, or for cocircular q a sphere containing
/// the common circle (the plane through it when the circle is a line).
inline GeneralizedSphere carrier_sphere(const Quadruplet& q, const ToleranceConfig& tol = {})
{
    if (q.cocircularity(tol) >= tol.eps_degen)
        return circumsphere(q[0], q[1], q[2], q[3], tol);
    const auto c = circle_through(q[0], q[1], q[2], tol);
    if (c.is_circle())
        return GeneralizedSphere::sphere(c.as_circle().center, c.as_circle().radius);
    const auto& l = c.as_line();
    const Vec3 n = detail::complete_frame(l.direction).first;
    return GeneralizedSphere::plane(n, n.dot(l.anchor));
}

/// Dual computed in the chart centered at q[pole]. The dual itself does not
/// depend on the pole; dual() uses pole 0.
inline DualResult dual_with_pole(const Quadruplet& q, std::size_t pole, const ToleranceConfig& tol = {})
{
    tol.validate();
    if (pole > 3)
        throw GeometryError(ErrorKind::InvalidArgument, "pole index out of range");

    const double cocirc = q.cocircularity(tol);
    if (cocirc < tol.eps_degen) {
        DualResult r{cocircular_dual(q, tol), true, circle_through(q[0], q[1], q[2], tol), pole, std::nullopt, {}, {}};
        r.residuals["cocircularity"] = cocirc;
        return r;
    }

    const auto sigma = circumsphere(q[0], q[1], q[2], q[3], tol);
    Quadruplet::Points points;
    std::optional<MoebiusMap> normalization;
    if (sigma.is_plane()) {
        const auto j = detail::plane_normalization(q, sigma.as_plane());
        const Quadruplet moved = transform(j, q, tol);
        const auto moved_sigma = circumsphere(moved[0], moved[1], moved[2], moved[3], tol);
        if (!moved_sigma.is_sphere())
            throw GeometryError(ErrorKind::DegenerateInput, "normalization failed to produce a round sphere");
        points = detail::map_points(j, detail::dual_in_chart(moved, moved_sigma, pole, tol));
        normalization = j;
    } else {
        points = detail::dual_in_chart(q, sigma, pole, tol);
    }

    DualResult r{Quadruplet(points, tol), false, sigma, pole, normalization, {}, {}};
    r.residuals["cocircularity"] = cocirc;
    double cosph = 0.0;
    for (const auto& p : points)
        cosph = std::max(cosph, sigma.residual(p));
    r.residuals["cospherical"] = cosph;
    if (cocirc < 10.0 * tol.eps_degen)
        r.warnings.emplace_back("NearDegenerate");
    return r;
}

inline DualResult dual(const Quadruplet& q, const ToleranceConfig& tol = {}) { return dual_with_pole(q, 0, tol); }

/// Circular angle bisector Γ_ij: the preimage, under the chart centered at
/// P_i, of the bisector at the image of P_j in the triangle of the images of
/// the points other than P_i. Oriented so that P_i, P_j come first.
inline OrientedCircle3 circular_angle_bisector(const Quadruplet& q, std::size_t i, std::size_t j,
                                               const ToleranceConfig& tol = {},
                                               BisectorKind kind = BisectorKind::Internal)
{
    if (i > 3 || j > 3 || i == j)
        throw GeometryError(ErrorKind::InvalidArgument, "bisector needs two distinct indices");
    if (q.cocircularity(tol) < tol.eps_degen)
        throw GeometryError(ErrorKind::Cocircular, "bisector of a cocircular quadruplet");

    const auto sigma = circumsphere(q[0], q[1], q[2], q[3], tol);
    std::optional<MoebiusMap> j_map;
    Quadruplet work = q;
    GeneralizedSphere work_sigma = sigma;
    if (sigma.is_plane()) {
        j_map = detail::plane_normalization(q, sigma.as_plane());
        work = transform(*j_map, q, tol);
        work_sigma = circumsphere(work[0], work[1], work[2], work[3], tol);
    }

    const auto chart = make_chart(work_sigma, work[i], tol);
    const auto idx = detail::others(i);
    const Triangle2 tri(project(chart, work[idx[0]], tol), project(chart, work[idx[1]], tol),
                        project(chart, work[idx[2]], tol), tol);
    const int slot = static_cast<int>(std::find(idx.begin(), idx.end(), j) - idx.begin());
    const auto line = bisector_line(tri, slot, kind);
    const double scale = (tri.side(0) + tri.side(1) + tri.side(2)) / 3.0;
    ExtendedPoint3 third = unproject(chart, ExtendedComplex(line.anchor + scale * line.direction));
    if (j_map)
        third = (*j_map)(third);
    return circle_through(q[i], q[j], third, tol);
}

/// Cross ratio (z2 - z1)/(z2 - z4) · (z3 - z4)/(z3 - z1) of four points of
/// C ∪ {∞}; factors sharing an ideal point cancel.
inline ExtendedComplex cross_ratio(const std::array<ExtendedComplex, 4>& z)
{
    int inf = -1;
    for (int k = 0; k < 4; ++k)
        if (z[static_cast<std::size_t>(k)].is_infinite()) {
            if (inf >= 0)
                return ExtendedComplex::infinity();
            inf = k;
        }
    auto v = [&](int k) { return z[static_cast<std::size_t>(k)].value(); };
    Complex num, den;
    switch (inf) {
    case 0: num = v(2) - v(3); den = v(1) - v(3); break;
    case 1: num = v(2) - v(3); den = v(2) - v(0); break;
    case 2: num = v(1) - v(0); den = v(1) - v(3); break;
    case 3: num = v(1) - v(0); den = v(2) - v(0); break;
    default:
        num = (v(1) - v(0)) * (v(2) - v(3));
        den = (v(1) - v(3)) * (v(2) - v(0));
    }
    if (den == Complex(0.0, 0.0))
        return ExtendedComplex::infinity();
    return ExtendedComplex(num / den);
}

inline ExtendedComplex cross_ratio(const Quadruplet& q, const StereographicChart& chart,
                                   const ToleranceConfig& tol = {})
{
    return cross_ratio({project(chart, q[0], tol), project(chart, q[1], tol), project(chart, q[2], tol),
                        project(chart, q[3], tol)});
}

/// Cross ratio on a given generalized sphere: chart at q[pole] for a round
/// sphere, in-plane coordinates (frame oriented by the normal) for a plane.
inline ExtendedComplex cross_ratio_on(const GeneralizedSphere& sigma, const Quadruplet& q, std::size_t pole,
                                      const ToleranceConfig& tol = {})
{
    if (sigma.is_sphere())
        return cross_ratio(q, make_chart(sigma, q.points().at(pole), tol), tol);
    const auto& pl = sigma.as_plane();
    const auto [e1, e2] = detail::complete_frame(pl.normal);
    std::array<ExtendedComplex, 4> z;
    for (std::size_t k = 0; k < 4; ++k) {
        if (sigma.residual(q[k]) >= tol.eps_alg)
            throw GeometryError(ErrorKind::NotOnSphere, "point does not lie on the plane");
        z[k] = q[k].is_infinite() ? ExtendedComplex::infinity()
                                  : ExtendedComplex(q[k].coords().dot(e1), q[k].coords().dot(e2));
    }
    return cross_ratio(z);
}

} // namespace confdual
