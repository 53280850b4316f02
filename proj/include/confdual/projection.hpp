#pragma once

/*!
 * \file projection.hpp
 * \brief Stereographic charts identifying a sphere minus a pole with C ∪ {∞}.
 *
 * The image plane is the equatorial plane through the sphere center, with
 * complex coordinates taken in the frame (e1, e2). The pole goes to ∞.
 */

#include <cmath>
#include <limits>

#include "confdual/spheres_circles.hpp"

namespace confdual {

class StereographicChart {
public:
    const GeneralizedSphere::Sphere& sphere() const noexcept { return sphere_; }
    const ExtendedPoint3& pole() const noexcept { return pole_; }
    const Vec3& n() const noexcept { return n_; }
    const Vec3& e1() const noexcept { return e1_; }
    const Vec3& e2() const noexcept { return e2_; }

    /// +1 for charts built by make_chart, -1 after mirrored().
    double orientation() const noexcept { return e1_.cross(e2_).dot(n_) > 0.0 ? 1.0 : -1.0; }

    /// The same chart composed with complex conjugation (e2 negated).
    StereographicChart mirrored() const
    {
        StereographicChart c = *this;
        c.e2_ = -e2_;
        return c;
    }

    /// Residual of p from the underlying sphere, in chordal units.
    double residual(const ExtendedPoint3& p) const
    {
        return GeneralizedSphere::sphere(sphere_.center, sphere_.radius).residual(p);
    }

private:
    StereographicChart(GeneralizedSphere::Sphere s, ExtendedPoint3 pole, Vec3 n, Vec3 e1, Vec3 e2)
        : sphere_(s), pole_(std::move(pole)), n_(n), e1_(e1), e2_(e2)
    {
    }

    friend StereographicChart make_chart(const GeneralizedSphere&, const ExtendedPoint3&, const ToleranceConfig&);

    GeneralizedSphere::Sphere sphere_;
    ExtendedPoint3 pole_;
    Vec3 n_, e1_, e2_;
};

inline StereographicChart make_chart(const GeneralizedSphere& sigma, const ExtendedPoint3& pole,
                                     const ToleranceConfig& tol = {})
{
    if (!sigma.is_sphere())
        throw GeometryError(ErrorKind::PlaneSigma, "stereographic chart needs a round sphere");
    if (pole.is_infinite() || sigma.residual(pole) >= tol.eps_alg)
        throw GeometryError(ErrorKind::PoleNotOnSphere, "pole does not lie on the sphere");
    const auto& s = sigma.as_sphere();
    const Vec3 n = (pole.coords() - s.center).normalized();
    const auto [e1, e2] = detail::complete_frame(n);
    return StereographicChart(s, pole, n, e1, e2);
}

inline ExtendedComplex project(const StereographicChart& chart, const ExtendedPoint3& p,
                               const ToleranceConfig& tol = {})
{
    if (chart.residual(p) >= tol.eps_alg)
        throw GeometryError(ErrorKind::NotOnSphere, "point does not lie on the chart sphere");
    const auto& s = chart.sphere();
    if (p == chart.pole())
        return ExtendedComplex::infinity();
    // Radial normalization first: off-sphere rounding would otherwise keep
    // the pole itself a few ulps away from n.
    const Vec3 u = (p.coords() - s.center).normalized();
    // 1 - u·n equals |u - n|^2 / 2 on the unit sphere; the latter keeps
    // precision next to the pole. Within a few ulps of the pole the
    // direction of z is rounding noise, so the point is the pole.
    const double gap = (u - chart.n()).norm();
    if (gap <= 8.0 * std::numeric_limits<double>::epsilon())
        return ExtendedComplex::infinity();
    const double denom = 0.5 * gap * gap;
    const Complex z(u.dot(chart.e1()) / denom, u.dot(chart.e2()) / denom);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        return ExtendedComplex::infinity();
    return ExtendedComplex(z);
}

inline ExtendedPoint3 unproject(const StereographicChart& chart, const ExtendedComplex& z)
{
    if (z.is_infinite())
        return chart.pole();
    const auto& s = chart.sphere();
    const Complex w = z.value();
    const double x = w.real();
    const double y = w.imag();
    const double r2 = std::norm(w);
    Vec3 u;
    if (r2 <= 1.0) {
        u = (2.0 * x * chart.e1() + 2.0 * y * chart.e2() + (r2 - 1.0) * chart.n()) / (r2 + 1.0);
    } else {
        // Same formula divided through by |z|^2, safe for very large |z|.
        const double inv = 1.0 / std::abs(w);
        const double xs = x * inv * inv;
        const double ys = y * inv * inv;
        const double q = inv * inv;
        u = (2.0 * xs * chart.e1() + 2.0 * ys * chart.e2() + (1.0 - q) * chart.n()) / (1.0 + q);
    }
    return ExtendedPoint3(Vec3(s.center + s.radius * u));
}

} // namespace confdual
