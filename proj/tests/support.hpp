#pragma once

#include <cmath>
#include <cstdint>

#include "confdual/moebius.hpp"

namespace testing_support {

using namespace confdual;

inline ExtendedPoint3 P(double x, double y, double z) { return ExtendedPoint3(x, y, z); }
inline const ExtendedPoint3 Inf = ExtendedPoint3::infinity();

/// Random finite point in a cube, or ∞ with the given probability.
inline ExtendedPoint3 random_point(detail::UniformSource& rng, double half = 3.0, double inf_probability = 0.0)
{
    if (inf_probability > 0.0 && rng.unit() < inf_probability)
        return ExtendedPoint3::infinity();
    return ExtendedPoint3(rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half));
}

inline GeneralizedSphere random_sphere(detail::UniformSource& rng)
{
    const Vec3 c(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    return GeneralizedSphere::sphere(c, rng.uniform(0.5, 2.0));
}

inline ExtendedPoint3 on_sphere(detail::UniformSource& rng, const GeneralizedSphere& s)
{
    const auto& sp = s.as_sphere();
    return ExtendedPoint3(Vec3(sp.center + sp.radius * rng.on_unit_sphere()));
}

} // namespace testing_support
