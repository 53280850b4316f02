#pragma once

/*!
 * \file moebius.hpp
 * \brief Möbius transformations of R^3 ∪ {∞}, stored as a list of sphere
 *        inversions and similarities applied left to right.
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "confdual/spheres_circles.hpp"

namespace confdual {

struct Inversion {
    GeneralizedSphere mirror;
};

/// x ↦ scale · rotation · x + translation
struct Similarity {
    Mat3 rotation;
    double scale;
    Vec3 translation;

    static Similarity make(const Mat3& rotation, double scale, const Vec3& translation, double tol = 1e-9)
    {
        if (!(scale > 0.0))
            throw GeometryError(ErrorKind::InvalidArgument, "similarity scale must be positive");
        if ((rotation.transpose() * rotation - Mat3::Identity()).norm() >= tol)
            throw GeometryError(ErrorKind::InvalidArgument, "similarity rotation must be orthogonal");
        return Similarity{rotation, scale, translation};
    }
};

using Generator = std::variant<Inversion, Similarity>;

class MoebiusMap {
public:
    MoebiusMap() = default;
    explicit MoebiusMap(std::vector<Generator> generators) : generators_(std::move(generators)) {}

    const std::vector<Generator>& generators() const noexcept { return generators_; }

    MoebiusMap then(const Generator& g) const
    {
        auto gens = generators_;
        gens.push_back(g);
        return MoebiusMap(std::move(gens));
    }

    ExtendedPoint3 apply(const ExtendedPoint3& p) const
    {
        ExtendedPoint3 x = p;
        for (const auto& g : generators_) {
            if (const auto* inv = std::get_if<Inversion>(&g)) {
                x = invert(inv->mirror, x);
            } else if (x.is_finite()) {
                const auto& s = std::get<Similarity>(g);
                x = ExtendedPoint3(Vec3(s.scale * (s.rotation * x.coords()) + s.translation));
            }
        }
        return x;
    }

    ExtendedPoint3 operator()(const ExtendedPoint3& p) const { return apply(p); }

    /// Number of orientation-reversing generators: inversions, plane
    /// reflections and det -1 rotations. Even parity preserves orientation.
    int orientation_parity() const
    {
        int parity = 0;
        for (const auto& g : generators_) {
            if (std::holds_alternative<Inversion>(g))
                ++parity;
            else if (std::get<Similarity>(g).rotation.determinant() < 0.0)
                ++parity;
        }
        return parity % 2;
    }

private:
    std::vector<Generator> generators_;
};

inline ExtendedPoint3 apply(const MoebiusMap& m, const ExtendedPoint3& p) { return m.apply(p); }

namespace detail {

/// 53-bit uniform doubles from mt19937_64; unlike the standard
/// distributions this sequence is identical across standard libraries.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t bits() { return engine_(); }

    Vec3 on_unit_sphere()
    {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * std::numbers::pi);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return Vec3(rho * std::cos(phi), rho * std::sin(phi), z);
    }

    /// Uniform rotation from a unit quaternion (Shoemake's subgroup method).
    Mat3 rotation()
    {
        const double u1 = unit();
        const double u2 = uniform(0.0, 2.0 * std::numbers::pi);
        const double u3 = uniform(0.0, 2.0 * std::numbers::pi);
        const double a = std::sqrt(1.0 - u1);
        const double b = std::sqrt(u1);
        const double w = a * std::sin(u2), x = a * std::cos(u2), y = b * std::sin(u3), z = b * std::cos(u3);
        Mat3 r;
        r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
             2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
             2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
        return r;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace detail

/// Deterministic map with 1-4 generators: inversions centered in [-2, 2]^3
/// with radii in [0.5, 2], similarities with scale in [0.5, 2], a uniform
/// rotation (reflected with probability 1/2) and translation in [-1, 1]^3.
inline MoebiusMap random_moebius(std::uint64_t seed)
{
    detail::UniformSource rng(seed);
    const int count = 1 + static_cast<int>(rng.bits() % 4);
    std::vector<Generator> gens;
    for (int i = 0; i < count; ++i) {
        if (rng.unit() < 0.5) {
            const Vec3 c(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
            gens.emplace_back(Inversion{GeneralizedSphere::sphere(c, rng.uniform(0.5, 2.0))});
        } else {
            Mat3 rot = rng.rotation();
            if (rng.unit() < 0.5)
                rot.col(0) = -rot.col(0);
            const double scale = rng.uniform(0.5, 2.0);
            const Vec3 t(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
            gens.emplace_back(Similarity{rot, scale, t});
        }
    }
    return MoebiusMap(std::move(gens));
}

} // namespace confdual
