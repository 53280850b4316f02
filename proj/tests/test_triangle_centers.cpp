#include <gtest/gtest.h>

#include <cmath>

#include "confdual/triangle_centers.hpp"
#include "confdual/moebius.hpp"

using namespace confdual;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double dist_to_sides(const Triangle2& t, Complex p, int side)
{
    return line_distance(p, t.vertex((side + 1) % 3), t.vertex((side + 2) % 3));
}

Triangle2 random_triangle(detail::UniformSource& rng)
{
    for (;;) {
        const Complex a(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const Complex b(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const Complex c(rng.uniform(-5, 5), rng.uniform(-5, 5));
        try {
            const Triangle2 t(a, b, c);
            const double m = std::max({t.side(0), t.side(1), t.side(2)});
            if (std::abs(t.twice_signed_area()) > 1e-3 * m * m)
                return t;
        } catch (const GeometryError&) {
        }
    }
}

// Barycentric weights of p, signed areas of the sub-triangles over the whole.
std::array<double, 3> barycentric(const Triangle2& t, Complex p)
{
    auto area = [](Complex a, Complex b, Complex c) {
        const Complex ab = b - a, ac = c - a;
        return ab.real() * ac.imag() - ab.imag() * ac.real();
    };
    const double whole = t.twice_signed_area();
    return {area(p, t.vertex(1), t.vertex(2)) / whole, area(t.vertex(0), p, t.vertex(2)) / whole,
            area(t.vertex(0), t.vertex(1), p) / whole};
}

} // namespace

TEST(Incenter, Examples)
{
    const Triangle2 eq(Complex(0, 0), Complex(1, 0), Complex(0.5, kSqrt3 / 2));
    EXPECT_LT(std::abs(incenter(eq).value() - Complex(0.5, kSqrt3 / 6)), 1e-15);
    const Triangle2 t345(Complex(0, 0), Complex(4, 0), Complex(0, 3));
    EXPECT_LT(std::abs(incenter(t345).value() - Complex(1, 1)), 1e-15);
    EXPECT_DOUBLE_EQ(t345.side(0), 5.0);
    EXPECT_DOUBLE_EQ(t345.side(1), 3.0);
    EXPECT_DOUBLE_EQ(t345.side(2), 4.0);
}

TEST(Triangle, CollinearRejected)
{
    try {
        Triangle2(Complex(0, 0), Complex(1, 0), Complex(2, 0));
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateTriangle);
    }
    EXPECT_THROW(Triangle2(ExtendedComplex::infinity(), ExtendedComplex(0.0), ExtendedComplex(1.0)), GeometryError);
}

TEST(Excenter, Examples)
{
    const Triangle2 t345(Complex(0, 0), Complex(4, 0), Complex(0, 3));
    EXPECT_LT(std::abs(excenter(t345, 0).value() - Complex(6, 6)), 1e-14);
    EXPECT_LT(std::abs(excenter(t345, 1).value() - Complex(-2, 2)), 1e-14);
    EXPECT_LT(std::abs(excenter(t345, 2).value() - Complex(3, -3)), 1e-14);
    const Triangle2 eq(Complex(0, 0), Complex(1, 0), Complex(0.5, kSqrt3 / 2));
    EXPECT_LT(std::abs(excenter(eq, 2).value() - Complex(0.5, -kSqrt3 / 2)), 1e-14);
    EXPECT_THROW(excenter(eq, 3), GeometryError);
}

TEST(Bisector, Examples)
{
    const Triangle2 t345(Complex(0, 0), Complex(4, 0), Complex(0, 3));
    const auto in = bisector_line(t345, 0, BisectorKind::Internal);
    EXPECT_LT(std::abs(in.anchor), 1e-15);
    EXPECT_LT(std::abs(in.direction - Complex(1, 1) / std::sqrt(2.0)), 1e-15);
    const auto ex = bisector_line(t345, 0, BisectorKind::External);
    const Complex want = Complex(1, -1) / std::sqrt(2.0);
    EXPECT_LT(std::min(std::abs(ex.direction - want), std::abs(ex.direction + want)), 1e-15);
}

TEST(Centers, EquidistantFromSideLines)
{
    detail::UniformSource rng(31);
    for (int i = 0; i < 10000; ++i) {
        const auto t = random_triangle(rng);
        const double scale = std::max({t.side(0), t.side(1), t.side(2)});
        std::vector<Complex> centers{incenter(t).value()};
        for (int k = 0; k < 3; ++k)
            centers.push_back(excenter(t, k).value());
        for (const auto& c : centers) {
            const double d0 = dist_to_sides(t, c, 0);
            ASSERT_NEAR(dist_to_sides(t, c, 1), d0, 1e-9 * std::max(scale, d0));
            ASSERT_NEAR(dist_to_sides(t, c, 2), d0, 1e-9 * std::max(scale, d0));
        }
    }
}

TEST(Centers, WeightSigns)
{
    detail::UniformSource rng(32);
    for (int i = 0; i < 2000; ++i) {
        const auto t = random_triangle(rng);
        for (double w : barycentric(t, incenter(t).value()))
            ASSERT_GT(w, 0.0);
        for (int k = 0; k < 3; ++k) {
            const auto w = barycentric(t, excenter(t, k).value());
            for (int m = 0; m < 3; ++m)
                ASSERT_EQ(w[static_cast<std::size_t>(m)] < 0.0, m == k);
        }
    }
}

TEST(Centers, SimilarityEquivariance)
{
    detail::UniformSource rng(33);
    for (int i = 0; i < 2000; ++i) {
        const auto t = random_triangle(rng);
        const Complex a = std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.0, 6.283185307179586));
        const Complex b(rng.uniform(-3, 3), rng.uniform(-3, 3));
        auto s = [&](Complex z) { return a * z + b; };
        const Triangle2 st(s(t.vertex(0)), s(t.vertex(1)), s(t.vertex(2)));
        const double scale = std::abs(a) * std::max({t.side(0), t.side(1), t.side(2)});
        ASSERT_LT(std::abs(incenter(st).value() - s(incenter(t).value())), 1e-9 * scale);
        for (int k = 0; k < 3; ++k) {
            const Complex e = s(excenter(t, k).value());
            ASSERT_LT(std::abs(excenter(st, k).value() - e), 1e-9 * std::max(scale, std::abs(e)));
        }
    }
}

// The incenter, the excenter opposite k and the two other vertices lie on
// the circle with diameter from incenter to excenter.
TEST(Centers, IncenterExcenterCircle)
{
    detail::UniformSource rng(34);
    for (int i = 0; i < 5000; ++i) {
        const auto t = random_triangle(rng);
        const Complex in = incenter(t).value();
        for (int k = 0; k < 3; ++k) {
            const Complex ex = excenter(t, k).value();
            const Complex mid = 0.5 * (in + ex);
            const double r = 0.5 * std::abs(ex - in);
            ASSERT_NEAR(std::abs(t.vertex((k + 1) % 3) - mid), r, 1e-7 * r);
            ASSERT_NEAR(std::abs(t.vertex((k + 2) % 3) - mid), r, 1e-7 * r);
        }
    }
}

// Nearly flat triangles: the excenter opposite the obtuse vertex is far away
// but still equidistant from the three side lines.
TEST(Excenter, FlatTriangleStable)
{
    for (double h : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const Triangle2 t(Complex(-1, 0), Complex(0, h), Complex(1.3, 0));
        const Complex e = excenter(t, 1).value();
        const double d = dist_to_sides(t, e, 0);
        EXPECT_NEAR(dist_to_sides(t, e, 1), d, 1e-12 * d);
        EXPECT_NEAR(dist_to_sides(t, e, 2), d, 1e-12 * d);
    }
}
