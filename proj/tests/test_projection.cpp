#include <gtest/gtest.h>

#include "confdual/projection.hpp"
#include "support.hpp"

using namespace confdual;
using testing_support::Inf;
using testing_support::P;

namespace {

const auto kUnit = GeneralizedSphere::sphere(Vec3::Zero(), 1.0);

double planar_cocircularity(const std::vector<ExtendedComplex>& z)
{
    auto lift = [](const ExtendedComplex& c) {
        return c.is_infinite() ? ExtendedPoint3::infinity() : ExtendedPoint3(c.value().real(), c.value().imag(), 0);
    };
    double worst = 0.0;
    const auto c = circle_through(lift(z[0]), lift(z[1]), lift(z[2]));
    for (const auto& w : z)
        worst = std::max(worst, c.residual(lift(w)));
    return worst;
}

} // namespace

TEST(Chart, FrameRule)
{
    const auto north = make_chart(kUnit, P(0, 0, 1));
    EXPECT_LT((north.n() - Vec3(0, 0, 1)).norm(), 1e-15);
    EXPECT_LT((north.e1() - Vec3(1, 0, 0)).norm(), 1e-15);
    EXPECT_LT((north.e2() - Vec3(0, 1, 0)).norm(), 1e-15);
    EXPECT_EQ(north.orientation(), 1.0);

    const auto east = make_chart(kUnit, P(1, 0, 0));
    EXPECT_LT((east.e1() - Vec3(0, 1, 0)).norm(), 1e-15);
    EXPECT_LT((east.e2() - Vec3(0, 0, 1)).norm(), 1e-15);
    EXPECT_EQ(north.mirrored().orientation(), -1.0);
}

TEST(Chart, Errors)
{
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const GeometryError& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(kind_of([] { make_chart(kUnit, P(0, 0, 2)); }), ErrorKind::PoleNotOnSphere);
    EXPECT_EQ(kind_of([] { make_chart(kUnit, Inf); }), ErrorKind::PoleNotOnSphere);
    EXPECT_EQ(kind_of([] { make_chart(GeneralizedSphere::plane(Vec3(0, 0, 1), 0), P(0, 0, 0)); }),
              ErrorKind::PlaneSigma);
    const auto c = make_chart(kUnit, P(0, 0, 1));
    EXPECT_EQ(kind_of([&] { project(c, P(0, 0, 0)); }), ErrorKind::NotOnSphere);
}

TEST(Project, Examples)
{
    const auto c = make_chart(kUnit, P(0, 0, 1));
    EXPECT_LT(std::abs(project(c, P(0, 0, -1)).value()), 1e-15);
    EXPECT_LT(std::abs(project(c, P(1, 0, 0)).value() - Complex(1, 0)), 1e-15);
    EXPECT_TRUE(project(c, P(0, 0, 1)).is_infinite());
}

TEST(Unproject, Examples)
{
    const auto c = make_chart(kUnit, P(0, 0, 1));
    EXPECT_TRUE(approx_eq(unproject(c, ExtendedComplex(0.0)), P(0, 0, -1), 1e-15));
    const auto p = unproject(c, ExtendedComplex(0.4)).coords();
    EXPECT_NEAR(p.x(), 0.6896551724, 1e-10);
    EXPECT_NEAR(p.y(), 0.0, 1e-15);
    EXPECT_NEAR(p.z(), -0.7241379310, 1e-10);
    EXPECT_TRUE(unproject(c, ExtendedComplex::infinity()) == P(0, 0, 1));
}

TEST(Project, NearPoleIsLarge)
{
    const auto c = make_chart(kUnit, P(0, 0, 1));
    const double t = 1e-6;
    const auto z = project(c, P(std::sin(t), 0, std::cos(t)));
    ASSERT_TRUE(z.is_finite());
    EXPECT_NEAR(z.value().real(), 1.0 / std::tan(t / 2), 1e-3);
}

TEST(Project, PoleOfSmallSphereIsInfinity)
{
    detail::UniformSource rng(21);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 c(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4));
        const auto s = GeneralizedSphere::sphere(c, rng.uniform(1e-3, 1e-2));
        const auto pole = testing_support::on_sphere(rng, s);
        const auto chart = make_chart(s, pole);
        ASSERT_TRUE(project(chart, pole).is_infinite());
        ASSERT_TRUE(project(chart, ExtendedPoint3(pole.coords())).is_infinite());
    }
}

TEST(Projection, RoundTrip)
{
    detail::UniformSource rng(8);
    for (int i = 0; i < 10000; ++i) {
        const auto s = testing_support::random_sphere(rng);
        const auto c = make_chart(s, testing_support::on_sphere(rng, s));
        const auto p = testing_support::on_sphere(rng, s);
        ASSERT_LT(chordal_distance(unproject(c, project(c, p)), p), 1e-9);
    }
}

TEST(Projection, CirclesToCircles)
{
    detail::UniformSource rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = testing_support::random_sphere(rng);
        const auto pole = testing_support::on_sphere(rng, s);
        const auto c = make_chart(s, pole);
        const auto a = testing_support::on_sphere(rng, s);
        const auto b = testing_support::on_sphere(rng, s);
        // Half the circles pass through the pole and must become lines.
        const bool through_pole = trial % 2 == 0;
        const auto circle = circle_through(a, b, through_pole ? pole : testing_support::on_sphere(rng, s));
        std::vector<ExtendedComplex> z;
        for (const auto& p : circle.sample(20))
            if (chordal_distance(p, pole) > 1e-6)
                z.push_back(project(c, p));
        EXPECT_LT(planar_cocircularity(z), 1e-7);
        if (through_pole) {
            const Complex d = z[1].value() - z[0].value();
            for (std::size_t k = 2; k < z.size(); ++k) {
                const Complex e = z[k].value() - z[0].value();
                EXPECT_LT(std::abs(std::imag(std::conj(d) * e)) / (std::abs(d) * std::abs(e)), 1e-7);
            }
        }
    }
}

TEST(Projection, Conformal)
{
    detail::UniformSource rng(555);
    auto lift = [](const ExtendedComplex& z) { return ExtendedPoint3(z.value().real(), z.value().imag(), 0.0); };
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = testing_support::random_sphere(rng);
        const auto c = make_chart(s, testing_support::on_sphere(rng, s));
        const auto x = testing_support::on_sphere(rng, s);
        const auto c1 = circle_through(x, testing_support::on_sphere(rng, s), testing_support::on_sphere(rng, s));
        const auto c2 = circle_through(x, testing_support::on_sphere(rng, s), testing_support::on_sphere(rng, s));
        auto image = [&](const OrientedCircle3& k) {
            const auto& sp = k.support();
            return circle_through(lift(project(c, sp[0])), lift(project(c, sp[1])), lift(project(c, sp[2])));
        };
        const double before = circle_angle_at(c1, c2, x);
        const double after = circle_angle_at(image(c1), image(c2), lift(project(c, x)));
        EXPECT_NEAR(before, after, 1e-7);
    }
}
