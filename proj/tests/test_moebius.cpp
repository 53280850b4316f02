#include <gtest/gtest.h>

#include "confdual/dual_core.hpp"
#include "support.hpp"

using namespace confdual;
using testing_support::P;

namespace {

bool same_generators(const MoebiusMap& a, const MoebiusMap& b)
{
    if (a.generators().size() != b.generators().size())
        return false;
    for (std::size_t i = 0; i < a.generators().size(); ++i) {
        const auto& g = a.generators()[i];
        const auto& h = b.generators()[i];
        if (g.index() != h.index())
            return false;
        if (const auto* x = std::get_if<Inversion>(&g)) {
            const auto& y = std::get<Inversion>(h);
            if (x->mirror.as_sphere().center != y.mirror.as_sphere().center ||
                x->mirror.as_sphere().radius != y.mirror.as_sphere().radius)
                return false;
        } else {
            const auto& x2 = std::get<Similarity>(g);
            const auto& y2 = std::get<Similarity>(h);
            if (x2.rotation != y2.rotation || x2.scale != y2.scale || x2.translation != y2.translation)
                return false;
        }
    }
    return true;
}

} // namespace

TEST(Moebius, Examples)
{
    const auto unit = GeneralizedSphere::sphere(Vec3::Zero(), 1.0);
    const MoebiusMap inv({Inversion{unit}});
    EXPECT_TRUE(approx_eq(inv(P(2, 0, 0)), P(0.5, 0, 0), 1e-15));

    const MoebiusMap sim({Similarity::make(Mat3::Identity(), 2.0, Vec3(1, 0, 0))});
    EXPECT_TRUE(approx_eq(apply(sim, P(1, 1, 0)), P(3, 2, 0), 1e-15));
    EXPECT_TRUE(sim(ExtendedPoint3::infinity()).is_infinite());

    detail::UniformSource rng(1);
    const auto s = testing_support::random_sphere(rng);
    const MoebiusMap twice({Inversion{s}, Inversion{s}});
    for (int i = 0; i < 100; ++i) {
        const auto p = testing_support::random_point(rng, 3.0, 0.05);
        EXPECT_LT(chordal_distance(twice(p), p), 1e-9);
    }
    EXPECT_EQ(twice.orientation_parity(), 0);
    EXPECT_EQ(inv.orientation_parity(), 1);
}

TEST(Moebius, SimilarityValidation)
{
    EXPECT_THROW(Similarity::make(Mat3::Identity(), 0.0, Vec3::Zero()), GeometryError);
    EXPECT_THROW(Similarity::make(2.0 * Mat3::Identity(), 1.0, Vec3::Zero()), GeometryError);
    Mat3 flip = Mat3::Identity();
    flip(0, 0) = -1;
    EXPECT_EQ(MoebiusMap({Similarity::make(flip, 1.0, Vec3::Zero())}).orientation_parity(), 1);
}

TEST(Moebius, ThenComposesLeftToRight)
{
    const MoebiusMap m = MoebiusMap()
                             .then(Similarity::make(Mat3::Identity(), 1.0, Vec3(1, 0, 0)))
                             .then(Inversion{GeneralizedSphere::sphere(Vec3::Zero(), 1.0)});
    EXPECT_TRUE(approx_eq(m(P(1, 0, 0)), P(0.5, 0, 0), 1e-15));
}

TEST(RandomMoebius, Deterministic)
{
    EXPECT_TRUE(same_generators(random_moebius(42), random_moebius(42)));
    EXPECT_FALSE(same_generators(random_moebius(42), random_moebius(43)));
}

TEST(RandomMoebius, SpheresToSpheres)
{
    detail::UniformSource rng(2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto m = random_moebius(seed);
        const auto s = testing_support::random_sphere(rng);
        std::vector<ExtendedPoint3> img;
        for (int k = 0; k < 100; ++k)
            img.push_back(m(testing_support::on_sphere(rng, s)));
        const auto fit = circumsphere(img[0], img[1], img[2], img[3]);
        for (const auto& q : img)
            ASSERT_LT(fit.residual(q), 1e-7) << "seed " << seed;
    }
}

TEST(RandomMoebius, CirclesToCircles)
{
    detail::UniformSource rng(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto m = random_moebius(seed);
        const auto c = circle_through(testing_support::random_point(rng), testing_support::random_point(rng),
                                      testing_support::random_point(rng));
        std::vector<ExtendedPoint3> img;
        for (const auto& p : c.sample(30))
            img.push_back(m(p));
        const auto fit = circle_through(img[0], img[10], img[20]);
        for (const auto& q : img)
            ASSERT_LT(fit.residual(q), 1e-7) << "seed " << seed;
    }
}

TEST(RandomMoebius, PreservesAnglesUpToOrientation)
{
    detail::UniformSource rng(4);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto m = random_moebius(seed);
        const auto x = testing_support::random_point(rng);
        const auto c1 = circle_through(x, testing_support::random_point(rng), testing_support::random_point(rng));
        const auto c2 = circle_through(x, testing_support::random_point(rng), testing_support::random_point(rng));
        auto image = [&](const OrientedCircle3& c) {
            const auto& s = c.support();
            return circle_through(m(s[0]), m(s[1]), m(s[2]));
        };
        const auto mx = m(x);
        if (mx.is_infinite())
            continue;
        EXPECT_NEAR(circle_angle_at(image(c1), image(c2), mx), circle_angle_at(c1, c2, x), 1e-7);
    }
}

// Charts are oriented by the outward normal. The induced map between the
// spheres keeps that orientation when ambient orientation and the inside of
// the sphere are both kept, or both reversed; the cross ratio is then kept,
// otherwise conjugated.
TEST(RandomMoebius, CrossRatioParity)
{
    detail::UniformSource rng(5);
    int kept = 0, conjugated = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto m = random_moebius(seed);
        const auto s = testing_support::random_sphere(rng);
        Quadruplet::Points pts;
        for (auto& p : pts)
            p = testing_support::on_sphere(rng, s);
        Quadruplet q(pts);
        if (q.cocircularity() < 1e-3)
            continue;
        Quadruplet mq = transform(m, q);
        const auto ms = circumsphere(mq[0], mq[1], mq[2], mq[3]);
        if (!ms.is_sphere() || mq[0].is_infinite())
            continue;
        const auto mc = m(ExtendedPoint3(s.as_sphere().center));
        const bool inside_kept =
            mc.is_finite() && (mc.coords() - ms.as_sphere().center).norm() < ms.as_sphere().radius;
        const Complex before = cross_ratio_on(s, q, 0).value();
        const Complex after = cross_ratio_on(ms, mq, 0).value();
        const double scale = std::max(1.0, std::abs(before));
        if ((m.orientation_parity() == 0) == inside_kept) {
            EXPECT_LT(std::abs(after - before), 1e-7 * scale) << "seed " << seed;
            ++kept;
        } else {
            EXPECT_LT(std::abs(after - std::conj(before)), 1e-7 * scale) << "seed " << seed;
            ++conjugated;
        }
    }
    EXPECT_GT(kept, 50);
    EXPECT_GT(conjugated, 50);
}

// A single inversion whose center lies outside the sphere conjugates the
// cross ratio; two of them restore it.
TEST(Moebius, InversionConjugatesCrossRatio)
{
    const auto unit = GeneralizedSphere::sphere(Vec3::Zero(), 1.0);
    const Quadruplet q({P(1, 0, 0), P(0, 1, 0), P(0, -1, 0), P(0, 0, 1)});
    const Complex cr = cross_ratio_on(unit, q, 0).value();
    const MoebiusMap one({Inversion{GeneralizedSphere::sphere(Vec3(3, 1, 0), 1.5)}});
    const MoebiusMap two = one.then(Inversion{GeneralizedSphere::sphere(Vec3(-1, 4, 2), 2.0)});
    for (const auto* m : {&one, &two}) {
        const auto mq = transform(*m, q);
        const auto ms = circumsphere(mq[0], mq[1], mq[2], mq[3]);
        const Complex got = cross_ratio_on(ms, mq, 0).value();
        const Complex want = m->orientation_parity() == 1 ? std::conj(cr) : cr;
        EXPECT_LT(std::abs(got - want), 1e-12);
    }
}
