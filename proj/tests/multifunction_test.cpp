#include "ufix/multifunction.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "ufix/hyperspace.hpp"

using namespace ufix;

namespace {

TEST(MakeBuiltin, IdentityMapsEveryPointToItself) {
    const Multifunction f = make_builtin(IdentitySpec{}, 1);
    const FiniteSet image = f.evaluate(Point{3.0});
    ASSERT_EQ(image.size(), 1u);
    EXPECT_EQ(image[0], Point{3.0});
    EXPECT_EQ(f.descriptor(), "identity");

    testsup::Rng rng(12);
    const Multifunction f3 = make_builtin(IdentitySpec{}, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const Point x = testsup::random_point(rng, 3);
        EXPECT_EQ(f3.evaluate(x), FiniteSet({x}));
    }
}

TEST(MakeBuiltin, ScaledSelectorProducesAllBranches) {
    const Multifunction f = make_builtin(ScaledSelectorSpec{{0.5, 1.0 / 3.0}}, 1);
    const FiniteSet image = f.evaluate(Point{6.0});
    ASSERT_EQ(image.size(), 2u);
    EXPECT_EQ(image[0], Point{2.0});
    EXPECT_EQ(image[1], Point{3.0});
}

TEST(MakeBuiltin, AffineContractionHalvesThePlane) {
    const Multifunction f = make_builtin(
        AffineContractionSpec{Matrix::scaled_identity(2, 0.5), {0.0, 0.0}}, 2);
    const FiniteSet image = f.evaluate(Point{2.0, 4.0});
    ASSERT_EQ(image.size(), 1u);
    EXPECT_EQ(image[0], (Point{1.0, 2.0}));
}

TEST(MakeBuiltin, MultiAffineBranches) {
    MultiAffineSpec spec;
    spec.branches.push_back({Matrix::scaled_identity(1, 0.5), {0.0}});
    spec.branches.push_back({Matrix::scaled_identity(1, 0.25), {0.0}});
    const Multifunction f = make_builtin(spec, 1);
    const FiniteSet image = f.evaluate(Point{8.0});
    ASSERT_EQ(image.size(), 2u);
    EXPECT_EQ(image[0], Point{2.0});
    EXPECT_EQ(image[1], Point{4.0});
}

TEST(MakeBuiltin, ExpansionAndGuards) {
    const Multifunction f = make_builtin(ExpansionSpec{2.0}, 1);
    EXPECT_EQ(f.evaluate(Point{1.0})[0], Point{2.0});

    EXPECT_THROW(make_builtin(ExpansionSpec{1.0}, 1), ConfigError);
    EXPECT_THROW(make_builtin(ScaledSelectorSpec{{}}, 1), ConfigError);
    EXPECT_THROW(make_builtin(MultiAffineSpec{}, 1), ConfigError);
    // 2x2 matrix against a 3-dimensional space.
    EXPECT_THROW(make_builtin(
                     AffineContractionSpec{Matrix::scaled_identity(2, 0.5), {0.0, 0.0}}, 3),
                 ConfigError);
}

TEST(Multifunction, EvaluateChecksDimension) {
    const Multifunction f = make_builtin(IdentitySpec{}, 2);
    EXPECT_THROW(f.evaluate(Point{1.0}), std::invalid_argument);
}

TEST(LiftSingleValued, WrapsPointMaps) {
    const Multifunction id = lift_single_valued(1, [](const Point& x) { return x; });
    EXPECT_EQ(id.evaluate(Point{5.0})[0], Point{5.0});

    const Multifunction halve = lift_single_valued(1, [](const Point& x) {
        return Point{x[0] / 2.0};
    });
    EXPECT_EQ(halve.evaluate(Point{1.0})[0], Point{0.5});

    const Multifunction split = lift_single_valued(2, [](const Point& x) {
        return Point{x[0] / 2.0, x[1] / 3.0};
    });
    const FiniteSet image = split.evaluate(Point{6.0, 9.0});
    ASSERT_EQ(image.size(), 1u);
    EXPECT_EQ(image[0], (Point{3.0, 3.0}));
}

TEST(Multifunction, EvaluationIsDeterministic) {
    testsup::Rng rng(2024);
    MultiAffineSpec spec;
    spec.branches.push_back({Matrix::scaled_identity(2, 0.5), {0.1, -0.2}});
    spec.branches.push_back({Matrix::scaled_identity(2, 0.25), {0.0, 0.3}});
    const Multifunction f = make_builtin(spec, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        const Point x = testsup::random_point(rng, 2);
        const FiniteSet first = f.evaluate(x);
        const FiniteSet second = f.evaluate(x);
        EXPECT_EQ(first, second);
        for (std::size_t k = 1; k < first.size(); ++k)
            EXPECT_TRUE(lex_less(first[k - 1], first[k]));
    }
}

// Lifting a point map and measuring images with the Hausdorff pseudometric
// reproduces the underlying point distance exactly.
TEST(LiftSingleValued, HausdorffReducesToPointDistance) {
    testsup::Rng rng(808);
    const Multifunction f = lift_single_valued(2, [](const Point& x) {
        return Point{0.5 * x[0] + 0.1, 0.25 * x[1]};
    });
    for (int trial = 0; trial < 5000; ++trial) {
        const auto family = testsup::random_family(rng, 2);
        const Point x = testsup::random_point(rng, 2);
        const Point y = testsup::random_point(rng, 2);
        const FiniteSet fx = f.evaluate(x);
        const FiniteSet fy = f.evaluate(y);
        ASSERT_EQ(fx.size(), 1u);
        for (std::size_t i = 0; i < family.size(); ++i)
            EXPECT_EQ(hausdorff(family, i, fx, fy), family.eval(i, fx[0], fy[0]));
    }
}

}  // namespace
