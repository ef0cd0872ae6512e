#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "majorant/modulus.hpp"

using namespace majorant;

TEST(Modulus, ConstantAndPrimitive) {
    const auto k = LipschitzModulus::constant(0.5);
    EXPECT_EQ(k(3.0), 0.5);
    EXPECT_EQ(k.primitive(2.0), 1.0);
    EXPECT_EQ(k.primitive(0.0), 0.0);
    EXPECT_EQ(k.kind(), LipschitzModulus::Kind::constant);
    EXPECT_TRUE(std::isinf(k.max_radius()));
}

TEST(Modulus, PowerSumPrimitiveIsExact) {
    const auto k = LipschitzModulus::power_sum({{2.0, 1.0}});
    EXPECT_DOUBLE_EQ(k(0.5), 1.0);
    EXPECT_DOUBLE_EQ(k.primitive(0.5), 0.25);

    const auto mixed = LipschitzModulus::power_sum({{1.0, 2.0}, {3.0, 0.0}});
    EXPECT_DOUBLE_EQ(mixed(2.0), 7.0);
    EXPECT_DOUBLE_EQ(mixed.primitive(1.0), 1.0 / 3.0 + 3.0);
}

TEST(Modulus, TabulatedInterpolatesAndIntegratesPiecewise) {
    const auto k = LipschitzModulus::tabulated({0.0, 1.0}, {0.2, 1.8});
    EXPECT_DOUBLE_EQ(k(0.5), 1.0);
    EXPECT_DOUBLE_EQ(k.primitive(0.5), 0.3);
    EXPECT_DOUBLE_EQ(k.primitive(1.0), 1.0);

    const auto steps = LipschitzModulus::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0});
    EXPECT_DOUBLE_EQ(steps.primitive(0.5), 0.25);
    EXPECT_DOUBLE_EQ(steps.primitive(1.0), 0.75);
    EXPECT_EQ(steps.max_radius(), 1.0);
    EXPECT_THROW((void)steps(1.5), DomainError);
    EXPECT_THROW((void)steps.primitive(-0.1), DomainError);
}

TEST(Modulus, RejectsInvalidInput) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(LipschitzModulus::constant(-0.1), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::constant(nan), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::power_sum({{-1.0, 1.0}}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::power_sum({{1.0, -1.0}}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::tabulated({0.0, 1.0}, {1.0, 0.5}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::tabulated({0.1, 1.0}, {0.0, 0.5}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::tabulated({0.0, 0.0, 1.0}, {0.0, 0.1, 0.5}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::tabulated({0.0, 1.0}, {0.0}), InvalidModulus);
    EXPECT_THROW(LipschitzModulus::tabulated({0.0, 1.0}, {-1.0, 0.0}), InvalidModulus);
}

TEST(Modulus, SampledMatchesAtNodesAndRejectsDecrease) {
    const auto k = LipschitzModulus::sampled([](double r) { return r * r; }, 2.0);
    EXPECT_EQ(k.kind(), LipschitzModulus::Kind::tabulated);
    EXPECT_NEAR(k(1.0), 1.0, 1e-14);
    EXPECT_NEAR(k(2.0), 4.0, 1e-14);
    EXPECT_THROW(LipschitzModulus::sampled([](double r) { return 1.0 - r; }, 1.0), InvalidModulus);

    const std::vector<double> extra{0.3};
    const auto kink = LipschitzModulus::sampled([](double r) { return std::min(r, 0.3); }, 1.0, extra);
    EXPECT_NEAR(kink.primitive(1.0), 0.045 + 0.7 * 0.3, 1e-14);
}

TEST(Modulus, WeightedSumKeepsClosedFormsWhenPossible) {
    const std::vector<LipschitzModulus> consts{LipschitzModulus::constant(1.0), LipschitzModulus::constant(2.0)};
    const std::vector<double> w{0.5, 0.25};
    const auto c = LipschitzModulus::weighted_sum(w, consts, 1.0);
    EXPECT_EQ(c.kind(), LipschitzModulus::Kind::constant);
    EXPECT_DOUBLE_EQ(c(0.3), 1.0);

    const std::vector<LipschitzModulus> mixed{LipschitzModulus::constant(1.0),
                                              LipschitzModulus::power_sum({{2.0, 1.0}})};
    const auto p = LipschitzModulus::weighted_sum(w, mixed, 1.0);
    EXPECT_EQ(p.kind(), LipschitzModulus::Kind::power_sum);
    EXPECT_DOUBLE_EQ(p(0.5), 0.5 + 0.25);

    const std::vector<LipschitzModulus> table{LipschitzModulus::tabulated({0.0, 1.0}, {0.0, 1.0}),
                                              LipschitzModulus::constant(1.0)};
    const auto t = LipschitzModulus::weighted_sum(w, table, 1.0);
    EXPECT_EQ(t.kind(), LipschitzModulus::Kind::tabulated);
    EXPECT_NEAR(t(0.5), 0.5, 1e-14);
}

TEST(Modulus, ShiftedMovesTheOrigin) {
    const auto k = LipschitzModulus::power_sum({{2.0, 1.0}}).shifted(0.5, 1.0);
    EXPECT_NEAR(k(0.0), 1.0, 1e-14);
    EXPECT_NEAR(k(1.0), 3.0, 1e-14);
    EXPECT_NEAR(k.primitive(1.0), 2.0, 1e-12);
}
