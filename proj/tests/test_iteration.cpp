#include <gtest/gtest.h>

#include <cmath>

#include "majorant/iteration.hpp"
#include "majorant/operators.hpp"

using namespace majorant;

namespace {

// x -> a + c x^2 on the real line, centred at 0, with modulus 2 c' r.
OperatorHandle scalar_quadratic(double a, double c, double declared_c, double radius = 1.0) {
    ApplyFn apply = [a, c](std::span<const double> x) { return State{a + c * x[0] * x[0]}; };
    NormFn norm = [](std::span<const double> x) { return std::abs(x[0]); };
    return make_operator("quadratic", apply, State{0.0}, norm, LipschitzModulus::power_sum({{2.0 * declared_c, 1.0}}),
                         radius);
}

}  // namespace

TEST(Operator, DerivesOffsetAndRejectsUnderstatement) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(op.profile.a(), 0.1875);
    ApplyFn apply = [](std::span<const double> x) { return State{0.5 + x[0]}; };
    NormFn norm = [](std::span<const double> x) { return std::abs(x[0]); };
    EXPECT_THROW(make_operator("bad", apply, State{0.0}, norm, LipschitzModulus::constant(0.1), 1.0, 0.25),
                 DomainError);
    const auto over = make_operator("ok", apply, State{0.0}, norm, LipschitzModulus::constant(0.1), 10.0, 0.75);
    EXPECT_EQ(over.profile.a(), 0.75);
}

TEST(Admissibility, FollowsAnnulusOpenness) {
    const auto report = analyze(MajorantProfile(0.1875, LipschitzModulus::power_sum({{2.0, 1.0}}), 1.0));
    EXPECT_TRUE(check_admissible_start(report, 0.5));
    EXPECT_TRUE(check_admissible_start(report, 0.0));
    EXPECT_TRUE(check_admissible_start(report, 0.25));
    EXPECT_FALSE(check_admissible_start(report, 0.75));
    EXPECT_FALSE(check_admissible_start(report, 0.9));
}

TEST(Iterate, SelfMajorizingFromCenterTracksRn) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const State xi0{0.0};
    const auto res = iterate(op, xi0, {1e-10, 10000});
    EXPECT_EQ(res.trace.status, TraceStatus::converged);
    EXPECT_NEAR(res.x_star[0], 0.25, 1e-10);
    for (std::size_t n = 0; n < res.trace.states.size(); ++n) {
        EXPECT_EQ(res.trace.states[n][0], res.trace.r[n]);
    }
    for (const auto& s : res.trace.steps) {
        EXPECT_NEAR(s.step_norm, res.trace.r[s.n + 1] - res.trace.r[s.n], 1e-16);
    }
    const auto cert = certify_trace(res.trace, State{0.25}, op.norm);
    EXPECT_TRUE(cert.all_pass);
    EXPECT_GE(cert.worst_slack, -1e-12);
}

TEST(Iterate, DecreasingBranchFromAbove) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const State xi0{0.5};
    const auto res = iterate(op, xi0);
    ASSERT_GE(res.trace.rho.size(), 2u);
    EXPECT_DOUBLE_EQ(res.trace.states[1][0], 0.4375);
    EXPECT_DOUBLE_EQ(res.trace.rho[1], 0.4375);
    EXPECT_NEAR(res.x_star[0], 0.25, 1e-9);
    for (std::size_t n = 1; n < res.trace.rho.size(); ++n) {
        EXPECT_LE(res.trace.rho[n], res.trace.rho[n - 1]);
        EXPECT_GE(res.trace.rho[n], res.trace.r[n]);
    }
}

TEST(Iterate, ZeroOffsetTakesNoSteps) {
    const auto op = scalar_quadratic(0.0, 1.0, 1.0);
    const State xi0{0.0};
    const auto res = iterate(op, xi0);
    EXPECT_EQ(res.trace.step_count(), 0u);
    EXPECT_EQ(res.x_star[0], 0.0);
    EXPECT_EQ(res.trace.final_apriori_bound(), 0.0);
}

TEST(Iterate, RejectsInadmissibleStartAndMissingFixedPoint) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const State far{0.8};
    EXPECT_THROW(iterate(op, far), InadmissibleStart);
    const auto none = scalar_quadratic(0.5, 1.0, 1.0);
    const State xi0{0.0};
    EXPECT_THROW(iterate(none, xi0), NoExistence);
}

TEST(Iterate, HalvedModulusIsCaught) {
    const auto op = scalar_quadratic(0.1875, 1.0, 0.5);
    const State xi0{0.0};
    try {
        (void)iterate(op, xi0);
        FAIL() << "expected BoundViolation";
    } catch (const BoundViolation& e) {
        ASSERT_FALSE(e.trace().steps.empty());
        EXPECT_EQ(e.trace().steps.back().n, 1u);
        EXPECT_EQ(e.trace().status, TraceStatus::bound_violated);
        EXPECT_GT(e.trace().steps.back().step_norm, e.trace().steps.back().step_bound);
    }
}

TEST(Certify, FirstStepAlone) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const State xi0{0.0};
    const auto res = iterate(op, xi0, {1e-10, 1});
    EXPECT_EQ(res.trace.status, TraceStatus::max_steps);
    const auto cert = certify_trace(res.trace, std::nullopt, op.norm);
    ASSERT_EQ(cert.checks.size(), 1u);
    EXPECT_EQ(cert.checks[0].observed, 0.1875);
    EXPECT_EQ(cert.checks[0].bound, 0.1875);
    EXPECT_TRUE(cert.all_pass);
}

TEST(Certify, ReportsViolationsAsData) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const State xi0{0.0};
    auto res = iterate(op, xi0);
    const auto cert = certify_trace(res.trace, State{0.3}, op.norm);
    EXPECT_FALSE(cert.all_pass);
    ASSERT_TRUE(cert.first_violation.has_value());
    EXPECT_LT(cert.worst_slack, 0.0);
}

TEST(Iterate, UniqueAcrossStarts) {
    const auto op = scalar_quadratic(0.1875, 1.0, 1.0);
    const auto a = iterate(op, State{0.0});
    const auto b = iterate(op, State{0.7});
    EXPECT_LE(std::abs(a.x_star[0] - b.x_star[0]),
              a.trace.final_apriori_bound() + b.trace.final_apriori_bound() + 1e-15);
}
