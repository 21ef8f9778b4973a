#include "vgp/errors.hpp"
#include "vgp/quadrature.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

using namespace vgp;

TEST(Integrate, SmoothPolynomialExactly) {
    const QuadResult r = integrate([](double x) { return x * x * x - 2 * x; }, -1.0, 2.0, {});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 15.0 / 4.0 - 3.0, 1e-14);
}

TEST(Integrate, EndpointSingularities) {
    // int_0^1 x^{-1/2} = 2 and int_0^1 log x = -1; endpoints are never sampled
    const QuadratureConfig cfg{1e-10, 1e-12, 400};
    EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg).value, 2.0, 1e-9);
    EXPECT_NEAR(integrate([](double x) { return std::log(x); }, 0.0, 1.0, cfg).value, -1.0, 1e-10);
}

TEST(Integrate, ReversedLimitsFlipSign) {
    const QuadResult r = integrate([](double x) { return std::exp(x); }, 1.0, 0.0, {});
    EXPECT_NEAR(r.value, -(std::numbers::e - 1.0), 1e-13);
}

TEST(Integrate, BreakpointsHandleKinks) {
    const double kinks[] = {0.3};
    const QuadResult r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {}, kinks);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.subdivisions, 2);
    EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-14);
}

TEST(Integrate, ReportsNonConvergence) {
    const QuadratureConfig cfg{1e-14, 1e-16, 1};
    const QuadResult r = integrate([](double x) { return std::sin(40 * x); }, 0.0, 10.0, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.error, 0.0);
}

TEST(Integrate, RejectsBadConfig) {
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, QuadratureConfig{0, 1e-12, 10}), DomainError);
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0, 1, QuadratureConfig{1e-10, 1e-12, 0}), DomainError);
}

TEST(IntegrateToInfinity, ExponentialAndPowerTails) {
    EXPECT_NEAR(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, {}).value, 1.0, 1e-12);
    EXPECT_NEAR(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0, {}).value, 1.0, 1e-12);
    EXPECT_NEAR(integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0, {}).value,
                0.5 * std::sqrt(std::numbers::pi), 1e-12);
}

TEST(WynnEpsilon, AcceleratesAlternatingSeries) {
    // partial sums of log 2 = 1 - 1/2 + 1/3 - ...
    std::vector<double> sums;
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
        s += (k % 2 ? 1.0 : -1.0) / k;
        sums.push_back(s);
    }
    const Extrapolation e = wynn_epsilon(sums);
    EXPECT_NEAR(e.value, std::numbers::ln2, 1e-12);
    EXPECT_GT(std::abs(sums.back() - std::numbers::ln2), 1e-2);
}

TEST(WynnEpsilon, ShortSequences) {
    EXPECT_EQ(wynn_epsilon({}).value, 0.0);
    const double two[] = {1.0, 1.5};
    EXPECT_EQ(wynn_epsilon(two).value, 1.5);
    EXPECT_EQ(wynn_epsilon(two).error, 0.5);
}
