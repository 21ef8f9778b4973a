#include "vgp/errors.hpp"
#include "vgp/frac_calc.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <gtest/gtest.h>
#include <limits>
#include <random>

using namespace vgp;

TEST(FracOrder, RejectsOrdersAtOrAboveOne) {
    EXPECT_THROW(FracOrder(1.0), DomainError);
    EXPECT_THROW(FracOrder(1.5), DomainError);
    EXPECT_THROW(FracOrder(std::nan("")), DomainError);
    EXPECT_NO_THROW(FracOrder(-3.0));
    EXPECT_NO_THROW(FracOrder(0.999));
}

TEST(ExpRule, Examples) {
    EXPECT_NEAR(frac_deriv_exp(FracOrder(0.5), 2.0, 1.0), -0.191392993020821847922, 1e-15);
    EXPECT_DOUBLE_EQ(frac_deriv_exp(FracOrder(0.0), 3.0, 0.4), -std::exp(-1.2));
    EXPECT_THROW(frac_deriv_exp(FracOrder(0.5), 0.0, 1.0), DomainError);
}

TEST(PowerRule, Examples) {
    EXPECT_NEAR(frac_deriv_power(FracOrder(0.5), 1.0, 1.0), -0.886226925452758013649, 1e-15);
    EXPECT_NEAR(frac_deriv_power(FracOrder(-0.5), 2.0, 4.0), -0.110778365681594751706, 1e-15);
    EXPECT_DOUBLE_EQ(frac_deriv_power(FracOrder(0.0), 2.5, 3.0), -std::pow(3.0, -2.5));
}

TEST(PowerRule, MatchesLaplaceRepresentation) {
    // lam^{-b} = 1/Gamma(b) int s^{b-1} e^{-lam s} ds and each exponential picks up -s^a
    boost::math::quadrature::exp_sinh<double> q;
    for (double a : {-0.7, -0.2, 0.3, 0.8})
        for (double b : {1.0, 2.5, 4.0})
            for (double lam : {0.5, 5.0}) {
                auto f = [&](double s) { return std::exp((a + b - 1.0) * std::log(s) - lam * s); };
                const double oracle = -q.integrate(f, 0.0, std::numeric_limits<double>::infinity()) / std::tgamma(b);
                EXPECT_NEAR(frac_deriv_power(FracOrder(a), b, lam) / oracle, 1.0, 1e-10)
                    << a << " " << b << " " << lam;
            }
}

TEST(PowerRule, RejectsDivergentOrders) {
    EXPECT_THROW(frac_deriv_power(FracOrder(-1.0), 1.0, 2.0), DomainError);
    EXPECT_THROW(frac_deriv_power(FracOrder(-2.0), 1.5, 2.0), DomainError);
    EXPECT_THROW(frac_deriv_power(FracOrder(0.5), 0.0, 2.0), DomainError);
    EXPECT_THROW(frac_deriv_power(FracOrder(0.5), 1.0, -2.0), DomainError);
}

TEST(GammaRatio, LargeArguments) {
    EXPECT_NEAR(gamma_ratio(5.0, 3.0), 12.0, 1e-13);
    EXPECT_NEAR(gamma_ratio(100.5, 100.0) / std::sqrt(100.0), 1.0, 2e-3);
    EXPECT_TRUE(std::isfinite(gamma_ratio(200.0, 199.0)));
    EXPECT_NEAR(gamma_ratio(200.0, 199.0), 199.0, 1e-9);
}

TEST(Quadrature, ExponentialExample) {
    auto fpp = [](double t) { return 4.0 * std::exp(-2.0 * t); };
    const FracResult r = frac_deriv_quadrature(fpp, FracOrder(0.5), 1.0);
    EXPECT_NEAR(r.value, -0.191392993020821847922, 1e-11);
    EXPECT_LT(r.error, 1e-9);
}

TEST(Quadrature, ZeroOrderIsMinusIdentity) {
    auto fpp = [](double t) { return 12.0 / std::pow(1.0 + t, 5); };
    for (double x : {0.1, 1.0, 7.0})
        EXPECT_NEAR(frac_deriv_quadrature(fpp, FracOrder(0.0), x).value, -1.0 / std::pow(1.0 + x, 3), 1e-11);
}

TEST(Quadrature, RandomExponentialsAgainstClosedForm) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> alpha(-0.9, 0.99), lam(0.1, 50.0), x(0.02, 10.0);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const double a = alpha(rng), l = lam(rng), xx = x(rng);
        const double exact = frac_deriv_exp(FracOrder(a), l, xx);
        if (std::abs(exact) < 1e-280) continue;
        auto fpp = [&](double t) { return l * l * std::exp(-l * t); };
        const double got = frac_deriv_quadrature(fpp, FracOrder(a), xx).value;
        EXPECT_NEAR(got / exact, 1.0, 1e-7) << "alpha=" << a << " lam=" << l << " x=" << xx;
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(Quadrature, PowerLawAgreesWithPowerRule) {
    for (double a : {-0.5, 0.25, 0.9})
        for (double b : {1.5, 3.0}) {
            auto fpp = [&](double t) { return b * (b + 1.0) * std::pow(t, -b - 2.0); };
            EXPECT_NEAR(frac_deriv_quadrature(fpp, FracOrder(a), 2.0).value / frac_deriv_power(FracOrder(a), b, 2.0),
                        1.0, 1e-8);
        }
}

TEST(Quadrature, Linearity) {
    auto f1 = [](double t) { return std::exp(-t); };
    auto f2 = [](double t) { return 9.0 * std::exp(-3.0 * t); };
    const FracOrder a(0.37);
    const double sum = frac_deriv_quadrature([&](double t) { return 2.0 * f1(t) - 0.5 * f2(t); }, a, 0.8).value;
    const double parts = 2.0 * frac_deriv_quadrature(f1, a, 0.8).value - 0.5 * frac_deriv_quadrature(f2, a, 0.8).value;
    EXPECT_NEAR(sum, parts, 1e-12);
}

TEST(Quadrature, CompositionOfOrders) {
    // D^a D^b e^{-lam x} = -D^{a+b} e^{-lam x}
    const double lam = 1.7, x = 0.6;
    for (double a : {-0.4, 0.2})
        for (double b : {-0.3, 0.5}) {
            auto inner_second = [&](double t) { return lam * lam * frac_deriv_exp(FracOrder(b), lam, t); };
            const double composed = frac_deriv_quadrature(inner_second, FracOrder(a), x).value;
            EXPECT_NEAR(composed / -frac_deriv_exp(FracOrder(a + b), lam, x), 1.0, 1e-9);
        }
}

TEST(Quadrature, ErrorPaths) {
    auto fpp = [](double t) { return std::exp(-t); };
    EXPECT_THROW(frac_deriv_quadrature(fpp, FracOrder(0.5), 0.0), DomainError);
    EXPECT_THROW(frac_deriv_quadrature(fpp, FracOrder(0.5), -1.0), DomainError);
    EXPECT_THROW(frac_deriv_quadrature(fpp, FracOrder(0.5), 1.0, QuadratureConfig{-1.0, 1e-12, 10}), DomainError);
}

TEST(Quadrature, ReportsBestEstimateWhenToleranceMissed) {
    auto fpp = [](double t) { return std::sin(60.0 * t) * std::exp(-0.05 * t); };
    try {
        frac_deriv_quadrature(fpp, FracOrder(0.3), 1.0, QuadratureConfig{1e-14, 1e-16, 2});
        FAIL() << "expected AccuracyError";
    } catch (const AccuracyError& e) {
        EXPECT_GT(e.achieved_error(), 0.0);
        EXPECT_TRUE(std::isfinite(e.best_estimate()));
    }
}
