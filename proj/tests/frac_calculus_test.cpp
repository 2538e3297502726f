#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kseries/frac_calculus.hpp"

using namespace kseries;

namespace {

constexpr double e = std::numbers::e;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace

TEST(RlIntegral, Examples)
{
    EXPECT_NEAR(rl_integral([](double) { return 1.0; }, -1.0, {0.0, 2.0}), 2.0, 1e-12);
    EXPECT_LT(rel(rl_integral([](double t) { return t; }, -0.5, {0.0, 1.0}), 0.75225277806367504926),
              1e-10);
    EXPECT_LT(rel(rl_integral([](double t) { return (t - 1.0) * (t - 1.0); }, -0.3, {1.0, 2.0}),
                  0.74531271474735923171),
              1e-10);
}

TEST(RlIntegral, MatchesPowerRule)
{
    for (double s : {-0.2, -0.5, -0.8})
        for (double p : {0.5, 1.0, 2.0, 3.3})
            for (double a : {0.0, 1.0}) {
                const Boundary b{a, a + 1.7};
                const double q = rl_integral([&](double t) { return std::pow(t - a, p); }, s, b);
                EXPECT_LT(rel(q, power_rule(s, p, b)), 1e-6) << s << ' ' << p << ' ' << a;
            }
}

TEST(RlIntegral, Errors)
{
    auto one = [](double) { return 1.0; };
    EXPECT_THROW(rl_integral(one, 0.0, {0.0, 1.0}), domain_error);
    EXPECT_THROW(rl_integral(one, 0.5, {0.0, 1.0}), domain_error);
    EXPECT_THROW(rl_integral(one, -0.5, {1.0, 1.0}), domain_error);
    EXPECT_THROW(rl_integral([](double t) { return std::sin(80.0 * t); }, -0.5, {0.0, 1.0},
                             {1e-12, 1e-300, 2, std::nullopt}),
                 tolerance_not_met);
}

TEST(RlDerivative, Examples)
{
    EXPECT_NEAR(rl_derivative([](double t) { return t; }, 0.5, {0.0, 1.0}), 2.0 / std::sqrt(std::numbers::pi),
                1e-6);
    EXPECT_NEAR(rl_derivative([](double t) { return t * t; }, 1.0, {0.0, 3.0}), 6.0, 1e-6);
    EXPECT_NEAR(rl_derivative([](double t) { return std::exp(t); }, 0.5, {0.0, 1.0}), exp_rule(0.5, 1.0, 1.0),
                1e-6);
}

TEST(RlDerivative, LiftIndependence)
{
    auto sq = [](double t) { return t * t; };
    for (double s : {0.3, 0.7, 1.4}) {
        const int n = static_cast<int>(std::floor(s)) + 1;
        const Boundary b{0.0, 1.3};
        const double lo = rl_derivative(sq, s, b, derivative_quadrature(), n);
        const double hi = rl_derivative(sq, s, b, derivative_quadrature(), n + 1);
        EXPECT_LT(rel(lo, hi), 1e-4) << s;
        EXPECT_LT(rel(lo, power_rule(s, 2.0, b)), 1e-4) << s;
    }
}

TEST(RlDerivative, Errors)
{
    auto one = [](double) { return 1.0; };
    EXPECT_THROW(rl_derivative(one, -0.1, {0.0, 1.0}), domain_error);
    EXPECT_THROW(rl_derivative(one, 1.5, {0.0, 1.0}, derivative_quadrature(), 1), domain_error);
}

TEST(PowerRule, Examples)
{
    EXPECT_NEAR(power_rule(2.0, 3.0, {0.0, 2.0}), 12.0, 1e-13);
    EXPECT_NEAR(power_rule(0.5, 1.0, {0.0, 1.0}), 2.0 / std::sqrt(std::numbers::pi), 1e-15);
    for (double x : {0.5, 3.0, 10.0})
        EXPECT_EQ(power_rule(2.0, 1.0, {0.0, x}), 0.0);
    EXPECT_THROW(power_rule(0.5, -1.0, {0.0, 1.0}), domain_error);
}

TEST(PowerRule, Semigroup)
{
    const Boundary b{0.0, 1.9};
    for (double p : {0.5, 1.0, 2.7})
        for (double s1 : {-0.7, -0.2, 0.4})
            for (double s2 : {-0.5, 0.3}) {
                // d^s2 [c (x-a)^(p-s1)] = c d^s2 (x-a)^(p-s1)
                const double c = gamma_ratio(p + 1.0, p + 1.0 - s1);
                const double twice = c * power_rule(s2, p - s1, b);
                EXPECT_LT(rel(twice, power_rule(s1 + s2, p, b)), 1e-11) << p << ' ' << s1 << ' ' << s2;
            }
}

TEST(ExpRule, Examples)
{
    EXPECT_NEAR(exp_rule(1.0, 2.0, 0.5), 2.0 * e, 1e-15);
    EXPECT_NEAR(exp_rule(0.0, 1.0, 1.0), e, 1e-15);
    EXPECT_NEAR(exp_rule(-1.0, 1.0, 1.0), e - 1.0, 1e-14);
    EXPECT_LT(rel(exp_rule(0.5, 1.0, 1.0), 2.8548878358509945179), 1e-13);
    EXPECT_LT(rel(exp_rule(-0.5, 1.0, 1.0), 2.2906982523032382309), 1e-13);
}

TEST(ExpRule, IntegerOrdersAreClassical)
{
    for (int n = 0; n <= 6; ++n)
        for (double beta : {-1.5, 0.3, 2.0})
            EXPECT_LT(rel(exp_rule(n, beta, 0.8), std::pow(beta, n) * std::exp(beta * 0.8)), 1e-12);
}

TEST(ExpRule, MatchesQuadratureForNegativeOrders)
{
    for (double s : {-0.3, -1.5, -2.2})
        for (double beta : {0.5, 2.0}) {
            const double x = 1.3;
            const double q = rl_integral([&](double t) { return std::exp(beta * t); }, s, {0.0, x});
            EXPECT_LT(rel(exp_rule(s, beta, x), q), 1e-9) << s << ' ' << beta;
        }
    EXPECT_THROW(exp_rule(0.5, -1.0, 1.0), domain_error);
    EXPECT_THROW(exp_rule(0.5, 1.0, 0.0), domain_error);
}

TEST(LogRule, Examples)
{
    EXPECT_NEAR(log_rule(1.0, 2.0), 0.5, 1e-15);
    EXPECT_NEAR(log_rule(2.0, 1.0), -1.0, 1e-15);
    EXPECT_NEAR(log_rule(-1.0, 1.0), -1.0, 1e-14);
    EXPECT_LT(rel(log_rule(-0.5, 2.0), 0.12677035918543681643), 1e-13);
}

TEST(LogRule, IntegerOrdersAreClassical)
{
    for (int n = 1; n <= 8; ++n)
        for (double x : {0.3, 1.0, 4.5}) {
            const double classical = ((n % 2 == 1) ? 1.0 : -1.0) * std::tgamma(n) / std::pow(x, n);
            EXPECT_LT(rel(log_rule(n, x), classical), 1e-12) << n << ' ' << x;
        }
}

TEST(LogRule, ZeroOrder)
{
    EXPECT_EQ(log_rule(0.0, 3.0), std::log(3.0));
    EXPECT_THROW(log_rule(1e-14, 3.0), domain_error);
    EXPECT_THROW(log_rule(0.5, 0.0), domain_error);
}

TEST(LogRule, MatchesQuadrature)
{
    for (double s : {-0.25, -0.7, -1.6}) {
        const double q = rl_integral([](double t) { return std::log(t); }, s, {0.0, 2.0},
                                     {1e-11, 1e-300, 2000, std::nullopt});
        EXPECT_LT(rel(log_rule(s, 2.0), q), 1e-9) << s;
    }
}

TEST(LeibnizSeries, ConstantFactorIsExact)
{
    const double s = -0.6;
    const double x = 1.4;
    auto f_frac = [&](double order) { return power_rule(order, 2.0, {0.0, x}); };
    auto g_deriv = [](unsigned j) { return j == 0 ? 1.0 : 0.0; };
    const auto r = leibniz_series(g_deriv, f_frac, s, 10);
    EXPECT_EQ(r.value, power_rule(s, 2.0, {0.0, x}));
    EXPECT_TRUE(r.converged);
}

TEST(LeibnizSeries, IntegralOfIdentity)
{
    // f = 1, g = t, s = -1: int_0^x t dt = x^2 / 2
    const double x = 2.5;
    auto f_frac = [&](double order) { return power_rule(order, 0.0, {0.0, x}); };
    auto g_deriv = [&](unsigned j) { return j == 0 ? x : (j == 1 ? 1.0 : 0.0); };
    const auto r = leibniz_series(g_deriv, f_frac, -1.0, 5);
    EXPECT_NEAR(r.value, 0.5 * x * x, 1e-13);
}

TEST(LeibnizSeries, PowerTimesExponential)
{
    // d^s [t^nu e^(beta t)] against quadrature
    const double s = -0.4;
    const double nu = 1.2;
    const double beta = -0.8;
    const double x = 1.0;
    auto f_frac = [&](double order) { return power_rule(order, nu, {0.0, x}); };
    auto g_deriv = [&](unsigned j) { return std::pow(beta, j) * std::exp(beta * x); };
    const auto r = leibniz_series(g_deriv, f_frac, s, 40);
    const double q = rl_integral([&](double t) { return std::pow(t, nu) * std::exp(beta * t); }, s, {0.0, x});
    EXPECT_LT(rel(r.value, q), 1e-9);
}
