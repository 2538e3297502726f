#pragma once

// Riemann-Liouville differintegral and closed-form differentiation rules.
//
// For s < 0
//     d^s f(x) = 1/Gamma(-s) * integral_a^x (x - t)^(-s-1) f(t) dt,
// and for s >= 0 the order is lifted by n classical derivatives,
//     d^s = d^n d^(s-n),  n = floor(s) + 1.

#include <cmath>
#include <cstdint>
#include <optional>

#include "kseries/errors.hpp"
#include "kseries/quadrature.hpp"
#include "kseries/series.hpp"
#include "kseries/special.hpp"

namespace kseries {

/// Boundary point a and evaluation point x, with a < x.
struct Boundary
{
    double a = 0.0;
    double x = 1.0;

    void validate() const
    {
        if (!(a < x))
            throw domain_error("Boundary: require a < x");
    }
};

/// Quadrature settings used when none are given.
inline QuadratureSpec default_quadrature() { return {1e-10, 1e-14, 2000, std::nullopt}; }

/// Riemann-Liouville integral of order s < 0. The kernel singularity at t = x
/// is removed by u = (x - t)^(-s) when -1 < s < 0.
template <class F>
double rl_integral(F&& f, double s, Boundary b, const QuadratureSpec& q = default_quadrature())
{
    if (!(s < 0.0))
        throw domain_error("rl_integral: order must be negative");
    b.validate();
    const double mu = -s;
    const QuadratureResult r = integrate_endpoint_power(f, b.a, b.x, mu - 1.0, q);
    return r.value * reciprocal_gamma(mu);
}

/// Step of the central difference used by rl_derivative for n derivatives.
/// Balances O(h^2) truncation against rel_tol / h^n quadrature noise.
inline double composition_step(int n, double rel_tol, double span)
{
    const double eta = std::max(1e-5, std::pow(rel_tol, 1.0 / (n + 2)));
    return eta * std::max(1.0, std::abs(span));
}

/// Quadrature used inside rl_derivative by default; tighter than the
/// integral default because the differences amplify quadrature noise.
inline QuadratureSpec derivative_quadrature() { return {1e-13, 1e-300, 4000, std::nullopt}; }

/// d^s f(x) for s >= 0 by composition: n-th central difference of
/// y -> rl_integral(f, s - n, {a, y}). f must be defined up to x + n h / 2.
/// `lift` overrides n (must satisfy s - n < 0).
template <class F>
double rl_derivative(F&& f, double s, Boundary b, const QuadratureSpec& q = derivative_quadrature(),
                     std::optional<int> lift = std::nullopt)
{
    if (!(s >= 0.0))
        throw domain_error("rl_derivative: order must be non-negative");
    b.validate();
    const int n = lift ? *lift : static_cast<int>(std::floor(s)) + 1;
    if (!(s - n < 0.0))
        throw domain_error("rl_derivative: s - n must be negative");

    const double span = b.x - b.a;
    double h = composition_step(n, q.rel_tol, span);
    h = std::min(h, span / (n + 1));

    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= n; ++i) {
        const double y = b.x + (0.5 * n - i) * h;
        const double g = rl_integral(f, s - n, Boundary{b.a, y}, q);
        acc += ((i % 2 == 0) ? binom : -binom) * g;
        binom = binom * (n - i) / (i + 1);
    }
    return acc / std::pow(h, n);
}

/// d^s (x - a)^p = Gamma(p+1) / Gamma(p+1-s) (x - a)^(p-s); exactly zero when
/// p + 1 - s is a pole of Gamma.
inline double power_rule(double s, double p, Boundary b)
{
    if (!(p > -1.0))
        throw domain_error("power_rule: p must exceed -1");
    b.validate();
    const double ratio = gamma_ratio(p + 1.0, p + 1.0 - s);
    if (ratio == 0.0)
        return 0.0;
    return ratio * std::pow(b.x - b.a, p - s);
}

/// d^s exp(beta x) with boundary point 0:
///   beta^s exp(beta x) gamma(-s, beta x) / Gamma(-s),
/// and beta^n exp(beta x) at non-negative integer orders.
inline double exp_rule(double s, double beta, double x)
{
    if (!(x > 0.0))
        throw domain_error("exp_rule: x must be positive");
    if (detail::is_nonnegative_integer(s))
        return std::pow(beta, s) * std::exp(beta * x);
    const double bx = beta * x;
    if (!(bx > 0.0))
        throw domain_error("exp_rule: beta x must be positive at non-integer order");
    const double lower = lower_incomplete_gamma(-s, bx);
    return std::exp(s * std::log(beta) + bx) * lower * reciprocal_gamma(-s);
}

/// d^s ln x with boundary point 0:
///   x^(-s) / Gamma(1-s) [ln x - psi(-s) - C + 1/s].
/// s == 0 is the identity; positive integers use (-1)^(n-1) (n-1)! / x^n.
inline double log_rule(double s, double x)
{
    if (!(x > 0.0))
        throw domain_error("log_rule: x must be positive");
    if (s == 0.0)
        return std::log(x);
    if (std::abs(s) < pole_tolerance)
        throw domain_error("log_rule: order too close to zero (1/s cancellation)");
    if (s > 0.0 && s == std::floor(s)) {
        const double n = s;
        const double mag = std::exp(gamma_log(n).log_abs - n * std::log(x));
        return std::fmod(n, 2.0) == 1.0 ? mag : -mag;
    }
    const double bracket = std::log(x) - digamma(-s) - euler_gamma + 1.0 / s;
    return std::pow(x, -s) * reciprocal_gamma(1.0 - s) * bracket;
}

/// Fractional Leibniz rule truncated at j = N:
///   d^s (f g) = sum_j C(s, j) d^(s-j) f  d^j g.
/// `g_derivative(j)` returns the classical j-th derivative of g at x and
/// `f_fractional(order)` the order-th differintegral of f at x.
template <class GDerivative, class FFractional>
SeriesApproximation leibniz_series(GDerivative&& g_derivative, FFractional&& f_fractional, double s,
                                   unsigned N)
{
    TruncationPolicy policy;
    policy.max_terms = static_cast<int>(N) + 1;
    policy.consecutive = static_cast<int>(N) + 2; // never stop early
    SeriesAccumulator acc(policy);
    for (unsigned j = 0; j <= N; ++j) {
        const double dg = g_derivative(j);
        const double term = dg == 0.0 ? 0.0 : gen_binomial(s, j) * f_fractional(s - j) * dg;
        acc.add(term);
    }
    SeriesApproximation r = acc.result();
    r.converged = r.last_term_abs <= 1e-14 * std::abs(r.value);
    r.diverging = false;
    return r;
}

} // namespace kseries
