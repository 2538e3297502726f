#pragma once

// Gamma-family primitives on the real line.
//
// Everything downstream that needs a ratio of gamma functions goes through
// the log-space representation here, so that ratios such as
// Gamma(k + 1/2 - s) / Gamma(k + 1/2 + s) stay finite for large k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "kseries/errors.hpp"

namespace kseries {

/// Gamma(x) stored as (log|Gamma(x)|, sign).
struct LogGammaValue
{
    double log_abs = 0.0;
    int sign = 1;

    double value() const { return sign * std::exp(log_abs); }
};

inline constexpr double euler_gamma = std::numbers::egamma;

namespace detail {

// Products up to this length are evaluated directly rather than as gamma ratios.
inline constexpr std::uint64_t product_form_limit = 64;

inline bool near_nonpositive_integer(double x)
{
    if (x > 0.5)
        return false;
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) < pole_tolerance;
}

inline bool is_nonnegative_integer(double x)
{
    return x >= 0.0 && x == std::floor(x);
}

// sin(pi x) with argument reduction, exact at integers.
inline double sin_pi(double x)
{
    const double n = std::round(x);
    const double r = x - n;
    const double s = std::sin(std::numbers::pi * r);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

// pi / tan(pi x), periodic with period one.
inline double pi_cot_pi(double x)
{
    const double r = x - std::round(x);
    return std::numbers::pi / std::tan(std::numbers::pi * r);
}

// log Gamma(x) for x >= 10 by the Stirling series.
inline double log_gamma_stirling(double x)
{
    const double x2 = x * x;
    const double series =
        1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2) -
        1.0 / (1680.0 * x * x2 * x2 * x2);
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

} // namespace detail

/// log|Gamma(x)| and its sign. Throws pole_error at non-positive integers.
inline LogGammaValue gamma_log(double x)
{
    if (std::isnan(x))
        throw domain_error("gamma_log: NaN argument");
    if (detail::near_nonpositive_integer(x))
        throw pole_error(x);

    if (x > 0.0) {
        if (x < 171.0)
            return {std::log(std::tgamma(x)), 1};
        return {detail::log_gamma_stirling(x), 1};
    }

    // Gamma alternates sign between consecutive poles on the negative axis.
    const int sign = (static_cast<std::int64_t>(std::ceil(-x)) % 2 == 0) ? 1 : -1;
    if (x > -170.0) {
        const double g = std::tgamma(x);
        if (g != 0.0 && std::isfinite(g))
            return {std::log(std::abs(g)), sign};
    }
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x), with 1 - x > 1 here.
    const LogGammaValue reflected = gamma_log(1.0 - x);
    return {std::log(std::numbers::pi) - std::log(std::abs(detail::sin_pi(x))) -
                reflected.log_abs,
            sign};
}

inline double gamma(double x) { return gamma_log(x).value(); }

/// 1 / Gamma(x); zero at the poles instead of throwing.
inline double reciprocal_gamma(double x)
{
    if (detail::near_nonpositive_integer(x))
        return 0.0;
    const LogGammaValue g = gamma_log(x);
    return g.sign * std::exp(-g.log_abs);
}

/// Gamma(num) / Gamma(den) evaluated in log-space. Zero when den is a pole;
/// throws pole_error when num is.
inline double gamma_ratio(double num, double den)
{
    const LogGammaValue n = gamma_log(num);
    if (detail::near_nonpositive_integer(den))
        return 0.0;
    const LogGammaValue d = gamma_log(den);
    return n.sign * d.sign * std::exp(n.log_abs - d.log_abs);
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
inline double pochhammer(double a, std::uint64_t k)
{
    if (k == 0)
        return 1.0;
    if (a <= 0.0 && a == std::floor(a) && static_cast<double>(k) > -a)
        return 0.0;
    if (k <= detail::product_form_limit || detail::near_nonpositive_integer(a)) {
        double p = 1.0;
        for (std::uint64_t i = 0; i < k; ++i)
            p *= a + static_cast<double>(i);
        return p;
    }
    const LogGammaValue top = gamma_log(a + static_cast<double>(k));
    const LogGammaValue bottom = gamma_log(a);
    return top.sign * bottom.sign * std::exp(top.log_abs - bottom.log_abs);
}

/// Generalized binomial coefficient C(s, j) = s (s-1) ... (s-j+1) / j!.
inline double gen_binomial(double s, std::uint64_t j)
{
    if (j == 0)
        return 1.0;
    if (j <= detail::product_form_limit || detail::is_nonnegative_integer(s)) {
        double c = 1.0;
        for (std::uint64_t i = 0; i < j; ++i) {
            const double fi = static_cast<double>(i);
            c *= (s - fi) / (fi + 1.0);
            if (c == 0.0)
                break;
        }
        return c;
    }
    // (-1)^j Gamma(j - s) / (j! Gamma(-s))
    const double fj = static_cast<double>(j);
    const LogGammaValue top = gamma_log(fj - s);
    const LogGammaValue bottom = gamma_log(-s);
    const double log_mag = top.log_abs - bottom.log_abs - gamma_log(fj + 1.0).log_abs;
    const int sign = top.sign * bottom.sign * ((j % 2 == 0) ? 1 : -1);
    return sign * std::exp(log_mag);
}

/// Digamma psi(x) = d/dx log Gamma(x).
inline double digamma(double x)
{
    if (std::isnan(x))
        throw domain_error("digamma: NaN argument");
    if (detail::near_nonpositive_integer(x))
        throw pole_error(x, "digamma");

    if (x < 0.0)
        return digamma(1.0 - x) - detail::pi_cot_pi(x);

    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    // Bernoulli tail: sum B_2n / (2n x^2n), n = 1..7
    const double tail =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 -
                                inv2 * (1.0 / 240.0 -
                                        inv2 * (1.0 / 132.0 -
                                                inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    return shift + std::log(x) - 0.5 / x - tail;
}

namespace detail {

inline constexpr int incomplete_gamma_max_terms = 500;
inline constexpr double incomplete_gamma_cutoff = 1e-16;

// x^a e^{-x} sum_n x^n / (a (a+1) ... (a+n)); the analytic continuation in a.
inline double lower_gamma_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < incomplete_gamma_max_terms; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < incomplete_gamma_cutoff * std::abs(sum))
            break;
    }
    return sum * std::exp(a * std::log(x) - x);
}

// Upper incomplete gamma by modified Lentz continued fraction; x > 0, any real a.
inline double upper_gamma_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < incomplete_gamma_max_terms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < incomplete_gamma_cutoff)
            break;
    }
    return std::exp(a * std::log(x) - x) * h;
}

} // namespace detail

/// Lower incomplete gamma gamma(a, x) for x > 0, continued analytically to
/// negative non-integer a.
inline double lower_incomplete_gamma(double a, double x)
{
    if (!(x > 0.0))
        throw domain_error("lower_incomplete_gamma: x must be positive");
    if (detail::near_nonpositive_integer(a))
        throw pole_error(a, "lower_incomplete_gamma");

    // The series has no cancellation once a + n > 0, so it is used below the
    // transition point; above it the continued fraction converges quickly.
    if (x < std::max(a + 1.0, 1.5))
        return detail::lower_gamma_series(a, x);
    return gamma(a) - detail::upper_gamma_fraction(a, x);
}

} // namespace kseries
