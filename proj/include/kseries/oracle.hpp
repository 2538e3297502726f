#pragma once

// Ground truth for K_s(z) from the integral representation
//
//     K_s(z) = integral_0^inf exp(-z cosh t) cosh(s t) dt,
//
// which shares no code path with any of the series, and numerical checks of
// the definite-integral identities that connect K to fractional derivatives.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "kseries/errors.hpp"
#include "kseries/frac_calculus.hpp"
#include "kseries/quadrature.hpp"
#include "kseries/special.hpp"

namespace kseries {

enum class IdentityId { M4A, M4B, M5A, M5B, M10_ADJ };

inline std::string to_string(IdentityId id)
{
    switch (id) {
    case IdentityId::M4A: return "M4A";
    case IdentityId::M4B: return "M4B";
    case IdentityId::M5A: return "M5A";
    case IdentityId::M5B: return "M5B";
    case IdentityId::M10_ADJ: return "M10_ADJ";
    }
    return "?";
}

/// One identity check. `informational` rows are measured and reported but
/// carry no expectation that they pass.
struct VerificationRecord
{
    IdentityId identity = IdentityId::M4A;
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    bool pass = false;
    double tol = 0.0;
    bool informational = false;

    double param(const std::string& name) const
    {
        for (const auto& [k, v] : params)
            if (k == name)
                return v;
        return std::numeric_limits<double>::quiet_NaN();
    }
};

inline VerificationRecord make_record(IdentityId id,
                                      std::vector<std::pair<std::string, double>> params,
                                      double lhs, double rhs, double tol, bool informational = false)
{
    VerificationRecord r;
    r.identity = id;
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_dev = std::abs(lhs - rhs);
    r.rel_dev = r.abs_dev /
                std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    r.pass = r.rel_dev <= tol;
    r.tol = tol;
    r.informational = informational;
    return r;
}

/// Quadrature settings of the oracle and of the identity left-hand sides.
inline QuadratureSpec oracle_quadrature() { return {1e-12, 1e-300, 2000, std::nullopt}; }

/// exp(-745) is the edge of double precision; the tail beyond is dropped.
inline constexpr double oracle_tail_exponent = 745.0;

inline double k_oracle(double s, double z, const QuadratureSpec& q = oracle_quadrature())
{
    if (!(z > 0.0))
        throw domain_error("k_oracle: z must be positive");
    const double order = std::abs(s);
    if (!(order <= 50.0))
        throw domain_error("k_oracle: |s| must not exceed 50");

    // log of the integrand is -z cosh t + order t (+ log of a factor in [1/2, 1])
    auto exponent = [&](double t) { return -z * std::cosh(t) + order * t; };
    const double peak = std::asinh(order / z);
    double tail = std::max(peak, 1.0);
    while (-exponent(tail) <= oracle_tail_exponent)
        tail += 0.25;

    auto integrand = [&](double t) {
        return std::exp(exponent(t)) * 0.5 * (1.0 + std::exp(-2.0 * order * t));
    };
    double total = 0.0;
    if (peak > 0.0)
        total += integrate(integrand, 0.0, peak, q).value;
    total += integrate(integrand, peak, tail, q).value;
    return total;
}

namespace detail {

// t^(-2 mu) exp(-beta / t), finite as t -> 0+
inline double power_times_essential(double t, double power, double beta)
{
    if (t <= 0.0)
        return 0.0;
    return std::exp(power * std::log(t) - beta / t);
}

inline void require_positive(double v, const char* what)
{
    if (!(v > 0.0))
        throw domain_error(std::string(what) + " must be positive");
}

} // namespace detail

/// integral_0^x t^(-2mu) (x-t)^(mu-1) exp(-beta/t) dt
///   = beta^(1/2-mu) / sqrt(pi x) exp(-beta/2x) Gamma(mu) K_{mu-1/2}(beta/2x)
inline VerificationRecord verify_m4a(double mu, double beta, double x, double tol,
                                     const QuadratureSpec& q = oracle_quadrature())
{
    detail::require_positive(mu, "verify_m4a: mu");
    detail::require_positive(beta, "verify_m4a: beta");
    detail::require_positive(x, "verify_m4a: x");

    auto left = [&](double t) {
        return detail::power_times_essential(t, -2.0 * mu, beta) * std::pow(x - t, mu - 1.0);
    };
    auto right = [&](double t) { return detail::power_times_essential(t, -2.0 * mu, beta); };
    const double lhs = integrate(left, 0.0, 0.5 * x, q).value +
                       integrate_endpoint_power(right, 0.5 * x, x, mu - 1.0, q).value;

    const double arg = beta / (2.0 * x);
    const double rhs = std::pow(beta, 0.5 - mu) / std::sqrt(std::numbers::pi * x) *
                       std::exp(-arg) * gamma(mu) * k_oracle(mu - 0.5, arg, q);
    return make_record(IdentityId::M4A, {{"mu", mu}, {"beta", beta}, {"x", x}}, lhs, rhs, tol);
}

/// integral_0^x t^(-2mu) (x^2-t^2)^(mu-1) exp(-beta/t) dt
///   = 1/sqrt(pi) (2/beta)^(mu-1/2) x^(mu-3/2) Gamma(mu) K_{mu-1/2}(beta/x)
inline VerificationRecord verify_m4b(double mu, double beta, double x, double tol,
                                     const QuadratureSpec& q = oracle_quadrature())
{
    detail::require_positive(mu, "verify_m4b: mu");
    detail::require_positive(beta, "verify_m4b: beta");
    detail::require_positive(x, "verify_m4b: x");

    auto left = [&](double t) {
        return detail::power_times_essential(t, -2.0 * mu, beta) * std::pow(x * x - t * t, mu - 1.0);
    };
    // (x^2 - t^2)^(mu-1) = (x - t)^(mu-1) (x + t)^(mu-1)
    auto right = [&](double t) {
        return detail::power_times_essential(t, -2.0 * mu, beta) * std::pow(x + t, mu - 1.0);
    };
    const double lhs = integrate(left, 0.0, 0.5 * x, q).value +
                       integrate_endpoint_power(right, 0.5 * x, x, mu - 1.0, q).value;

    const double rhs = std::pow(2.0 / beta, mu - 0.5) * std::pow(x, mu - 1.5) /
                       std::sqrt(std::numbers::pi) * gamma(mu) * k_oracle(mu - 0.5, beta / x, q);
    return make_record(IdentityId::M4B, {{"mu", mu}, {"beta", beta}, {"x", x}}, lhs, rhs, tol);
}

/// d^s [x^(2s) exp(-beta/x)] = beta^(s+1/2) / sqrt(pi x) exp(-beta/2x) K_{s+1/2}(beta/2x), s < 0.
/// With mu = -s this is the previous identity divided by Gamma(mu).
inline VerificationRecord verify_m5a(double s, double beta, double x, double tol,
                                     const QuadratureSpec& q = oracle_quadrature())
{
    if (!(s < 0.0))
        throw domain_error("verify_m5a: s must be negative");
    detail::require_positive(beta, "verify_m5a: beta");
    detail::require_positive(x, "verify_m5a: x");

    auto f = [&](double t) { return detail::power_times_essential(t, 2.0 * s, beta); };
    const double lhs = rl_integral(f, s, Boundary{0.0, x}, q);
    const double arg = beta / (2.0 * x);
    const double rhs = std::pow(beta, s + 0.5) / std::sqrt(std::numbers::pi * x) * std::exp(-arg) *
                       k_oracle(s + 0.5, arg, q);
    return make_record(IdentityId::M5A, {{"s", s}, {"beta", beta}, {"x", x}}, lhs, rhs, tol);
}

/// d^s [x^(s-1/2) exp(-beta/sqrt(x))] against
///   2/sqrt(pi) (beta/2)^(s+1/2) x^(3/4-s/2) K_{s+1/2}(arg)
/// under both readings arg = beta/x and arg = beta/sqrt(x). Only the x = 1
/// row, where the two readings coincide, is asserted.
inline std::vector<VerificationRecord> verify_m5b(double s, double beta, double x, double tol,
                                                  const QuadratureSpec& q = oracle_quadrature())
{
    if (!(s > -0.5 && s < 0.0))
        throw domain_error("verify_m5b: s must lie in (-1/2, 0)");
    detail::require_positive(beta, "verify_m5b: beta");
    detail::require_positive(x, "verify_m5b: x");

    auto f = [&](double t) {
        if (t <= 0.0)
            return 0.0;
        return std::exp((s - 0.5) * std::log(t) - beta / std::sqrt(t));
    };
    const double lhs = rl_integral(f, s, Boundary{0.0, x}, q);
    const double prefactor = 2.0 / std::sqrt(std::numbers::pi) * std::pow(0.5 * beta, s + 0.5) *
                             std::pow(x, 0.75 - 0.5 * s);
    const bool informational = x != 1.0;

    std::vector<VerificationRecord> out;
    out.push_back(make_record(IdentityId::M5B,
                              {{"s", s}, {"beta", beta}, {"x", x}, {"k_arg_sqrt_x", 0.0}}, lhs,
                              prefactor * k_oracle(s + 0.5, beta / x, q), tol, informational));
    out.push_back(make_record(IdentityId::M5B,
                              {{"s", s}, {"beta", beta}, {"x", x}, {"k_arg_sqrt_x", 1.0}}, lhs,
                              prefactor * k_oracle(s + 0.5, beta / std::sqrt(x), q), tol,
                              informational));
    return out;
}

} // namespace kseries
