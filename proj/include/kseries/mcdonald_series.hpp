#pragma once

// Hypergeometric-like power series for the McDonald function K_s(z).
//
// Canonical form (pole-free, terminating at half-integer s):
//
//   K_s(z) = 2^(s-1) Gamma(s) z^-s e^-z
//            [1 + sum_{k>=1} (1/2-s)_k / (1/2+s)_k  sum_{j=1}^{k} C(k-1,j-1) (-2z)^j / j!]
//
// The inner j-sum equals -2z L_{k-1}^(1)(2z) / k and is evaluated through the
// Laguerre recurrence; summing it term by term loses every digit by k ~ 60.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "kseries/detail/parallel.hpp"
#include "kseries/errors.hpp"
#include "kseries/oracle.hpp"
#include "kseries/series.hpp"
#include "kseries/special.hpp"
#include "kseries/vk_polynomials.hpp"

namespace kseries {

/// Bessel order and argument.
struct OrderArg
{
    double s = 0.0;
    double z = 1.0;
};

/// Half-integer detection tolerance for the raw prefactors.
inline constexpr double half_integer_tolerance = 1e-10;
/// Orders closer than this to zero hit the Gamma(s) prefactor pole.
inline constexpr double order_zero_tolerance = 1e-10;

namespace detail {

inline bool near_half_integer(double s)
{
    const double shifted = s - 0.5;
    return std::abs(shifted - std::round(shifted)) < half_integer_tolerance;
}

inline void require_positive_argument(double z, const char* fn)
{
    if (!(z > 0.0))
        throw domain_error(std::string(fn) + ": z must be positive");
}

// (a)_k / Gamma(b) in log-space; zero when the rising product vanishes or b is a pole.
inline double pochhammer_over_gamma(double a, std::uint64_t k, double b)
{
    if (a <= 0.0 && a == std::floor(a) && static_cast<double>(k) > -a)
        return 0.0;
    if (near_nonpositive_integer(b))
        return 0.0;
    if (near_nonpositive_integer(a))
        return pochhammer(a, k) * reciprocal_gamma(b);
    const LogGammaValue top = gamma_log(a + static_cast<double>(k));
    const LogGammaValue bottom = gamma_log(a);
    const LogGammaValue den = gamma_log(b);
    return top.sign * bottom.sign * den.sign *
           std::exp(top.log_abs - bottom.log_abs - den.log_abs);
}

} // namespace detail

/// Inner sum of the rearranged series, summed term by term with compensation.
/// Only trustworthy for small k z; kept as a reference for the stable recurrence.
inline double rearranged_inner_sum_direct(unsigned k, double z)
{
    double sum = 0.0;
    double comp = 0.0;
    double term = 1.0; // C(k-1, j-1) (-2z)^j / j! built up in j
    for (unsigned j = 1; j <= k; ++j) {
        if (j == 1)
            term = -2.0 * z;
        else
            term *= static_cast<double>(k - j + 1) / static_cast<double>(j - 1) * (-2.0 * z) /
                    static_cast<double>(j);
        const double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

/// d^s [x^nu exp(-beta x^alpha)] (boundary point 0) as the series
///   x^(nu-s) Gamma(nu+1) e^(-beta x^alpha)
///     sum_k (-1)^k/k! Gamma(k-s)/(Gamma(-s) Gamma(k-s+nu+1)) V_k^(alpha)(beta x^alpha).
inline SeriesApproximation general_expansion_m7(double s, double nu, AlphaParam alpha, double beta,
                                                double x, const TruncationPolicy& policy = {})
{
    if (!(nu > -1.0))
        throw domain_error("general_expansion_m7: nu must exceed -1");
    if (!(beta > 0.0))
        throw domain_error("general_expansion_m7: beta must be positive");
    if (!(x > 0.0))
        throw domain_error("general_expansion_m7: x must be positive");

    const double w = beta * std::pow(x, alpha.value());
    const double log_prefactor = (nu - s) * std::log(x) + gamma_log(nu + 1.0).log_abs - w;
    const bool terminates = detail::is_nonnegative_integer(s);

    SeriesAccumulator acc(policy);
    ScaledVkSequence vk(alpha, w);
    for (std::uint64_t k = 0;; ++k) {
        if (terminates && static_cast<double>(k) > s) {
            acc.finish_exact();
            break;
        }
        const double coeff = detail::pochhammer_over_gamma(-s, k, static_cast<double>(k) - s + nu + 1.0);
        if (!acc.add(coeff * vk.next()))
            break;
    }
    return acc.result(std::exp(log_prefactor));
}

/// The first series with its raw gamma-ratio prefactor:
///   K_s(z) = sqrt(pi) (2z)^-s e^-z Gamma(2s)/Gamma(1/2-s)
///            sum_k (-1)^k/k! Gamma(k+1/2-s)/Gamma(k+1/2+s) V_k^(-1)(2z).
/// The raw prefactor has a pole at half-integer s.
inline SeriesApproximation k_series_m9(double s, double z, const TruncationPolicy& policy = {})
{
    if (!(s > 0.0))
        throw domain_error("k_series_m9: s must be positive");
    if (detail::near_half_integer(s))
        throw domain_error("k_series_m9: Gamma(1/2 - s) pole at half-integer s; use the rearranged form");
    detail::require_positive_argument(z, "k_series_m9");

    const LogGammaValue g2s = gamma_log(2.0 * s);
    const LogGammaValue ghalf = gamma_log(0.5 - s);
    const double log_prefactor = 0.5 * std::log(std::numbers::pi) - s * std::log(2.0 * z) - z +
                                 g2s.log_abs - ghalf.log_abs;
    const double prefactor = g2s.sign * ghalf.sign * std::exp(log_prefactor);

    SeriesAccumulator acc(policy);
    ScaledVkSequence vk(AlphaParam(-1.0), 2.0 * z);
    for (std::uint64_t k = 0;; ++k) {
        const double kk = static_cast<double>(k);
        const double ratio = gamma_ratio(kk + 0.5 - s, kk + 0.5 + s);
        if (!acc.add(ratio * vk.next()))
            break;
    }
    return acc.result(prefactor);
}

/// The rearranged double-sum form; total at half-integers, where it terminates
/// after s + 1/2 outer terms.
inline SeriesApproximation k_series_rearranged(double s, double z, const TruncationPolicy& policy = {})
{
    if (!(s > 0.0))
        throw domain_error("k_series_rearranged: s must be positive");
    if (s < order_zero_tolerance)
        throw domain_error("k_series_rearranged: Gamma(s) pole at s = 0");
    detail::require_positive_argument(z, "k_series_rearranged");

    const double log_prefactor =
        (s - 1.0) * std::numbers::ln2 + gamma_log(s).log_abs - s * std::log(z) - z;

    SeriesAccumulator acc(policy);
    ScaledVkSequence inner(AlphaParam(-1.0), 2.0 * z);
    double ratio = 1.0; // (1/2-s)_k / (1/2+s)_k
    for (std::uint64_t k = 0;; ++k) {
        if (k > 0) {
            const double kk = static_cast<double>(k - 1);
            ratio *= (0.5 - s + kk) / (0.5 + s + kk);
        }
        const double u = inner.next();
        if (ratio == 0.0) {
            acc.finish_exact();
            break;
        }
        if (!acc.add(ratio * u))
            break;
    }
    return acc.result(std::exp(log_prefactor));
}

enum class M10Path { raw, regularized };

/// The second series, built on V_k^(-1/2)(z):
///   raw:         2^(s-1) sqrt(pi) Gamma(2s)/Gamma(1/2-s) z^-s e^-z
///                  sum_k (-1)^k/k! Gamma(k+1/2-s)/Gamma(k+1/2+s) V_k^(-1/2)(z)
///   regularized: the prefactor folded by the duplication formula into
///                2^(3s-2) Gamma(s) z^-s e^-z, with (1/2-s)_k / (1/2+s)_k.
/// Its correctness is measured by adjudicate_m10, not assumed.
inline SeriesApproximation k_series_m10(double s, double z, const TruncationPolicy& policy = {},
                                        M10Path path = M10Path::regularized)
{
    if (!(s > 0.0))
        throw domain_error("k_series_m10: s must be positive");
    if (s < order_zero_tolerance)
        throw domain_error("k_series_m10: Gamma(s) pole at s = 0");
    detail::require_positive_argument(z, "k_series_m10");

    SeriesAccumulator acc(policy);
    ScaledVkSequence vk(AlphaParam(-0.5), z);

    if (path == M10Path::raw) {
        if (detail::near_half_integer(s))
            throw domain_error("k_series_m10: Gamma(1/2 - s) pole at half-integer s; use the regularized path");
        const LogGammaValue g2s = gamma_log(2.0 * s);
        const LogGammaValue ghalf = gamma_log(0.5 - s);
        const double log_prefactor = (s - 1.0) * std::numbers::ln2 +
                                     0.5 * std::log(std::numbers::pi) + g2s.log_abs -
                                     ghalf.log_abs - s * std::log(z) - z;
        for (std::uint64_t k = 0;; ++k) {
            const double kk = static_cast<double>(k);
            if (!acc.add(gamma_ratio(kk + 0.5 - s, kk + 0.5 + s) * vk.next()))
                break;
        }
        return acc.result(g2s.sign * ghalf.sign * std::exp(log_prefactor));
    }

    const double log_prefactor =
        (3.0 * s - 2.0) * std::numbers::ln2 + gamma_log(s).log_abs - s * std::log(z) - z;
    double ratio = 1.0;
    for (std::uint64_t k = 0;; ++k) {
        if (k > 0) {
            const double kk = static_cast<double>(k - 1);
            ratio *= (0.5 - s + kk) / (0.5 + s + kk);
        }
        const double u = vk.next();
        if (ratio == 0.0) {
            acc.finish_exact();
            break;
        }
        if (!acc.add(ratio * u))
            break;
    }
    return acc.result(std::exp(log_prefactor));
}

/// Front door: K_s(z) = K_{|s|}(z) through the rearranged series.
inline SeriesApproximation k_mcdonald(double s, double z, const TruncationPolicy& policy = {})
{
    detail::require_positive_argument(z, "k_mcdonald");
    const double order = std::abs(s);
    if (order < order_zero_tolerance)
        throw domain_error("k_mcdonald: Gamma(s) pole at s = 0 (K_0 is outside the series)");
    return k_series_rearranged(order, z, policy);
}

/// Tolerance of the one analytically forced row (s = 1/2).
inline constexpr double m10_forced_tolerance = 1e-9;

/// Regularized second series against the oracle on each grid point, in input
/// order. Only the s = 1/2 rows carry an expectation.
inline std::vector<VerificationRecord> adjudicate_m10(const std::vector<OrderArg>& grid,
                                                      const TruncationPolicy& policy = {})
{
    return detail::ordered_parallel_map(grid, [&](const OrderArg& p) {
        const SeriesApproximation series = k_series_m10(p.s, p.z, policy, M10Path::regularized);
        const double oracle = k_oracle(p.s, p.z);
        const bool forced = std::abs(p.s - 0.5) < half_integer_tolerance;
        return make_record(IdentityId::M10_ADJ,
                           {{"s", p.s},
                            {"z", p.z},
                            {"terms", static_cast<double>(series.terms_used)},
                            {"converged", series.converged ? 1.0 : 0.0}},
                           series.value, oracle, m10_forced_tolerance, !forced);
    });
}

} // namespace kseries
