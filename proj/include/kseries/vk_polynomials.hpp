#pragma once

// The polynomial family V_k^(alpha), defined through
//
//     V_k(beta x^alpha) = x^k exp(beta x^alpha) d^k/dx^k exp(-beta x^alpha),
//
// with three independent constructions of the coefficients A_kj:
//   * the alternating coefficient sum (vk_coeffs_sum),
//   * the integer closed form available at alpha = -1 (vk_coeffs_closed_m1),
//   * the one-step differentiation recurrence (vk_coeffs_recurrence)
//         V_{k+1}(z) = alpha z V_k'(z) - (k + alpha z) V_k(z),  V_0 = 1.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kseries/detail/exact.hpp"
#include "kseries/errors.hpp"
#include "kseries/special.hpp"

namespace kseries {

/// Ascending-degree coefficients: coeffs[j] multiplies z^j.
struct Polynomial
{
    std::vector<double> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    double operator()(double z) const;
};

/// Horner evaluation.
inline double vk_eval(const Polynomial& p, double z)
{
    double acc = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

inline double Polynomial::operator()(double z) const { return vk_eval(*this, z); }

/// The exponent alpha of x^alpha; zero is degenerate and rejected.
class AlphaParam
{
public:
    explicit AlphaParam(double alpha) : alpha_(alpha)
    {
        if (!(alpha != 0.0) || !std::isfinite(alpha))
            throw domain_error("AlphaParam: alpha must be finite and nonzero");
    }

    double value() const { return alpha_; }
    std::optional<Rational> as_rational() const { return detail::as_small_rational(alpha_); }

private:
    double alpha_;
};

using ExactPolynomial = std::vector<Rational>;

inline Polynomial to_polynomial(const ExactPolynomial& p)
{
    Polynomial out;
    out.coeffs.reserve(p.size());
    for (const auto& c : p)
        out.coeffs.push_back(c.to_double());
    return out;
}

namespace detail {

// A_kj = (-1)^k / (j! q^k) * sum_{i=1}^{j} (-1)^i C(j,i) prod_{m<k} (m q - p i)
// for alpha = p/q; exact in 128-bit integers, throws std::overflow_error.
inline double vk_coefficient_sum_exact(const Rational& alpha, unsigned k, unsigned j)
{
    const int128 p = alpha.num();
    const int128 q = alpha.den();
    int128 total = 0;
    for (unsigned i = 1; i <= j; ++i) {
        int128 prod = binomial128(j, i);
        for (unsigned m = 0; m < k; ++m)
            prod = checked_mul(prod, checked_sub(checked_mul(m, q), checked_mul(p, i)));
        total = (i % 2 == 0) ? checked_add(total, prod) : checked_sub(total, prod);
    }
    long double v = static_cast<long double>(total);
    v /= static_cast<long double>(factorial128(j));
    v /= std::pow(static_cast<long double>(q), static_cast<long double>(k));
    return static_cast<double>((k % 2 == 0) ? v : -v);
}

inline double vk_coefficient_sum_float(double alpha, unsigned k, unsigned j)
{
    // (-1)^i / (i! (j-i)!) * (-alpha i)_k, accumulated in long double
    long double sum = 0.0L;
    long double comp = 0.0L;
    for (unsigned i = 1; i <= j; ++i) {
        long double rising = 1.0L;
        const long double base = -static_cast<long double>(alpha) * i;
        for (unsigned m = 0; m < k; ++m)
            rising *= base + m;
        const long double denom = std::tgamma(static_cast<long double>(i) + 1.0L) *
                                  std::tgamma(static_cast<long double>(j - i) + 1.0L);
        const long double term = ((i % 2 == 0) ? rising : -rising) / denom;
        const long double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    const long double v = sum + comp;
    return static_cast<double>((k % 2 == 0) ? v : -v);
}

} // namespace detail

/// Coefficients from the alternating sum over i. The i = 0 summand carries
/// 1/Gamma(0) and vanishes for k >= 1; V_0 = 1.
inline Polynomial vk_coeffs_sum(AlphaParam alpha, unsigned k)
{
    if (k == 0)
        return {{1.0}};
    Polynomial out;
    out.coeffs.assign(k + 1, 0.0);
    const auto exact = alpha.as_rational();
    for (unsigned j = 1; j <= k; ++j) {
        bool done = false;
        if (exact) {
            try {
                out.coeffs[j] = detail::vk_coefficient_sum_exact(*exact, k, j);
                done = true;
            } catch (const std::overflow_error&) {
            }
        }
        if (!done)
            out.coeffs[j] = detail::vk_coefficient_sum_float(alpha.value(), k, j);
    }
    return out;
}

/// Exact integer coefficients at alpha = -1:
///   A_kj = (-1)^(k+j) k! (k-1)! / ((k-j)! j! (j-1)!),  1 <= j <= k.
/// Throws std::overflow_error once a coefficient leaves the 128-bit range
/// (beyond k = 30).
inline std::vector<int128> vk_coeffs_closed_m1_exact(unsigned k)
{
    if (k == 0)
        return {1};
    std::vector<int128> out(k + 1, 0);
    for (unsigned j = 1; j <= k; ++j) {
        // k!(k-1)! / ((k-j)! j! (j-1)!) = C(k,j) C(k-1,j-1) (k-j)!
        int128 c = detail::checked_mul(detail::binomial128(k, j), detail::binomial128(k - 1, j - 1));
        c = detail::checked_mul(c, detail::factorial128(k - j));
        out[j] = ((k + j) % 2 == 0) ? c : -c;
    }
    return out;
}

inline Polynomial vk_coeffs_closed_m1(unsigned k)
{
    Polynomial out;
    for (const int128 c : vk_coeffs_closed_m1_exact(k))
        out.coeffs.push_back(static_cast<double>(c));
    return out;
}

/// Recurrence in exact rational arithmetic; throws std::overflow_error.
inline ExactPolynomial vk_coeffs_recurrence_exact(const Rational& alpha, unsigned k)
{
    ExactPolynomial v{Rational(1)};
    for (unsigned n = 0; n < k; ++n) {
        ExactPolynomial next(v.size() + 1, Rational(0));
        // coefficient of z^j: (alpha j - n) c_j - alpha c_{j-1}
        for (std::size_t j = 0; j < v.size(); ++j) {
            const Rational factor = alpha * Rational(static_cast<int128>(j)) -
                                    Rational(static_cast<int128>(n));
            next[j] = next[j] + factor * v[j];
            next[j + 1] = next[j + 1] - alpha * v[j];
        }
        v = std::move(next);
    }
    return v;
}

/// Largest k for which the recurrence is attempted in exact arithmetic.
inline constexpr unsigned exact_recurrence_limit = 25;

inline Polynomial vk_coeffs_recurrence(AlphaParam alpha, unsigned k)
{
    if (k <= exact_recurrence_limit) {
        if (const auto r = alpha.as_rational()) {
            try {
                return to_polynomial(vk_coeffs_recurrence_exact(*r, k));
            } catch (const std::overflow_error&) {
            }
        }
    }
    const double a = alpha.value();
    std::vector<double> v{1.0};
    for (unsigned n = 0; n < k; ++n) {
        std::vector<double> next(v.size() + 1, 0.0);
        for (std::size_t j = 0; j < v.size(); ++j) {
            next[j] += (a * static_cast<double>(j) - n) * v[j];
            next[j + 1] -= a * v[j];
        }
        v = std::move(next);
    }
    return {std::move(v)};
}

/// Generates u_k = (-1)^k V_k^(alpha)(w) / k! for k = 0, 1, 2, ...
///
/// At alpha = -1 the values follow from the generalized Laguerre polynomials,
/// u_k = -w L_{k-1}^(1)(w) / k, whose three-term recurrence is stable; the
/// coefficient form cancels catastrophically once k is a few dozen. Other
/// alpha use the scaled coefficient recurrence and Horner evaluation, which
/// carries that cancellation.
class ScaledVkSequence
{
public:
    ScaledVkSequence(AlphaParam alpha, double w) : alpha_(alpha.value()), w_(w) {}

    double next()
    {
        const unsigned k = k_++;
        if (alpha_ == -1.0)
            return next_laguerre(k);
        return next_generic(k);
    }

private:
    double next_laguerre(unsigned k)
    {
        if (k == 0)
            return 1.0;
        // l_cur holds L_{k-1}^(1)(w), l_prev holds L_{k-2}^(1)(w)
        if (k == 1) {
            l_cur_ = 1.0;
        } else if (k == 2) {
            l_prev_ = l_cur_;
            l_cur_ = 2.0 - w_;
        } else {
            const double n = static_cast<double>(k - 2);
            const double l_next = ((2.0 * n + 2.0 - w_) * l_cur_ - (n + 1.0) * l_prev_) / (n + 1.0);
            l_prev_ = l_cur_;
            l_cur_ = l_next;
        }
        return -w_ * l_cur_ / static_cast<double>(k);
    }

    double next_generic(unsigned k)
    {
        if (k == 0) {
            coeffs_ = {1.0};
        } else {
            // u_k = -((alpha j - (k-1)) c_j - alpha c_{j-1}) / k applied to u_{k-1}
            const double n = static_cast<double>(k - 1);
            std::vector<double> next(coeffs_.size() + 1, 0.0);
            for (std::size_t j = 0; j < coeffs_.size(); ++j) {
                next[j] -= (alpha_ * static_cast<double>(j) - n) * coeffs_[j] / k;
                next[j + 1] += alpha_ * coeffs_[j] / k;
            }
            coeffs_ = std::move(next);
        }
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * w_ + *it;
        return acc;
    }

    double alpha_;
    double w_;
    unsigned k_ = 0;
    double l_prev_ = 0.0;
    double l_cur_ = 0.0;
    std::vector<double> coeffs_;
};

} // namespace kseries
