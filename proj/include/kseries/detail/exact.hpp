#pragma once

// Checked 128-bit integer and rational arithmetic for exact polynomial
// coefficients. Every operation throws std::overflow_error instead of wrapping.

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace kseries {

using int128 = __int128;

namespace detail {

inline int128 checked_add(int128 a, int128 b)
{
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("int128 addition overflow");
    return r;
}

inline int128 checked_sub(int128 a, int128 b)
{
    int128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("int128 subtraction overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b)
{
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("int128 multiplication overflow");
    return r;
}

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int128 gcd128(int128 a, int128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int128 binomial128(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i at every step
        r = checked_mul(r, n - k + i) / i;
    }
    return r;
}

inline int128 factorial128(std::int64_t n)
{
    int128 r = 1;
    for (std::int64_t i = 2; i <= n; ++i)
        r = checked_mul(r, i);
    return r;
}

inline std::string to_string(int128 v)
{
    if (v == 0)
        return "0";
    const bool neg = v < 0;
    std::string s;
    // careful with the most negative value: peel digits off as negatives
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        s.insert(s.begin(), static_cast<char>('0' + std::abs(digit)));
        v /= 10;
    }
    if (neg)
        s.insert(s.begin(), '-');
    return s;
}

} // namespace detail

/// Reduced fraction num/den with den > 0.
class Rational
{
public:
    Rational() = default;
    Rational(int128 num) : num_(num) {} // NOLINT(implicit)
    Rational(int128 num, int128 den)
    {
        if (den == 0)
            throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const int128 g = detail::gcd128(num, den);
        num_ = g > 1 ? num / g : num;
        den_ = g > 1 ? den / g : den;
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    double to_double() const
    {
        return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        const int128 g = detail::gcd128(a.den_, b.den_);
        const int128 bd = b.den_ / g;
        return {detail::checked_add(detail::checked_mul(a.num_, bd),
                                    detail::checked_mul(b.num_, a.den_ / g)),
                detail::checked_mul(a.den_, bd)};
    }
    friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        const int128 g1 = detail::gcd128(a.num_, b.den_);
        const int128 g2 = detail::gcd128(b.num_, a.den_);
        const int128 d1 = g1 == 0 ? 1 : g1;
        const int128 d2 = g2 == 0 ? 1 : g2;
        return {detail::checked_mul(a.num_ / d1, b.num_ / d2),
                detail::checked_mul(a.den_ / d2, b.den_ / d1)};
    }
    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    int128 num_ = 0;
    int128 den_ = 1;
};

namespace detail {

// Recovers p/q from a double when |x - p/q| is at rounding level and q <= max_den.
inline std::optional<Rational> as_small_rational(double x, std::int64_t max_den = 1000)
{
    if (!std::isfinite(x) || std::abs(x) > 1e6)
        return std::nullopt;
    // continued-fraction convergents
    double rem = x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const double a = std::floor(rem);
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t p2 = ai * p1 + p0;
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > max_den)
            break;
        if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <=
            4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
            return Rational(p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = rem - a;
        if (frac == 0.0)
            break;
        rem = 1.0 / frac;
    }
    return std::nullopt;
}

} // namespace detail

} // namespace kseries
