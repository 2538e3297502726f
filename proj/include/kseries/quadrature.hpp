#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature, QUADPACK style,
// plus an endpoint-power transform for integrands of the form
// (b - t)^e g(t) with -1 < e < 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kseries/errors.hpp"

namespace kseries {

struct QuadratureSpec
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    /// Known power-law exponent e of the integrand at the upper endpoint,
    /// i.e. h(t) ~ (b - t)^e; removed by substitution when -1 < e < 0.
    /// h is still evaluated at b - w, which rounds to b once w drops below
    /// the spacing of doubles near b; integrate_endpoint_power has no such limit.
    std::optional<double> endpoint_exponent_hint;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw domain_error("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < 1)
            throw domain_error("QuadratureSpec: max_subdivisions must be >= 1");
        if (endpoint_exponent_hint && !(*endpoint_exponent_hint > -1.0))
            throw domain_error("QuadratureSpec: endpoint exponent must exceed -1");
    }
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// 21-point Kronrod abscissae; odd indices are the 10-point Gauss nodes.
inline constexpr double gk21_nodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr double gk21_kronrod_weights[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr double gk21_gauss_weights[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    double abs_value = 0.0;
};

template <class F>
Segment gk21(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);
    double kronrod = f_center * gk21_kronrod_weights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    double fv1[10];
    double fv2[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = half * gk21_nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += gk21_kronrod_weights[j] * (f1 + f2);
        abs_sum += gk21_kronrod_weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            gauss += gk21_gauss_weights[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * kronrod;
    double asc = gk21_kronrod_weights[10] * std::abs(f_center - mean);
    for (int j = 0; j < 10; ++j)
        asc += gk21_kronrod_weights[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    Segment s;
    s.a = a;
    s.b = b;
    s.value = kronrod * half;
    s.abs_value = abs_sum * std::abs(half);
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (s.abs_value > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * s.abs_value, err);
    s.error = err;
    return s;
}

inline bool by_error(const Segment& x, const Segment& y) { return x.error < y.error; }

} // namespace detail

namespace detail {

template <class F>
QuadratureResult integrate_adaptive(F& f, double a, double b, const QuadratureSpec& q)
{
    auto fn = [&](double t) {
        const double v = f(t);
        if (!std::isfinite(v))
            throw domain_error("integrate: integrand not finite at t = " + std::to_string(t));
        return v;
    };

    std::vector<Segment> heap;
    std::vector<Segment> frozen;
    heap.reserve(static_cast<std::size_t>(q.max_subdivisions) + 1);
    heap.push_back(gk21(fn, a, b));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (;;) {
        double value = 0.0;
        double error = 0.0;
        double abs_value = 0.0;
        for (const auto* set : {&heap, &frozen}) {
            for (const auto& s : *set) {
                value += s.value;
                error += s.error;
                abs_value += s.abs_value;
            }
        }
        const double target =
            std::max({q.abs_tol, q.rel_tol * std::abs(value), 60.0 * eps * abs_value});
        const int count = static_cast<int>(heap.size() + frozen.size());
        if (error <= target)
            return {value, error, count};
        if (heap.empty() || count >= q.max_subdivisions)
            throw tolerance_not_met("integrate: tolerance not met after " +
                                        std::to_string(count) + " subdivisions",
                                    value, error);

        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 100.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        heap.push_back(gk21(fn, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(gk21(fn, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), by_error);
    }
}

} // namespace detail

/// Adaptive integral of f over [a, b]. Throws tolerance_not_met when the
/// subdivision budget runs out; the requested accuracy is never tighter than
/// the rounding floor (a small multiple of eps times the integral of |f|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& q = {})
{
    q.validate();
    if (!(a < b)) {
        if (a == b)
            return {};
        throw domain_error("integrate: lower limit must not exceed upper limit");
    }

    if (q.endpoint_exponent_hint && *q.endpoint_exponent_hint < 0.0) {
        // u = (b - t)^(e+1) turns (b - t)^e dt into du / (e + 1).
        const double e = *q.endpoint_exponent_hint;
        const double p = e + 1.0;
        auto transformed = [&](double u) {
            const double w = std::pow(u, 1.0 / p);
            return f(b - w) * std::pow(w, -e) / p;
        };
        return detail::integrate_adaptive(transformed, 0.0, std::pow(b - a, p), q);
    }
    return detail::integrate_adaptive(f, a, b, q);
}

/// Integral of (b - t)^exponent * g(t) over [a, b] for exponent > -1. The
/// weight is applied analytically, so g is only ever evaluated at smooth points.
template <class G>
QuadratureResult integrate_endpoint_power(G&& g, double a, double b, double exponent,
                                          const QuadratureSpec& q = {})
{
    if (!(exponent > -1.0))
        throw domain_error("integrate_endpoint_power: exponent must exceed -1");
    if (!(a < b))
        throw domain_error("integrate_endpoint_power: require a < b");
    QuadratureSpec inner = q;
    inner.endpoint_exponent_hint.reset();
    if (exponent >= 0.0) {
        auto weighted = [&](double t) { return std::pow(b - t, exponent) * g(t); };
        return integrate(weighted, a, b, inner);
    }
    const double p = exponent + 1.0;
    auto transformed = [&](double u) { return g(b - std::pow(u, 1.0 / p)) / p; };
    return integrate(transformed, 0.0, std::pow(b - a, p), inner);
}

} // namespace kseries
