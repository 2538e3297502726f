#pragma once

// Built-in parameter grids for the identity checks.

#include <optional>
#include <string>
#include <vector>

#include "kseries/detail/parallel.hpp"
#include "kseries/mcdonald_series.hpp"
#include "kseries/oracle.hpp"

namespace kseries {

enum class Suite { m4a, m4b, m5a, m5b, m10 };

inline std::optional<Suite> parse_suite(const std::string& name)
{
    if (name == "m4a") return Suite::m4a;
    if (name == "m4b") return Suite::m4b;
    if (name == "m5a") return Suite::m5a;
    if (name == "m5b") return Suite::m5b;
    if (name == "m10") return Suite::m10;
    return std::nullopt;
}

inline const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> suites{Suite::m4a, Suite::m4b, Suite::m5a, Suite::m5b, Suite::m10};
    return suites;
}

/// Rows whose both sides are known in closed form.
inline constexpr double anchor_tolerance = 1e-10;
/// The x = 1 row of the M5b check, where both K-argument readings coincide.
inline constexpr double m5b_forced_tolerance = 1e-9;
inline constexpr double default_identity_tolerance = 1e-7;

struct GridPoint
{
    double a = 0.0; // mu or s
    double beta = 0.0;
    double x = 0.0;
};

inline std::vector<VerificationRecord> run_suite(Suite suite, double tol = default_identity_tolerance)
{
    auto flatten = [](std::vector<std::vector<VerificationRecord>> nested) {
        std::vector<VerificationRecord> out;
        for (auto& v : nested)
            out.insert(out.end(), v.begin(), v.end());
        return out;
    };
    switch (suite) {
    case Suite::m4a: {
        const std::vector<GridPoint> grid{{1.0, 1.0, 1.0}, {0.5, 2.0, 1.0}, {2.5, 1.0, 0.5}};
        return detail::ordered_parallel_map(grid, [&](const GridPoint& p) {
            const bool anchor = p.a == 1.0 && p.beta == 1.0 && p.x == 1.0;
            return verify_m4a(p.a, p.beta, p.x, anchor ? anchor_tolerance : tol);
        });
    }
    case Suite::m4b: {
        const std::vector<GridPoint> grid{{1.0, 1.0, 1.0}, {1.5, 1.0, 2.0}, {0.7, 3.0, 1.0}};
        return detail::ordered_parallel_map(grid, [&](const GridPoint& p) {
            const bool anchor = p.a == 1.0 && p.beta == 1.0 && p.x == 1.0;
            return verify_m4b(p.a, p.beta, p.x, anchor ? anchor_tolerance : tol);
        });
    }
    case Suite::m5a: {
        const std::vector<GridPoint> grid{{-0.5, 1.0, 1.0}, {-0.25, 2.0, 1.0}, {-0.9, 1.0, 2.0}};
        return detail::ordered_parallel_map(
            grid, [&](const GridPoint& p) { return verify_m5a(p.a, p.beta, p.x, tol); });
    }
    case Suite::m5b: {
        const std::vector<GridPoint> grid{{-0.25, 1.0, 1.0}, {-0.25, 1.0, 4.0}, {-0.4, 2.0, 2.0}};
        return flatten(detail::ordered_parallel_map(grid, [&](const GridPoint& p) {
            return verify_m5b(p.a, p.beta, p.x, p.x == 1.0 ? m5b_forced_tolerance : tol);
        }));
    }
    case Suite::m10: {
        const std::vector<OrderArg> grid{{0.5, 1.0}, {0.5, 3.0}, {1.5, 2.0},
                                         {2.5, 1.0}, {0.7, 1.0}, {1.2, 0.5}};
        return adjudicate_m10(grid);
    }
    }
    return {};
}

/// True when every record that carries an expectation passed.
inline bool asserted_rows_pass(const std::vector<VerificationRecord>& records)
{
    for (const auto& r : records)
        if (!r.informational && !r.pass)
            return false;
    return true;
}

} // namespace kseries
