#pragma once

#include <stdexcept>
#include <string>

namespace kseries {

/// Arguments within this distance of a gamma/digamma pole are rejected.
inline constexpr double pole_tolerance = 1e-12;

/// Precondition violation (argument outside the documented domain).
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// A gamma-family function was asked to evaluate at (or next to) a pole.
class pole_error : public domain_error
{
public:
    explicit pole_error(double location, const std::string& what_fn = "gamma")
        : domain_error(what_fn + ": argument " + std::to_string(location) +
                       " is a pole (non-positive integer)"),
          location_(location)
    {
    }

    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class tolerance_not_met : public std::runtime_error
{
public:
    tolerance_not_met(const std::string& msg, double estimate, double error)
        : std::runtime_error(msg), estimate_(estimate), error_(error)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

/// Raised by callers that require a converged series (see require_converged).
class series_diverged : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace kseries
