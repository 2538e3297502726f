#pragma once

// Truncated-series bookkeeping shared by every series evaluator: compensated
// partial sums, the relative last-term stopping rule and divergence flagging.

#include <cmath>
#include <cstddef>
#include <deque>
#include <string>

#include "kseries/errors.hpp"

namespace kseries {

struct TruncationPolicy
{
    double rel_stop = 1e-14;
    int consecutive = 3;
    int max_terms = 200;
    int divergence_window = 5;

    void validate() const
    {
        if (!(rel_stop > 0.0) || consecutive < 1 || max_terms < 1 || divergence_window < 1)
            throw domain_error("TruncationPolicy: all fields must be positive");
    }
};

struct SeriesApproximation
{
    double value = 0.0;
    std::size_t terms_used = 0;
    double last_term_abs = 0.0;
    bool converged = false;
    bool diverging = false;
};

/// Throws series_diverged unless the approximation converged.
inline const SeriesApproximation& require_converged(const SeriesApproximation& a,
                                                    const std::string& what = "series")
{
    if (!a.converged)
        throw series_diverged(what + (a.diverging ? ": terms growing after " : ": no convergence after ") +
                              std::to_string(a.terms_used) + " terms");
    return a;
}

/// Feeds terms one at a time; add() returns false once summation should stop.
class SeriesAccumulator
{
public:
    explicit SeriesAccumulator(const TruncationPolicy& policy) : policy_(policy)
    {
        policy_.validate();
    }

    bool add(double term)
    {
        if (done_)
            return false;
        // Neumaier compensated summation
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
        ++terms_;
        last_ = std::abs(term);

        recent_.push_back(last_);
        if (static_cast<int>(recent_.size()) > policy_.divergence_window)
            recent_.pop_front();

        if (last_ <= policy_.rel_stop * std::abs(sum_ + comp_))
            ++small_run_;
        else
            small_run_ = 0;

        if (small_run_ >= policy_.consecutive) {
            converged_ = true;
            done_ = true;
        } else if (static_cast<int>(terms_) >= policy_.max_terms) {
            diverging_ = strictly_increasing();
            done_ = true;
        }
        return !done_;
    }

    /// All remaining terms are identically zero.
    void finish_exact()
    {
        if (!done_) {
            converged_ = true;
            diverging_ = false;
            done_ = true;
        }
    }

    bool done() const { return done_; }
    std::size_t terms() const { return terms_; }
    double partial_sum() const { return sum_ + comp_; }

    /// The result with the sum and last term scaled by `prefactor`.
    SeriesApproximation result(double prefactor = 1.0) const
    {
        SeriesApproximation r;
        r.value = prefactor * partial_sum();
        r.terms_used = terms_;
        r.last_term_abs = std::abs(prefactor) * last_;
        r.converged = converged_;
        r.diverging = !converged_ && diverging_;
        return r;
    }

private:
    bool strictly_increasing() const
    {
        if (static_cast<int>(recent_.size()) < policy_.divergence_window || recent_.size() < 2)
            return false;
        for (std::size_t i = 1; i < recent_.size(); ++i)
            if (!(recent_[i] > recent_[i - 1]))
                return false;
        return true;
    }

    TruncationPolicy policy_;
    double sum_ = 0.0;
    double comp_ = 0.0;
    double last_ = 0.0;
    std::size_t terms_ = 0;
    int small_run_ = 0;
    std::deque<double> recent_;
    bool converged_ = false;
    bool diverging_ = false;
    bool done_ = false;
};

} // namespace kseries
