#include <cmath>

#include <gtest/gtest.h>

#include "kseries/series.hpp"

using namespace kseries;

TEST(SeriesAccumulator, GeometricConverges)
{
    SeriesAccumulator acc(TruncationPolicy{});
    double term = 1.0;
    while (acc.add(term))
        term *= 0.5;
    const auto r = acc.result();
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.diverging);
    EXPECT_NEAR(r.value, 2.0, 1e-14);
    EXPECT_LE(r.last_term_abs, 1e-14 * r.value);
}

TEST(SeriesAccumulator, NeedsConsecutiveSmallTerms)
{
    TruncationPolicy p;
    p.consecutive = 3;
    SeriesAccumulator acc(p);
    EXPECT_TRUE(acc.add(1.0));
    EXPECT_TRUE(acc.add(0.0));
    EXPECT_TRUE(acc.add(0.0));
    EXPECT_TRUE(acc.add(1.0)); // breaks the run
    EXPECT_TRUE(acc.add(0.0));
    EXPECT_TRUE(acc.add(0.0));
    EXPECT_FALSE(acc.add(0.0));
    EXPECT_TRUE(acc.result().converged);
    EXPECT_EQ(acc.result().terms_used, 7u);
}

TEST(SeriesAccumulator, GrowingTermsFlagDivergence)
{
    TruncationPolicy p;
    p.max_terms = 20;
    SeriesAccumulator acc(p);
    double term = 1.0;
    while (acc.add(term))
        term *= -1.5;
    const auto r = acc.result();
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(r.diverging);
    EXPECT_EQ(r.terms_used, 20u);
    EXPECT_THROW(require_converged(r), series_diverged);
}

TEST(SeriesAccumulator, SlowDecayIsNeitherFlag)
{
    TruncationPolicy p;
    p.max_terms = 50;
    SeriesAccumulator acc(p);
    for (int n = 1; acc.add(1.0 / (n * n)); ++n) {
    }
    const auto r = acc.result();
    EXPECT_FALSE(r.converged);
    EXPECT_FALSE(r.diverging);
    EXPECT_LE(r.terms_used, 50u);
}

TEST(SeriesAccumulator, FinishExactAndPrefactor)
{
    SeriesAccumulator acc(TruncationPolicy{});
    acc.add(1.0);
    acc.add(2.0);
    acc.finish_exact();
    EXPECT_FALSE(acc.add(5.0));
    const auto r = acc.result(-0.5);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.value, -1.5);
    EXPECT_EQ(r.last_term_abs, 1.0);
    EXPECT_EQ(r.terms_used, 2u);
}

TEST(SeriesAccumulator, CompensatedSum)
{
    TruncationPolicy p;
    p.max_terms = 4;
    SeriesAccumulator acc(p);
    for (double t : {1.0, 1e100, 1.0, -1e100})
        acc.add(t);
    EXPECT_EQ(acc.partial_sum(), 2.0);
}

TEST(TruncationPolicy, Validation)
{
    TruncationPolicy p;
    p.consecutive = 0;
    EXPECT_THROW(SeriesAccumulator{p}, domain_error);
    p = {};
    p.rel_stop = -1.0;
    EXPECT_THROW(p.validate(), domain_error);
}
