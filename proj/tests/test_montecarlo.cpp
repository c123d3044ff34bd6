/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "jtnoma/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace jtnoma;

namespace {

LinkStatistics default_stats()
{
    const NetworkLayout layout = build_symmetric_layout(1.0, 0.5, 0.95);
    return derive_link_statistics(layout, kDefaultPathlossExponent, kDefaultSigmaEps);
}

} // namespace

TEST(EstimateEsc, RejectsZeroTrials)
{
    EXPECT_THROW(estimate_esc(default_stats(), SystemParams(0.1, 10.0), SchemeId::oma, 0, 1),
                 DomainError);
}

TEST(EstimateEsc, SingleTrialIsTheFirstRealization)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 10.0);
    for (SchemeId s : kAllSchemes)
    {
        const EscEstimate est = estimate_esc(stats, p, s, 1, 42);
        const RateBreakdown r = total_instantaneous(sample_realization(stats, 0, 42), stats, p, s);
        EXPECT_EQ(est.mean_total, r.total);
        EXPECT_EQ(est.per_user_mean, r.per_user);
        EXPECT_EQ(est.ci95_halfwidth, 0.0);
        EXPECT_EQ(est.trials, 1u);
        EXPECT_EQ(est.seed, 42u);
    }
}

TEST(EstimateEsc, IndependentOfWorkerCount)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 100.0);
    // not a multiple of the block size
    const std::uint64_t trials = 50'001;
    const auto serial = compare_schemes(stats, p, trials, 9, 1);
    for (unsigned workers : {2u, 3u, 8u})
    {
        const auto parallel = compare_schemes(stats, p, trials, 9, workers);
        ASSERT_EQ(parallel.size(), serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i)
        {
            EXPECT_EQ(parallel[i].mean_total, serial[i].mean_total);
            EXPECT_EQ(parallel[i].ci95_halfwidth, serial[i].ci95_halfwidth);
            EXPECT_EQ(parallel[i].per_user_mean, serial[i].per_user_mean);
        }
    }
}

TEST(EstimateEsc, BookkeepingAndAnalyticField)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 100.0);
    for (SchemeId s : kAllSchemes)
    {
        const EscEstimate est = estimate_esc(stats, p, s, 20'000, 3);
        double sum = 0.0;
        for (double u : est.per_user_mean)
        {
            sum += u;
        }
        EXPECT_NEAR(est.mean_total, sum, 1e-9);
        EXPECT_EQ(est.scheme, s);
        EXPECT_EQ(est.analytic_total.has_value(), s == SchemeId::comp_vpnoma);
    }
}

TEST(EstimateEsc, ConfidenceHalfWidthScalesWithRootTrials)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 100.0);
    const EscEstimate small = estimate_esc(stats, p, SchemeId::comp_vpnoma, 25'000, 4);
    const EscEstimate large = estimate_esc(stats, p, SchemeId::comp_vpnoma, 100'000, 4);
    EXPECT_NEAR(small.ci95_halfwidth / large.ci95_halfwidth, 2.0, 0.1);
}

TEST(EstimateEsc, AgreesWithClosedForm)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 10.0);
    const EscEstimate est = estimate_esc(stats, p, SchemeId::comp_vpnoma, 1'000'000, 2019);
    ASSERT_TRUE(est.analytic_total);
    EXPECT_LE(std::abs(est.mean_total - *est.analytic_total), 3.0 * est.ci95_halfwidth);
}

TEST(EstimateEsc, ConvergesTowardsClosedForm)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 100.0);
    double prev = std::numeric_limits<double>::infinity();
    double rel = 0.0;
    for (std::uint64_t n : {10'000u, 100'000u, 1'000'000u})
    {
        const EscEstimate est = estimate_esc(stats, p, SchemeId::comp_vpnoma, n, 8);
        const double dist = std::abs(est.mean_total - *est.analytic_total);
        EXPECT_LT(dist, prev) << "trials " << n;
        prev = dist;
        rel = dist / *est.analytic_total;
    }
    EXPECT_LT(rel, 0.01);
}

TEST(CompareSchemes, CommonDrawsAndOrdering)
{
    const LinkStatistics stats = default_stats();
    const SystemParams p(0.1, 100.0);
    const auto all = compare_schemes(stats, p, 100'000, 17);
    ASSERT_EQ(all.size(), 4u);
    for (std::size_t i = 0; i < all.size(); ++i)
    {
        EXPECT_EQ(all[i].scheme, kAllSchemes[i]);
        EXPECT_EQ(all[i].seed, 17u);
        EXPECT_EQ(all[i].mean_total, estimate_esc(stats, p, kAllSchemes[i], 100'000, 17).mean_total);
    }
    const EscEstimate& comp = all[3];
    const EscEstimate& vp = all[2];
    for (int c = 1; c <= 3; ++c)
    {
        const std::size_t u = user_index(far_user(c));
        EXPECT_GE(comp.per_user_mean[u], vp.per_user_mean[u]);
    }
    for (std::size_t i = 0; i < 3; ++i)
    {
        EXPECT_GT(comp.mean_total, all[i].mean_total) << scheme_token(all[i].scheme);
    }
}

TEST(CompareSchemes, StrictlyIncreasingInSnr)
{
    const LinkStatistics stats = default_stats();
    std::array<double, 4> prev{};
    prev.fill(-1.0);
    for (double db : {0.0, 10.0, 20.0, 30.0, 40.0})
    {
        const auto all = compare_schemes(stats, SystemParams(0.1, db_to_linear(db)), 20'000, 5);
        for (std::size_t i = 0; i < 4; ++i)
        {
            EXPECT_GT(all[i].mean_total, prev[i]) << scheme_token(all[i].scheme) << " at " << db;
            prev[i] = all[i].mean_total;
        }
    }
}
