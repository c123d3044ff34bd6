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

#include "jtnoma/channel.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <string>

using namespace jtnoma;

TEST(LinkStatistics, UnitDistancePerfectCsi)
{
    const NetworkLayout layout = build_layout(1.0, {0.5, 0.5, 0.5}, {1.0, 1.0, 1.0});
    const LinkStatistics stats = derive_link_statistics(layout, 4.0, 0.0);
    for (int bs = 1; bs <= 3; ++bs)
    {
        EXPECT_NEAR(stats.hat(bs, UserId::ue_b), 1.0, 1e-12);
        EXPECT_EQ(stats.eps(bs, UserId::ue_b), 0.0);
    }
}

TEST(LinkStatistics, SubtractsErrorVariance)
{
    const NetworkLayout layout = build_symmetric_layout(1.0, 0.5, 0.95);
    const LinkStatistics stats = derive_link_statistics(layout, 4.0, 0.001);
    EXPECT_NEAR(stats.hat(1, UserId::ue1), 15.999, 1e-12);
    EXPECT_NEAR(stats.hat(2, UserId::ue1), 1.0 / (1.75 * 1.75) - 0.001, 1e-12);
    EXPECT_NEAR(stats.eps_sum(UserId::ue1), 0.003, 1e-15);
    EXPECT_EQ(stats.pathloss_exponent, 4.0);
}

TEST(LinkStatistics, InfeasibleLink)
{
    EXPECT_THROW(estimated_variance(2.0, 4.0, 0.1, 1, UserId::ue1), InfeasibleCsiError);

    const NetworkLayout layout = build_symmetric_layout(1.0, 0.5, 0.95);
    const std::array<SigmaEpsOverride, 1> bad{SigmaEpsOverride{2, UserId::ue1, 0.5}};
    try
    {
        derive_link_statistics(layout, 4.0, 0.001, bad);
        FAIL() << "expected InfeasibleCsiError";
    }
    catch (const InfeasibleCsiError& e)
    {
        EXPECT_NE(std::string(e.what()).find("BS2 -> UE1"), std::string::npos) << e.what();
    }
}

TEST(LinkStatistics, OverridesAndDomainChecks)
{
    const NetworkLayout layout = build_symmetric_layout(1.0, 0.5, 0.95);
    const std::array<SigmaEpsOverride, 1> one{SigmaEpsOverride{3, UserId::ue_a, 0.01}};
    const LinkStatistics stats = derive_link_statistics(layout, 4.0, 0.001, one);
    EXPECT_EQ(stats.eps(3, UserId::ue_a), 0.01);
    EXPECT_EQ(stats.eps(2, UserId::ue_a), 0.001);
    EXPECT_NEAR(stats.eps_sum(UserId::ue_a), 0.012, 1e-15);

    EXPECT_THROW(derive_link_statistics(layout, 0.0, 0.001), DomainError);
    EXPECT_THROW(derive_link_statistics(layout, 4.0, -1e-3), DomainError);
    const std::array<SigmaEpsOverride, 1> negative{SigmaEpsOverride{1, UserId::ue1, -1.0}};
    EXPECT_THROW(derive_link_statistics(layout, 4.0, 0.001, negative), DomainError);
}

namespace {

LinkStatistics unit_stats()
{
    LinkStatistics stats;
    for (auto& row : stats.sigma_hat)
    {
        row.fill(1.0);
    }
    return stats;
}

} // namespace

TEST(SampleRealization, Deterministic)
{
    const LinkStatistics stats = unit_stats();
    const ChannelRealization a = sample_realization(stats, 12345, 99);
    const ChannelRealization b = sample_realization(stats, 12345, 99);
    const ChannelRealization c = sample_realization(stats, 12346, 99);
    const ChannelRealization d = sample_realization(stats, 12345, 100);
    EXPECT_EQ(a.gain, b.gain);
    EXPECT_NE(a.gain, c.gain);
    EXPECT_NE(a.gain, d.gain);
}

TEST(SampleRealization, ScalesWithVariance)
{
    LinkStatistics stats = unit_stats();
    LinkStatistics scaled = stats;
    scaled.sigma_hat[1][4] = 2.0;
    scaled.sigma_hat[2][0] = 3.7;
    for (std::uint64_t t = 0; t < 1000; ++t)
    {
        const ChannelRealization a = sample_realization(stats, t, 5);
        const ChannelRealization b = sample_realization(scaled, t, 5);
        EXPECT_EQ(b.gain[1][4], 2.0 * a.gain[1][4]);
        EXPECT_DOUBLE_EQ(b.gain[2][0], 3.7 * a.gain[2][0]);
        EXPECT_EQ(b.gain[0][0], a.gain[0][0]);
    }
}

TEST(SampleRealization, ExponentialMoments)
{
    // Law of large numbers: Exp(mean s) has mean s and variance s^2.
    LinkStatistics stats = unit_stats();
    stats.sigma_hat[0][3] = 2.5;
    constexpr std::uint64_t n = 1'000'000;
    double sum1 = 0.0;
    double sum_sq1 = 0.0;
    double sum2 = 0.0;
    double sum_sq2 = 0.0;
    double cross = 0.0;
    double min_gain = 1.0;
    for (std::uint64_t t = 0; t < n; ++t)
    {
        const ChannelRealization r = sample_realization(stats, t, 2024);
        const double x = r.gain[0][0];
        const double y = r.gain[0][3];
        sum1 += x;
        sum_sq1 += x * x;
        sum2 += y;
        sum_sq2 += y * y;
        cross += x * y;
        min_gain = std::min({min_gain, x, y});
    }
    const double m1 = sum1 / n;
    const double m2 = sum2 / n;
    const double v1 = sum_sq1 / n - m1 * m1;
    const double v2 = sum_sq2 / n - m2 * m2;
    const double corr = (cross / n - m1 * m2) / std::sqrt(v1 * v2);
    EXPECT_NEAR(m1, 1.0, 0.01);
    EXPECT_NEAR(m2, 2.5, 0.025);
    EXPECT_NEAR(v1, 1.0, 0.03);
    EXPECT_NEAR(v2, 6.25, 0.03 * 6.25);
    EXPECT_LT(std::abs(corr), 0.01);
    EXPECT_GE(min_gain, 0.0);
}

TEST(SampleRealization, AllLinkPairsUncorrelated)
{
    const LinkStatistics stats = unit_stats();
    constexpr std::uint64_t n = 200'000;
    std::array<double, 18> sum{};
    std::array<std::array<double, 18>, 18> prod{};
    for (std::uint64_t t = 0; t < n; ++t)
    {
        const ChannelRealization r = sample_realization(stats, t, 77);
        std::array<double, 18> g{};
        for (int i = 0; i < 18; ++i)
        {
            g[i] = r.gain[i / 6][i % 6];
            sum[i] += g[i];
        }
        for (int i = 0; i < 18; ++i)
        {
            for (int j = i + 1; j < 18; ++j)
            {
                prod[i][j] += g[i] * g[j];
            }
        }
    }
    for (int i = 0; i < 18; ++i)
    {
        for (int j = i + 1; j < 18; ++j)
        {
            // unit variance, so covariance is the correlation; 5 sigma at n = 2e5 is ~0.011
            const double cov = prod[i][j] / n - (sum[i] / n) * (sum[j] / n);
            EXPECT_LT(std::abs(cov), 0.012) << i << "," << j;
        }
    }
}
