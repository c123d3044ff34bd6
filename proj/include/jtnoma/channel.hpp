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

#pragma once

#include "jtnoma/errors.hpp"
#include "jtnoma/geometry.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

namespace jtnoma {

/// Per-link table indexed [bs - 1][user_index(user)].
using LinkTable = std::array<std::array<double, kNumUsers>, kNumCells>;

inline constexpr double kDefaultPathlossExponent = 4.0;
inline constexpr double kDefaultSigmaEps = 0.001;

/**
 * @brief Statistics of the estimated channels under imperfect CSI.
 *
 * The estimate of link (i, u) is CN(0, sigma_hat) with
 * sigma_hat = d^-v - sigma_eps, where sigma_eps is the variance of the
 * estimation error.
 */
struct LinkStatistics
{
    LinkTable sigma_hat{};
    LinkTable sigma_eps{};
    double pathloss_exponent{kDefaultPathlossExponent};

    double hat(int bs, UserId user) const
    {
        check_cell(bs);
        return sigma_hat[bs - 1][user_index(user)];
    }

    double eps(int bs, UserId user) const
    {
        check_cell(bs);
        return sigma_eps[bs - 1][user_index(user)];
    }

    /// Sum of the error variances of all links into `user`.
    double eps_sum(UserId user) const
    {
        const std::size_t u = user_index(user);
        return sigma_eps[0][u] + sigma_eps[1][u] + sigma_eps[2][u];
    }
};

struct SigmaEpsOverride
{
    int bs{1};
    UserId user{UserId::ue1};
    double sigma_eps{0.0};
};

/// Estimated-channel variance of one link; throws if it would not be positive.
inline double estimated_variance(double distance, double pathloss_exponent, double sigma_eps,
                                 int bs, UserId user)
{
    const double path_gain = std::pow(distance, -pathloss_exponent);
    const double hat = path_gain - sigma_eps;
    if (!(hat > 0.0))
    {
        throw InfeasibleCsiError("link BS" + std::to_string(bs) + " -> " +
                                 std::string(user_name(user)) + ": path gain " +
                                 std::to_string(path_gain) + " does not exceed error variance " +
                                 std::to_string(sigma_eps));
    }
    return hat;
}

inline LinkStatistics derive_link_statistics(const NetworkLayout& layout,
                                             double pathloss_exponent,
                                             double sigma_eps_default,
                                             std::span<const SigmaEpsOverride> overrides = {})
{
    if (!(pathloss_exponent > 0.0) || !std::isfinite(pathloss_exponent))
    {
        throw DomainError("path-loss exponent must be positive");
    }
    if (!(sigma_eps_default >= 0.0))
    {
        throw DomainError("error variance must be nonnegative");
    }

    LinkStatistics stats;
    stats.pathloss_exponent = pathloss_exponent;
    for (auto& row : stats.sigma_eps)
    {
        row.fill(sigma_eps_default);
    }
    for (const auto& o : overrides)
    {
        check_cell(o.bs);
        if (!(o.sigma_eps >= 0.0))
        {
            throw DomainError("error variance override must be nonnegative");
        }
        stats.sigma_eps[o.bs - 1][user_index(o.user)] = o.sigma_eps;
    }

    for (int bs = 1; bs <= kNumCells; ++bs)
    {
        for (UserId user : kAllUsers)
        {
            const std::size_t u = user_index(user);
            stats.sigma_hat[bs - 1][u] =
                estimated_variance(link_distance(layout, bs, user), pathloss_exponent,
                                   stats.sigma_eps[bs - 1][u], bs, user);
        }
    }
    return stats;
}

/// Power gains |h_hat|^2 of every link for one fading draw.
struct ChannelRealization
{
    LinkTable gain{};

    double at(int bs, UserId user) const
    {
        check_cell(bs);
        return gain[bs - 1][user_index(user)];
    }
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform variate in (0, 1], a pure function of its three keys.
constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t link)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ trial);
    h = splitmix64(h ^ link);
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

} // namespace detail

/// Unit-mean exponential variate keyed by (seed, trial, link).
inline double unit_exponential(std::uint64_t seed, std::uint64_t trial, std::uint64_t link)
{
    return -std::log(detail::keyed_uniform(seed, trial, link));
}

/**
 * @brief Draw one Rayleigh-fading realization.
 *
 * Each gain is sigma_hat times a unit exponential (inverse CDF of a uniform
 * keyed by seed, trial and link), so the stream does not depend on call order
 * or threading. Estimation errors are not sampled; they enter the rates only
 * through their variances.
 */
inline ChannelRealization sample_realization(const LinkStatistics& stats, std::uint64_t trial_index,
                                             std::uint64_t seed)
{
    ChannelRealization real;
    for (std::size_t bs = 0; bs < kNumCells; ++bs)
    {
        for (std::size_t u = 0; u < kNumUsers; ++u)
        {
            const std::uint64_t link = bs * kNumUsers + u;
            real.gain[bs][u] = stats.sigma_hat[bs][u] * unit_exponential(seed, trial_index, link);
        }
    }
    return real;
}

} // namespace jtnoma
