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

#include "jtnoma/analytic.hpp"
#include "jtnoma/channel.hpp"
#include "jtnoma/errors.hpp"
#include "jtnoma/schemes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace jtnoma {

inline constexpr std::uint64_t kDefaultSweepTrials = 100'000;
inline constexpr std::uint64_t kAcceptanceTrials = 1'000'000;

/// Monte-Carlo ergodic sum capacity of one scheme.
struct EscEstimate
{
    SchemeId scheme{SchemeId::comp_vpnoma};
    double mean_total{0.0};
    std::array<double, kNumUsers> per_user_mean{};
    /// 1.96 * sample standard deviation / sqrt(trials); 0 for a single trial.
    double ci95_halfwidth{0.0};
    std::uint64_t trials{0};
    std::uint64_t seed{0};
    /// Closed-form value, present only for JT-CoMP VP-NOMA.
    std::optional<double> analytic_total;
};

namespace detail {

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double x) noexcept
    {
        const double t = m_sum + x;
        if (std::abs(m_sum) >= std::abs(x))
        {
            m_comp += (m_sum - t) + x;
        }
        else
        {
            m_comp += (x - t) + m_sum;
        }
        m_sum = t;
    }

    double value() const noexcept
    {
        return m_sum + m_comp;
    }

  private:
    double m_sum{0.0};
    double m_comp{0.0};
};

/// Running statistics of one scheme over a contiguous range of trials.
struct SchemeMoments
{
    std::uint64_t count{0};
    double mean{0.0};
    double m2{0.0};
    std::array<CompensatedSum, kNumUsers> user_sums{};

    void add(const RateBreakdown& r) noexcept
    {
        ++count;
        const double delta = r.total - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (r.total - mean);
        for (std::size_t u = 0; u < kNumUsers; ++u)
        {
            user_sums[u].add(r.per_user[u]);
        }
    }

    /// Chan et al. pairwise merge; callers merge blocks in a fixed order.
    void merge(const SchemeMoments& other) noexcept
    {
        if (other.count == 0)
        {
            return;
        }
        if (count == 0)
        {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double n = na + nb;
        const double delta = other.mean - mean;
        mean += delta * nb / n;
        m2 += other.m2 + delta * delta * na * nb / n;
        count += other.count;
        for (std::size_t u = 0; u < kNumUsers; ++u)
        {
            user_sums[u].add(other.user_sums[u].value());
        }
    }
};

/// Trials per work item. Fixed so the reduction tree never depends on the worker count.
inline constexpr std::uint64_t kBlockTrials = 4096;

inline unsigned resolve_workers(unsigned workers)
{
    if (workers == 0)
    {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    return workers;
}

} // namespace detail

/**
 * @brief Estimate the ergodic sum capacity of several schemes on common draws.
 *
 * Trial t uses sample_realization(stats, t, seed) for every scheme. Trials are
 * split into fixed blocks that any number of workers may process; block
 * results are merged in block order, so the output is bit-identical for every
 * `workers` value (0 picks the hardware concurrency).
 */
inline std::vector<EscEstimate> estimate_schemes(const LinkStatistics& stats, const SystemParams& p,
                                                 std::span<const SchemeId> schemes,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 unsigned workers = 0)
{
    if (trials == 0)
    {
        throw DomainError("trials must be at least 1");
    }
    const std::size_t ns = schemes.size();
    const std::uint64_t blocks = (trials + detail::kBlockTrials - 1) / detail::kBlockTrials;
    std::vector<detail::SchemeMoments> partial(blocks * ns);

    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
        {
            const std::uint64_t first = b * detail::kBlockTrials;
            const std::uint64_t last = std::min(trials, first + detail::kBlockTrials);
            for (std::uint64_t t = first; t < last; ++t)
            {
                const ChannelRealization real = sample_realization(stats, t, seed);
                for (std::size_t s = 0; s < ns; ++s)
                {
                    partial[b * ns + s].add(total_instantaneous(real, stats, p, schemes[s]));
                }
            }
        }
    };

    const unsigned n_workers =
        static_cast<unsigned>(std::min<std::uint64_t>(detail::resolve_workers(workers), blocks));
    if (n_workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
        {
            pool.emplace_back(work);
        }
    }

    std::optional<double> analytic;
    std::vector<EscEstimate> out;
    out.reserve(ns);
    for (std::size_t s = 0; s < ns; ++s)
    {
        detail::SchemeMoments acc;
        for (std::uint64_t b = 0; b < blocks; ++b)
        {
            acc.merge(partial[b * ns + s]);
        }
        EscEstimate est;
        est.scheme = schemes[s];
        est.mean_total = acc.mean;
        for (std::size_t u = 0; u < kNumUsers; ++u)
        {
            est.per_user_mean[u] = acc.user_sums[u].value() / static_cast<double>(trials);
        }
        if (trials > 1)
        {
            const double var = acc.m2 / static_cast<double>(trials - 1);
            est.ci95_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(trials));
        }
        est.trials = trials;
        est.seed = seed;
        if (schemes[s] == SchemeId::comp_vpnoma)
        {
            if (!analytic)
            {
                analytic = total_esc_closed(stats, p);
            }
            est.analytic_total = analytic;
        }
        out.push_back(est);
    }
    return out;
}

inline EscEstimate estimate_esc(const LinkStatistics& stats, const SystemParams& p, SchemeId scheme,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers = 0)
{
    const std::array<SchemeId, 1> one{scheme};
    return estimate_schemes(stats, p, one, trials, seed, workers).front();
}

/// One estimate per scheme (in kAllSchemes order), all on the same fading draws.
inline std::vector<EscEstimate> compare_schemes(const LinkStatistics& stats, const SystemParams& p,
                                                std::uint64_t trials, std::uint64_t seed,
                                                unsigned workers = 0)
{
    return estimate_schemes(stats, p, kAllSchemes, trials, seed, workers);
}

} // namespace jtnoma
