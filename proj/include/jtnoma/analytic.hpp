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

#include "jtnoma/channel.hpp"
#include "jtnoma/geometry.hpp"
#include "jtnoma/schemes.hpp"
#include "jtnoma/special.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace jtnoma {

/**
 * @brief Parameters of the closed-form ergodic rates of JT-CoMP VP-NOMA.
 *
 * near_shift[j] = rho * sum_i eps(i, near j) + rho * upsilon + 1
 * far_shift[k]  = rho * sum_i eps(i, far k) + 1
 * k_rates[i][j] = 1 / (alpha * rho * sigma_hat(i, near j))
 * l_rates[i][k] = 1 / ((alpha + beta) * rho * sigma_hat(i, far k))
 * m_rates[i][k] = 1 / (alpha * rho * sigma_hat(i, far k))
 *
 * Indices are 0-based: i is the base station, j and k the cell of the user.
 */
struct ClosedFormCoefficients
{
    std::array<double, kNumCells> near_shift{};
    std::array<double, kNumCells> far_shift{};
    std::array<std::array<double, kNumCells>, kNumCells> k_rates{};
    std::array<std::array<double, kNumCells>, kNumCells> l_rates{};
    std::array<std::array<double, kNumCells>, kNumCells> m_rates{};
};

inline ClosedFormCoefficients closed_form_coefficients(const LinkStatistics& stats,
                                                       const SystemParams& p)
{
    const double alpha = p.alpha();
    const double rho = p.rho();
    ClosedFormCoefficients c;
    for (int cell = 1; cell <= kNumCells; ++cell)
    {
        const UserId nu = near_user(cell);
        const UserId fu = far_user(cell);
        c.near_shift[cell - 1] = rho * stats.eps_sum(nu) + rho * p.upsilon() + 1.0;
        c.far_shift[cell - 1] = rho * stats.eps_sum(fu) + 1.0;
        for (int bs = 1; bs <= kNumCells; ++bs)
        {
            c.k_rates[bs - 1][cell - 1] = 1.0 / (alpha * rho * stats.hat(bs, nu));
            c.l_rates[bs - 1][cell - 1] = 1.0 / ((alpha + p.beta()) * rho * stats.hat(bs, fu));
            c.m_rates[bs - 1][cell - 1] = 1.0 / (alpha * rho * stats.hat(bs, fu));
        }
    }
    return c;
}

/**
 * @brief Ergodic rate of the near user of `cell` on sub-band `subband`.
 *
 * B_m * (E[log2(S_all + a)] - E[log2(S_other + a)]), where S_all sums the
 * scaled gains from all three stations and S_other omits the serving one.
 */
inline double near_esc_closed(const LinkStatistics& stats, const SystemParams& p, int cell,
                              int subband)
{
    check_cell(cell);
    const double band = p.band(subband);
    const ClosedFormCoefficients c = closed_form_coefficients(stats, p);
    const std::size_t j = cell - 1;

    std::array<double, kNumCells> all{};
    std::vector<double> others;
    for (std::size_t i = 0; i < kNumCells; ++i)
    {
        all[i] = c.k_rates[i][j];
        if (i != j)
        {
            others.push_back(c.k_rates[i][j]);
        }
    }
    const double a = c.near_shift[j];
    const double value = hypoexp_log2_mean(all, a) - hypoexp_log2_mean(others, a);
    return band * std::max(value, 0.0);
}

/// Ergodic rate of a jointly served far user on its own sub-band.
inline double far_esc_closed(const LinkStatistics& stats, const SystemParams& p, UserId far)
{
    if (!is_far(far))
    {
        throw DomainError(std::string(user_name(far)) + " is not a far user");
    }
    const int cell = serving_cell(far);
    const ClosedFormCoefficients c = closed_form_coefficients(stats, p);
    const std::size_t k = cell - 1;

    std::array<double, kNumCells> l{};
    std::array<double, kNumCells> m{};
    for (std::size_t i = 0; i < kNumCells; ++i)
    {
        l[i] = c.l_rates[i][k];
        m[i] = c.m_rates[i][k];
    }
    const double b = c.far_shift[k];
    const double value = hypoexp_log2_mean(l, b) - hypoexp_log2_mean(m, b);
    return p.band(cell) * std::max(value, 0.0);
}

/// Per-user and per-sub-band closed-form terms; the total is their sum.
struct ClosedFormBreakdown
{
    /// near[m][j]: near user of cell j + 1 on sub-band m + 1.
    std::array<std::array<double, kNumCells>, kNumCells> near{};
    /// far[m]: far user of cell m + 1 (served on sub-band m + 1).
    std::array<double, kNumCells> far{};
    std::array<double, kNumCells> per_subband_sum{};
    double total{0.0};
};

inline ClosedFormBreakdown closed_form_breakdown(const LinkStatistics& stats, const SystemParams& p)
{
    ClosedFormBreakdown out;
    for (int m = 1; m <= kNumCells; ++m)
    {
        double sum = 0.0;
        for (int j = 1; j <= kNumCells; ++j)
        {
            out.near[m - 1][j - 1] = near_esc_closed(stats, p, j, m);
            sum += out.near[m - 1][j - 1];
        }
        out.far[m - 1] = far_esc_closed(stats, p, far_user(m));
        sum += out.far[m - 1];
        out.per_subband_sum[m - 1] = sum;
        out.total += sum;
    }
    return out;
}

/// Closed-form ergodic sum capacity of JT-CoMP VP-NOMA.
inline double total_esc_closed(const LinkStatistics& stats, const SystemParams& p)
{
    return closed_form_breakdown(stats, p).total;
}

} // namespace jtnoma
