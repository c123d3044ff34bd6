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
#include "jtnoma/errors.hpp"
#include "jtnoma/geometry.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace jtnoma {

inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultUpsilon = 0.01;

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

/**
 * @brief Scalar knobs of the rate model.
 *
 * Total base-station power is normalized to 1: the near user gets alpha, each
 * of the three far users gets beta = (1 - alpha) / 3. rho is the linear
 * transmit SNR P/N0 and upsilon the residual interference left by imperfect
 * SIC. Sub-band m (1..3) carries the far user of cell m.
 */
class SystemParams
{
  public:
    static constexpr std::array<double, kNumCells> kEqualBands{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    SystemParams(double alpha, double rho, double upsilon = kDefaultUpsilon,
                 std::array<double, kNumCells> band_fractions = kEqualBands)
        : m_alpha(alpha),
          m_beta((1.0 - alpha) / 3.0),
          m_rho(rho),
          m_upsilon(upsilon),
          m_bands(band_fractions)
    {
        if (!(alpha > 0.0 && alpha < 0.25))
        {
            throw DomainError("alpha must lie in (0, 0.25), got " + std::to_string(alpha));
        }
        if (!(rho > 0.0) || !std::isfinite(rho))
        {
            throw DomainError("rho must be positive and finite");
        }
        if (!(upsilon >= 0.0) || !std::isfinite(upsilon))
        {
            throw DomainError("upsilon must be nonnegative");
        }
        double sum = 0.0;
        for (double b : m_bands)
        {
            if (!(b > 0.0))
            {
                throw DomainError("band fractions must be positive");
            }
            sum += b;
        }
        if (std::abs(sum - 1.0) > 1e-12)
        {
            throw DomainError("band fractions must sum to 1");
        }
    }

    double alpha() const noexcept
    {
        return m_alpha;
    }

    double beta() const noexcept
    {
        return m_beta;
    }

    double rho() const noexcept
    {
        return m_rho;
    }

    double upsilon() const noexcept
    {
        return m_upsilon;
    }

    const std::array<double, kNumCells>& band_fractions() const noexcept
    {
        return m_bands;
    }

    /// Bandwidth fraction of sub-band m (1..3).
    double band(int subband) const
    {
        check_cell(subband);
        return m_bands[subband - 1];
    }

  private:
    double m_alpha;
    double m_beta;
    double m_rho;
    double m_upsilon;
    std::array<double, kNumCells> m_bands;
};

enum class SchemeId
{
    oma,
    noma,
    vpnoma,
    comp_vpnoma,
};

inline constexpr std::array<SchemeId, 4> kAllSchemes{
    SchemeId::oma, SchemeId::noma, SchemeId::vpnoma, SchemeId::comp_vpnoma};

/// Token used in CSV files and on the command line.
inline std::string_view scheme_token(SchemeId scheme)
{
    switch (scheme)
    {
    case SchemeId::oma:
        return "oma";
    case SchemeId::noma:
        return "noma";
    case SchemeId::vpnoma:
        return "vpnoma";
    case SchemeId::comp_vpnoma:
        return "comp-vpnoma";
    }
    throw DomainError("unknown scheme");
}

inline std::string_view scheme_label(SchemeId scheme)
{
    switch (scheme)
    {
    case SchemeId::oma:
        return "OMA";
    case SchemeId::noma:
        return "NOMA";
    case SchemeId::vpnoma:
        return "VP-NOMA";
    case SchemeId::comp_vpnoma:
        return "JT-CoMP VP-NOMA";
    }
    throw DomainError("unknown scheme");
}

inline std::optional<SchemeId> parse_scheme(std::string_view token)
{
    for (SchemeId s : kAllSchemes)
    {
        if (scheme_token(s) == token)
        {
            return s;
        }
    }
    return std::nullopt;
}

/**
 * @brief Instantaneous rates of one realization, in bits/s/Hz.
 *
 * per_subband_sum is only present for the virtual-pairing schemes, where the
 * band is split into three sub-bands each carrying all near users and one far
 * user.
 */
struct RateBreakdown
{
    std::array<double, kNumUsers> per_user{};
    std::optional<std::array<double, kNumCells>> per_subband_sum;
    double total{0.0};

    double rate(UserId user) const
    {
        return per_user[user_index(user)];
    }
};

namespace detail {

inline double spectral_efficiency(double signal, double interference_plus_noise)
{
    return std::log2(1.0 + signal / interference_plus_noise);
}

/// Near user after SIC: own-cell near signal against other cells' near signals.
inline double near_efficiency(double alpha, double rho, double serving_gain, double other_gain,
                              double eps_sum, double upsilon)
{
    return spectral_efficiency(alpha * rho * serving_gain,
                               alpha * rho * other_gain + rho * eps_sum + rho * upsilon + 1.0);
}

/// Far user jointly served by all three base stations (non-coherent combining).
inline double comp_far_efficiency(double alpha, double beta, double rho, double gain_sum,
                                  double eps_sum)
{
    return spectral_efficiency(beta * rho * gain_sum, alpha * rho * gain_sum + rho * eps_sum + 1.0);
}

inline double gain_sum(const LinkTable& g, std::size_t u)
{
    return g[0][u] + g[1][u] + g[2][u];
}

} // namespace detail

/// Rate of near user of `cell` on sub-band `subband`, both 1..3.
inline double near_rate_subband(const ChannelRealization& real, const LinkStatistics& stats,
                                const SystemParams& p, int cell, int subband)
{
    check_cell(cell);
    const double band = p.band(subband);
    const std::size_t u = user_index(near_user(cell));
    const double serving = real.gain[cell - 1][u];
    const double other = detail::gain_sum(real.gain, u) - serving;
    return band * detail::near_efficiency(p.alpha(), p.rho(), serving, other,
                                          stats.eps_sum(near_user(cell)), p.upsilon());
}

/// Rate of a far user served by joint transmission on its own sub-band.
inline double far_rate_comp(const ChannelRealization& real, const LinkStatistics& stats,
                            const SystemParams& p, UserId far)
{
    if (!is_far(far))
    {
        throw DomainError(std::string(user_name(far)) + " is not a far user");
    }
    const std::size_t u = user_index(far);
    return p.band(serving_cell(far)) *
           detail::comp_far_efficiency(p.alpha(), p.beta(), p.rho(), detail::gain_sum(real.gain, u),
                                       stats.eps_sum(far));
}

namespace detail {

inline RateBreakdown virtual_pairing_rates(const ChannelRealization& real,
                                           const LinkStatistics& stats, const SystemParams& p,
                                           bool joint_transmission)
{
    const LinkTable& g = real.gain;
    const double alpha = p.alpha();
    const double beta = p.beta();
    const double rho = p.rho();

    RateBreakdown out;
    std::array<double, kNumCells> near_eff{};
    for (int c = 0; c < kNumCells; ++c)
    {
        const std::size_t u = static_cast<std::size_t>(c);
        const double serving = g[c][u];
        near_eff[c] = near_efficiency(alpha, rho, serving, gain_sum(g, u) - serving,
                                      stats.eps_sum(near_user(c + 1)), p.upsilon());
    }

    std::array<double, kNumCells> subband{};
    for (int m = 0; m < kNumCells; ++m)
    {
        const double band = p.band_fractions()[m];
        const std::size_t fu = kNumCells + m;
        const double total_gain = gain_sum(g, fu);
        const double eps = stats.eps_sum(far_user(m + 1));
        double far_eff = 0.0;
        if (joint_transmission)
        {
            far_eff = comp_far_efficiency(alpha, beta, rho, total_gain, eps);
        }
        else
        {
            // Only the serving station's copy is useful; the other two are interference.
            const double serving = g[m][fu];
            far_eff = spectral_efficiency(beta * rho * serving,
                                          alpha * rho * total_gain +
                                              beta * rho * (total_gain - serving) + rho * eps + 1.0);
        }
        out.per_user[fu] = band * far_eff;
        subband[m] = out.per_user[fu];
        for (int c = 0; c < kNumCells; ++c)
        {
            const double r = band * near_eff[c];
            out.per_user[c] += r;
            subband[m] += r;
        }
    }
    out.per_subband_sum = subband;
    return out;
}

/// One near/far pair per cell sharing the whole band; other cells interfere at full power.
inline RateBreakdown noma_rates(const ChannelRealization& real, const LinkStatistics& stats,
                                const SystemParams& p)
{
    const LinkTable& g = real.gain;
    const double alpha = p.alpha();
    const double rho = p.rho();
    RateBreakdown out;
    for (int c = 0; c < kNumCells; ++c)
    {
        const std::size_t nu = c;
        const std::size_t fu = kNumCells + c;
        const double near_serving = g[c][nu];
        out.per_user[nu] = spectral_efficiency(
            alpha * rho * near_serving,
            rho * (gain_sum(g, nu) - near_serving) + rho * stats.eps_sum(near_user(c + 1)) +
                rho * p.upsilon() + 1.0);

        const double far_serving = g[c][fu];
        out.per_user[fu] = spectral_efficiency(
            (1.0 - alpha) * rho * far_serving,
            alpha * rho * far_serving + rho * (gain_sum(g, fu) - far_serving) +
                rho * stats.eps_sum(far_user(c + 1)) + 1.0);
    }
    return out;
}

/// Near users on one half of the band, far users on the other, no superposition.
inline RateBreakdown oma_rates(const ChannelRealization& real, const LinkStatistics& stats,
                               const SystemParams& p)
{
    const LinkTable& g = real.gain;
    const double rho = p.rho();
    RateBreakdown out;
    for (UserId user : kAllUsers)
    {
        const std::size_t u = user_index(user);
        const double serving = g[serving_cell(user) - 1][u];
        out.per_user[u] =
            0.5 * spectral_efficiency(rho * serving, rho * (gain_sum(g, u) - serving) +
                                                         rho * stats.eps_sum(user) + 1.0);
    }
    return out;
}

} // namespace detail

inline RateBreakdown total_instantaneous(const ChannelRealization& real, const LinkStatistics& stats,
                                         const SystemParams& p, SchemeId scheme)
{
    RateBreakdown out;
    switch (scheme)
    {
    case SchemeId::comp_vpnoma:
        out = detail::virtual_pairing_rates(real, stats, p, true);
        break;
    case SchemeId::vpnoma:
        out = detail::virtual_pairing_rates(real, stats, p, false);
        break;
    case SchemeId::noma:
        out = detail::noma_rates(real, stats, p);
        break;
    case SchemeId::oma:
        out = detail::oma_rates(real, stats, p);
        break;
    }
    out.total = 0.0;
    for (double r : out.per_user)
    {
        out.total += r;
    }
    return out;
}

} // namespace jtnoma
