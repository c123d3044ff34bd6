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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace jtnoma {

namespace detail {

/// Above this argument e^x E1(x) is taken from the asymptotic series.
inline constexpr double kAsymptoticThreshold = 700.0;

template <std::floating_point T>
T e1_series(T x)
{
    // E1(x) = -gamma - ln(x) - sum_{n>=1} (-x)^n / (n * n!)
    const T eps = std::numeric_limits<T>::epsilon();
    T term = T(1);
    T sum = T(0);
    for (int n = 1; n < 200; ++n)
    {
        term *= -x / T(n);
        const T contrib = term / T(n);
        sum += contrib;
        if (std::abs(contrib) <= eps * std::abs(sum))
        {
            break;
        }
    }
    return -std::numbers::egamma_v<T> - std::log(x) - sum;
}

template <std::floating_point T>
T scaled_e1_continued_fraction(T x)
{
    // Modified Lentz on E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    const T eps = std::numeric_limits<T>::epsilon();
    const T tiny = std::numeric_limits<T>::min() / eps;
    T b = x + T(1);
    T c = T(1) / tiny;
    T d = T(1) / b;
    T h = d;
    for (int i = 1; i < 10000; ++i)
    {
        const T an = -T(i) * T(i);
        b += T(2);
        d = T(1) / (an * d + b);
        c = b + an / c;
        const T del = c * d;
        h *= del;
        if (std::abs(del - T(1)) <= eps)
        {
            break;
        }
    }
    return h;
}

template <std::floating_point T>
T scaled_e1_asymptotic(T x)
{
    // e^x E1(x) ~ (1/x) sum_n (-1)^n n! / x^n, truncated at the smallest term
    const T eps = std::numeric_limits<T>::epsilon();
    T term = T(1);
    T sum = T(1);
    for (int n = 1; n < 1000; ++n)
    {
        const T next = -term * T(n) / x;
        if (std::abs(next) >= std::abs(term))
        {
            break;
        }
        term = next;
        sum += term;
        if (std::abs(term) <= eps * std::abs(sum))
        {
            break;
        }
    }
    return sum / x;
}

} // namespace detail

/**
 * @brief Exponentially scaled exponential integral e^x E1(x) for x > 0.
 *
 * Never forms e^x, so it stays finite for arguments where e^x overflows.
 */
template <std::floating_point T>
T scaled_e1(T x)
{
    if (!(x > T(0)))
    {
        throw DomainError("scaled_e1: argument must be positive");
    }
    if (x <= T(1))
    {
        return std::exp(x) * detail::e1_series(x);
    }
    if (x > T(detail::kAsymptoticThreshold))
    {
        return detail::scaled_e1_asymptotic(x);
    }
    return detail::scaled_e1_continued_fraction(x);
}

/**
 * @brief Exponential integral Ei(x) on the negative real axis.
 *
 * Ei(x) = -E1(-x). Power series for |x| <= 1, continued fraction beyond.
 * Tends to 0- as x -> -inf and to -inf as x -> 0-.
 */
template <std::floating_point T>
T exp_integral_ei(T x)
{
    if (!(x < T(0)))
    {
        throw DomainError("exp_integral_ei: argument must be negative, got " +
                          std::to_string(static_cast<double>(x)));
    }
    const T z = -x;
    if (z <= T(1))
    {
        return -detail::e1_series(z);
    }
    return -std::exp(-z) * scaled_e1(z);
}

/// Relative gap below which two exponential rates are treated as coincident.
inline constexpr double kDegenerateRateGap = 1e-7;

/// Rate i is scaled by (1 + kRatePerturbationStep * i) when coincident rates exist.
inline constexpr double kRatePerturbationStep = 1e-6;

namespace detail {

inline long double min_relative_gap(std::span<const long double> rates)
{
    long double gap = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < rates.size(); ++i)
    {
        for (std::size_t h = i + 1; h < rates.size(); ++h)
        {
            const long double scale = std::max(rates[i], rates[h]);
            gap = std::min(gap, std::abs(rates[i] - rates[h]) / scale);
        }
    }
    return gap;
}

} // namespace detail

/**
 * @brief Rates actually used by hypoexp_log2_mean after degeneracy handling.
 *
 * If any two rates are closer than kDegenerateRateGap (relative), every rate i
 * is scaled by 1 + kRatePerturbationStep * i. Throws DegeneracyError when a
 * pair is still that close afterwards.
 */
inline std::vector<long double> effective_rates(std::span<const double> rates)
{
    std::vector<long double> k(rates.begin(), rates.end());
    if (detail::min_relative_gap(k) < kDegenerateRateGap)
    {
        for (std::size_t i = 0; i < k.size(); ++i)
        {
            k[i] *= 1.0L + static_cast<long double>(kRatePerturbationStep) * i;
        }
        if (detail::min_relative_gap(k) < kDegenerateRateGap)
        {
            throw DegeneracyError("hypoexp_log2_mean: rates coincide after perturbation");
        }
    }
    return k;
}

/**
 * @brief E[log2(X + shift)] for X a sum of independent exponentials.
 *
 * `rates` are the exponential rates (inverse means) of the summands. Uses the
 * partial-fraction form of the hypoexponential density:
 *
 *   E[ln(X + a)] = sum_i (ln a + e^{a k_i} E1(a k_i)) prod_{h != i} k_h / (k_h - k_i)
 *
 * The weights sum to one, so ln a is factored out of the sum. Evaluated in
 * extended precision because the weights grow like 1/gap^(n-1) for close
 * rates.
 */
inline double hypoexp_log2_mean(std::span<const double> rates, double shift)
{
    if (rates.empty())
    {
        throw DomainError("hypoexp_log2_mean: need at least one rate");
    }
    for (double r : rates)
    {
        if (!(r > 0.0) || !std::isfinite(r))
        {
            throw DomainError("hypoexp_log2_mean: rates must be positive and finite");
        }
    }
    if (!(shift >= 1.0) || !std::isfinite(shift))
    {
        throw DomainError("hypoexp_log2_mean: shift must be >= 1");
    }

    const std::vector<long double> k = effective_rates(rates);
    const long double a = shift;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < k.size(); ++i)
    {
        long double weight = 1.0L;
        for (std::size_t h = 0; h < k.size(); ++h)
        {
            if (h != i)
            {
                weight *= k[h] / (k[h] - k[i]);
            }
        }
        acc += weight * scaled_e1(a * k[i]);
    }
    return static_cast<double>((std::log(a) + acc) / std::numbers::ln2_v<long double>);
}

} // namespace jtnoma
