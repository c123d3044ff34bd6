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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace jtnoma {

inline constexpr int kNumCells = 3;
inline constexpr int kNumUsers = 6;

/**
 * @brief The six users of the three-cell network.
 *
 * ue1..ue3 are the near users of cells 1..3; ue_a..ue_c the far users of
 * cells 1..3. The far user of cell m is served on sub-band m.
 */
enum class UserId : std::uint8_t
{
    ue1,
    ue2,
    ue3,
    ue_a,
    ue_b,
    ue_c,
};

inline constexpr std::array<UserId, kNumUsers> kAllUsers{
    UserId::ue1, UserId::ue2, UserId::ue3, UserId::ue_a, UserId::ue_b, UserId::ue_c};

inline void check_cell(int cell)
{
    if (cell < 1 || cell > kNumCells)
    {
        throw DomainError("unknown cell/base-station index " + std::to_string(cell) +
                          " (expected 1..3)");
    }
}

inline std::size_t user_index(UserId user)
{
    const auto idx = static_cast<std::size_t>(user);
    if (idx >= kNumUsers)
    {
        throw DomainError("unknown user id " + std::to_string(idx));
    }
    return idx;
}

inline bool is_near(UserId user)
{
    return user_index(user) < kNumCells;
}

inline bool is_far(UserId user)
{
    return !is_near(user);
}

/// Serving cell (1..3) of a user.
inline int serving_cell(UserId user)
{
    return static_cast<int>(user_index(user) % kNumCells) + 1;
}

inline UserId near_user(int cell)
{
    check_cell(cell);
    return static_cast<UserId>(cell - 1);
}

inline UserId far_user(int cell)
{
    check_cell(cell);
    return static_cast<UserId>(kNumCells + cell - 1);
}

inline std::string_view user_name(UserId user)
{
    static constexpr std::array<std::string_view, kNumUsers> names{
        "UE1", "UE2", "UE3", "UE_A", "UE_B", "UE_C"};
    return names[user_index(user)];
}

struct Point2
{
    double x{0.0};
    double y{0.0};
};

inline double distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

/**
 * @brief Positions of the three base stations and six users.
 *
 * Lengths are in units of the normalized cell radius. Index c of each array
 * belongs to cell c + 1.
 */
struct NetworkLayout
{
    double cell_radius{1.0};
    std::array<Point2, kNumCells> bs_positions{};
    std::array<Point2, kNumCells> near_user_positions{};
    std::array<Point2, kNumCells> far_user_positions{};

    Point2 user_position(UserId user) const
    {
        const std::size_t idx = user_index(user);
        return idx < kNumCells ? near_user_positions[idx] : far_user_positions[idx - kNumCells];
    }
};

/**
 * @brief Build the symmetric three-cell layout.
 *
 * Base stations sit on an equilateral triangle of side sqrt(3) * R, so the
 * centroid is exactly R from each of them. Each user is placed on the ray from
 * its serving base station towards the centroid, at the given radius. A radius
 * of R therefore puts the user on the centroid, shared by all three cells.
 */
inline NetworkLayout build_layout(double cell_radius,
                                  const std::array<double, kNumCells>& near_radii,
                                  const std::array<double, kNumCells>& far_radii)
{
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
    {
        throw DomainError("cell radius must be positive");
    }
    const auto check_radius = [cell_radius](double r, UserId user) {
        if (!(r > 0.0 && r <= cell_radius))
        {
            throw DomainError("radius " + std::to_string(r) + " of " + std::string(user_name(user)) +
                              " outside (0, " + std::to_string(cell_radius) + "]");
        }
    };

    NetworkLayout layout;
    layout.cell_radius = cell_radius;
    const double side = std::sqrt(3.0) * cell_radius;
    layout.bs_positions = {Point2{0.0, 0.0}, Point2{side, 0.0}, Point2{side / 2.0, 1.5 * cell_radius}};
    const Point2 centroid{side / 2.0, cell_radius / 2.0};

    for (int c = 0; c < kNumCells; ++c)
    {
        check_radius(near_radii[c], near_user(c + 1));
        check_radius(far_radii[c], far_user(c + 1));

        const Point2 bs = layout.bs_positions[c];
        // |centroid - bs| == cell_radius by construction
        const double ux = (centroid.x - bs.x) / cell_radius;
        const double uy = (centroid.y - bs.y) / cell_radius;
        layout.near_user_positions[c] = Point2{bs.x + near_radii[c] * ux, bs.y + near_radii[c] * uy};
        layout.far_user_positions[c] = Point2{bs.x + far_radii[c] * ux, bs.y + far_radii[c] * uy};
    }
    return layout;
}

/// Same radius for every near user and the same for every far user.
inline NetworkLayout build_symmetric_layout(double cell_radius, double near_radius, double far_radius)
{
    return build_layout(cell_radius,
                        {near_radius, near_radius, near_radius},
                        {far_radius, far_radius, far_radius});
}

/// Euclidean distance from base station `bs` (1..3) to `user`.
inline double link_distance(const NetworkLayout& layout, int bs, UserId user)
{
    check_cell(bs);
    return distance(layout.bs_positions[bs - 1], layout.user_position(user));
}

} // namespace jtnoma
