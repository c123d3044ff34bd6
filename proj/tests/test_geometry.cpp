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

#include "jtnoma/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace jtnoma;

namespace {

NetworkLayout default_layout()
{
    return build_layout(1.0, {0.5, 0.5, 0.5}, {0.95, 0.95, 0.95});
}

Point2 rigid_motion(Point2 p, double angle, Point2 shift)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
}

} // namespace

TEST(Geometry, NearUserSitsOnItsRay)
{
    const NetworkLayout layout = default_layout();
    EXPECT_NEAR(link_distance(layout, 1, UserId::ue1), 0.5, 1e-15);
    EXPECT_NEAR(link_distance(layout, 3, UserId::ue_c), 0.95, 1e-15);
}

TEST(Geometry, CentroidIsOneRadiusFromEveryStation)
{
    const NetworkLayout layout = default_layout();
    Point2 centroid{};
    for (const Point2& bs : layout.bs_positions)
    {
        centroid.x += bs.x / 3.0;
        centroid.y += bs.y / 3.0;
    }
    for (const Point2& bs : layout.bs_positions)
    {
        EXPECT_NEAR(distance(bs, centroid), 1.0, 1e-15);
    }
}

TEST(Geometry, CrossLinkDistance)
{
    const NetworkLayout layout = default_layout();
    EXPECT_NEAR(layout.bs_positions[0].x, 0.0, 0.0);
    EXPECT_NEAR(layout.bs_positions[1].x, std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(layout.near_user_positions[0].x, std::sqrt(3.0) / 4.0, 1e-15);
    EXPECT_NEAR(layout.near_user_positions[0].y, 0.25, 1e-15);
    EXPECT_NEAR(link_distance(layout, 2, UserId::ue1), std::sqrt(1.75), 1e-14);
}

TEST(Geometry, EdgeFarUsersAreEquidistant)
{
    const NetworkLayout layout = build_layout(1.0, {0.5, 0.5, 0.5}, {1.0, 1.0, 1.0});
    for (int bs = 1; bs <= 3; ++bs)
    {
        for (UserId u : {UserId::ue_a, UserId::ue_b, UserId::ue_c})
        {
            EXPECT_NEAR(link_distance(layout, bs, u), 1.0, 1e-12);
        }
    }
}

TEST(Geometry, RejectsRadiusOutsideCell)
{
    EXPECT_THROW(build_layout(1.0, {0.5, 0.5, 0.5}, {0.95, 1.2, 0.95}), DomainError);
    EXPECT_THROW(build_layout(1.0, {0.0, 0.5, 0.5}, {0.95, 0.95, 0.95}), DomainError);
    EXPECT_THROW(build_layout(0.0, {0.5, 0.5, 0.5}, {0.95, 0.95, 0.95}), DomainError);
    try
    {
        build_layout(1.0, {0.5, 0.5, 0.5}, {0.95, 1.2, 0.95});
        FAIL() << "expected DomainError";
    }
    catch (const DomainError& e)
    {
        EXPECT_NE(std::string(e.what()).find("UE_B"), std::string::npos) << e.what();
    }
}

TEST(Geometry, RejectsUnknownIndices)
{
    const NetworkLayout layout = default_layout();
    EXPECT_THROW(link_distance(layout, 0, UserId::ue1), DomainError);
    EXPECT_THROW(link_distance(layout, 4, UserId::ue1), DomainError);
    EXPECT_THROW(link_distance(layout, 1, static_cast<UserId>(6)), DomainError);
}

TEST(Geometry, UserBookkeeping)
{
    for (int c = 1; c <= 3; ++c)
    {
        EXPECT_EQ(serving_cell(near_user(c)), c);
        EXPECT_EQ(serving_cell(far_user(c)), c);
        EXPECT_TRUE(is_near(near_user(c)));
        EXPECT_TRUE(is_far(far_user(c)));
    }
    EXPECT_EQ(user_name(UserId::ue_a), "UE_A");
}

TEST(GeometryProperty, ServingDistanceEqualsRadius)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> radius(1e-3, 1.0);
    for (int t = 0; t < 1000; ++t)
    {
        const std::array<double, 3> near{radius(rng), radius(rng), radius(rng)};
        const std::array<double, 3> far{radius(rng), radius(rng), radius(rng)};
        const NetworkLayout layout = build_layout(1.0, near, far);
        for (int c = 1; c <= 3; ++c)
        {
            // equal up to rounding of the unit ray direction
            EXPECT_NEAR(link_distance(layout, c, near_user(c)), near[c - 1], 1e-15);
            EXPECT_NEAR(link_distance(layout, c, far_user(c)), far[c - 1], 1e-15);
        }
    }
}

TEST(GeometryProperty, RigidMotionPreservesDistances)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> radius(0.05, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> offset(-10.0, 10.0);
    for (int t = 0; t < 200; ++t)
    {
        const NetworkLayout layout = build_layout(
            1.0, {radius(rng), radius(rng), radius(rng)}, {radius(rng), radius(rng), radius(rng)});
        const double a = angle(rng);
        const Point2 shift{offset(rng), offset(rng)};
        NetworkLayout moved = layout;
        for (int c = 0; c < 3; ++c)
        {
            moved.bs_positions[c] = rigid_motion(layout.bs_positions[c], a, shift);
            moved.near_user_positions[c] = rigid_motion(layout.near_user_positions[c], a, shift);
            moved.far_user_positions[c] = rigid_motion(layout.far_user_positions[c], a, shift);
        }
        for (int bs = 1; bs <= 3; ++bs)
        {
            for (UserId u : kAllUsers)
            {
                EXPECT_NEAR(link_distance(moved, bs, u), link_distance(layout, bs, u), 1e-12);
            }
        }
    }
}

TEST(GeometryProperty, SymmetricLayoutIsCyclicallyInvariant)
{
    const NetworkLayout layout = build_symmetric_layout(1.0, 0.37, 0.81);
    for (int bs = 1; bs <= 3; ++bs)
    {
        for (int c = 1; c <= 3; ++c)
        {
            const int bs2 = bs % 3 + 1;
            const int c2 = c % 3 + 1;
            EXPECT_NEAR(link_distance(layout, bs, near_user(c)),
                        link_distance(layout, bs2, near_user(c2)), 1e-12);
            EXPECT_NEAR(link_distance(layout, bs, far_user(c)),
                        link_distance(layout, bs2, far_user(c2)), 1e-12);
        }
    }
}
