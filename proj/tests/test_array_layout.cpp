// SPDX-License-Identifier: Apache-2.0
//
// ris-sim: desk-scale simulator for a 1-bit transmissive RIS
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ris/array_layout.hpp"

#include <doctest.h>

#include <cmath>

using namespace ris;

TEST_CASE("single element sits at the origin")
{
    ArrayLayout layout;
    layout.rows = layout.cols = 1;
    const auto pos = element_positions(layout);
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].first == 0.0);
    CHECK(pos[0].second == 0.0);
}

TEST_CASE("2x2 positions are the symmetric half-period corners")
{
    ArrayLayout layout;
    layout.rows = layout.cols = 2;
    const auto pos = element_positions(layout);
    REQUIRE(pos.size() == 4);
    CHECK(pos[0] == std::pair{-0.009, -0.009});
    CHECK(pos[1] == std::pair{0.009, -0.009});
    CHECK(pos[2] == std::pair{-0.009, 0.009});
    CHECK(pos[3] == std::pair{0.009, 0.009});
}

TEST_CASE("default 16x16 grid geometry")
{
    ArrayLayout layout;
    const auto pos = element_positions(layout);
    REQUIRE(pos.size() == 256);

    // row-major: first element is the smallest (x, y) corner
    CHECK(pos.front().first == doctest::Approx(-0.135).epsilon(1e-12));
    CHECK(pos.front().second == doctest::Approx(-0.135).epsilon(1e-12));
    CHECK(pos.back().first == doctest::Approx(0.135).epsilon(1e-12));
    CHECK(pos.back().second == doctest::Approx(0.135).epsilon(1e-12));

    double cx = 0.0, cy = 0.0;
    for (const auto& [x, y] : pos) {
        cx += x;
        cy += y;
    }
    CHECK(std::abs(cx / pos.size()) < 1e-12);
    CHECK(std::abs(cy / pos.size()) < 1e-12);
}

TEST_CASE("feed distances")
{
    ArrayLayout layout;

    SUBCASE("on-axis element sees exactly F")
    {
        ArrayLayout one;
        one.rows = one.cols = 1;
        CHECK(feed_distance_to_element(one, 0) == 0.26);
    }
    SUBCASE("corner element, hand value")
    {
        // sqrt(0.135^2 + 0.135^2 + 0.26^2)
        CHECK(feed_distance_to_element(layout, 255) ==
              doctest::Approx(0.32256782232578624).epsilon(1e-12));
    }
    SUBCASE("offset feed cancels the transverse term")
    {
        ArrayLayout off = layout;
        off.feed_offset_x = 0.135;
        off.feed_offset_y = 0.135;
        CHECK(feed_distance_to_element(off, 255) == doctest::Approx(0.26).epsilon(1e-12));
    }
    SUBCASE("index out of range")
    {
        CHECK_THROWS_AS((void)feed_distance_to_element(layout, 256), std::out_of_range);
        CHECK_THROWS_AS((void)feed_distance_to_element(layout, -1), std::out_of_range);
    }
}

TEST_CASE("centered-feed distances obey the dihedral symmetry exactly")
{
    ArrayLayout layout;
    auto d = [&](int r, int c) { return feed_distance_to_element(layout, r * 16 + c); };
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            CHECK(d(r, c) == d(c, r));
            CHECK(d(r, c) == d(15 - r, c));
            CHECK(d(r, c) == d(r, 15 - c));
        }
    }
}

TEST_CASE("min feed distance is bounded below by F for a centered feed")
{
    for (int rows : {1, 3, 16}) {
        for (int cols : {1, 8, 16}) {
            ArrayLayout layout;
            layout.rows = rows;
            layout.cols = cols;
            for (int i = 0; i < layout.element_count(); ++i)
                CHECK(feed_distance_to_element(layout, i) >= layout.feed_distance);
        }
    }
}

TEST_CASE("layout validation names the offending field")
{
    ArrayLayout layout;
    layout.rows = 0;
    CHECK_THROWS_WITH_AS(layout.validate(), "rows must be >= 1", std::invalid_argument);
    layout.rows = 16;
    layout.period = -1.0;
    CHECK_THROWS_WITH_AS(layout.validate(), "period must be > 0", std::invalid_argument);
    layout.period = 0.018;
    layout.feed_distance = 0.0;
    CHECK_THROWS_WITH_AS(layout.validate(), "feed_distance must be > 0", std::invalid_argument);
}
