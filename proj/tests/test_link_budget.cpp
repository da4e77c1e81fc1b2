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

#include "ris/link_budget.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace ris;

namespace {
const std::string data_dir = RIS_TEST_DATA_DIR;

LinkScenario reference_scenario()
{
    LinkScenario s;
    s.tx_power_dbm = 10.0;
    s.tx_gain_dbi = 5.0;
    s.rx_gain_dbi = 5.0;
    s.d2_m = 0.3;
    s.ris_directivity_dbi = 20.0;
    s.ris_insertion_loss_db = 5.0;
    return s;
}
} // namespace

TEST_CASE("free-space path loss")
{
    SUBCASE("hand value at 3 m, 5.8 GHz")
    {
        CHECK(free_space_path_loss_db(3.0, 5.8e9) ==
              doctest::Approx(57.25876818753537).epsilon(1e-12));
        CHECK(free_space_path_loss_db(3.0, 5.8e9) == doctest::Approx(57.25).epsilon(4e-4));
    }
    SUBCASE("analytic zero at d = lambda / (4 pi)")
    {
        const double d = (299792458.0 / 5.8e9) / (4.0 * std::numbers::pi);
        LinkScenario s;
        s.direct_distance_m = d;
        s.wall_loss_db = 0.0;
        CHECK(received_power_direct(s) ==
              doctest::Approx(s.tx_power_dbm + s.tx_gain_dbi + s.rx_gain_dbi).epsilon(1e-12));
    }
}

TEST_CASE("direct path is strictly decreasing in distance and wall loss")
{
    LinkScenario s;
    double prev = received_power_direct(s);
    for (double d = 1.0; d < 10.0; d += 0.7) {
        s.direct_distance_m = d;
        const double p = received_power_direct(s);
        CHECK(p < prev);
        prev = p;
    }
    LinkScenario w = s;
    w.wall_loss_db = s.wall_loss_db + 5.0;
    CHECK(received_power_direct(w) == doctest::Approx(prev - 5.0).epsilon(1e-12));
}

TEST_CASE("relay path monotonicity")
{
    LinkScenario s = reference_scenario();
    SUBCASE("doubling d2 costs exactly 6.02 dB")
    {
        LinkScenario twice = s;
        twice.d2_m = 2.0 * s.d2_m;
        CHECK(received_power_via_ris(s) - received_power_via_ris(twice) ==
              doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    }
    SUBCASE("strictly decreasing in d1 and d2, increasing in directivity")
    {
        double prev = received_power_via_ris(s);
        for (double d1 = 0.6; d1 < 3.0; d1 += 0.3) {
            LinkScenario t = s;
            t.d1_m = d1;
            const double p = received_power_via_ris(t);
            CHECK(p < prev);
            prev = p;
        }
        LinkScenario hi = s;
        hi.ris_directivity_dbi += 3.0;
        CHECK(received_power_via_ris(hi) ==
              doctest::Approx(received_power_via_ris(s) + 3.0).epsilon(1e-12));
    }
    SUBCASE("power decays monotonically as the aperture degenerates")
    {
        double prev = 1e9;
        for (double area : {0.08, 0.02, 0.005, 1e-4, 1e-6}) {
            LinkScenario t = s;
            t.ris_aperture_area_m2 = area;
            const double p = received_power_via_ris(t);
            CHECK(p < prev);
            prev = p;
        }
    }
}

TEST_CASE("ris gain is independent of tx power and rx gain")
{
    LinkScenario s = reference_scenario();
    const double gain = evaluate(s).ris_gain_db;
    LinkScenario shifted = s;
    shifted.tx_power_dbm += 13.0;
    shifted.rx_gain_dbi -= 4.0;
    CHECK(evaluate(shifted).ris_gain_db == doctest::Approx(gain).epsilon(1e-12));
}

TEST_CASE("near-field boundary for the default aperture")
{
    LinkScenario s;
    // 2 * D^2 / lambda with D = sqrt(2 * 0.082944)
    CHECK(near_field_boundary_m(s) == doctest::Approx(6.4188).epsilon(1e-4));
    CHECK(near_field_violated(s)); // the prototype geometry itself
    LinkScenario far = s;
    far.d1_m = far.d2_m = 10.0;
    CHECK(!near_field_violated(far));
}

TEST_CASE("calibration recovers a known scenario")
{
    LinkScenario truth = reference_scenario();
    truth.wall_loss_db = 12.75;
    truth.system_offset_db = -3.25;

    std::vector<LinkObservation> obs;
    for (double d1 : {0.5, 0.8, 1.65}) {
        LinkScenario s = truth;
        s.d1_m = d1;
        s.direct_distance_m = d1 + truth.d2_m;
        obs.push_back({d1, received_power_direct(s), received_power_via_ris(s)});
    }
    const auto fit = calibrate(obs, reference_scenario());
    CHECK(fit.scenario.wall_loss_db == doctest::Approx(12.75).epsilon(1e-9));
    CHECK(fit.scenario.system_offset_db == doctest::Approx(-3.25).epsilon(1e-9));
    CHECK(fit.max_abs_residual_db < 1e-6);
}

TEST_CASE("single observation is fit exactly")
{
    LinkScenario truth = reference_scenario();
    truth.wall_loss_db = 7.0;
    truth.d1_m = 0.8;
    truth.direct_distance_m = 0.8 + truth.d2_m;
    const LinkObservation o{0.8, received_power_direct(truth), received_power_via_ris(truth)};
    const auto fit = calibrate(std::vector{o}, reference_scenario());
    CHECK(fit.max_abs_residual_db < 1e-9);
}

TEST_CASE("degenerate and empty observation sets are rejected")
{
    const LinkObservation o{0.5, -70.0, -63.0};
    CHECK_THROWS_WITH_AS((void)calibrate(std::vector{o, o, o}, reference_scenario()),
                         doctest::Contains("degenerate"), std::invalid_argument);
    CHECK_THROWS_AS((void)calibrate({}, reference_scenario()), std::invalid_argument);
}

TEST_CASE("residuals are invariant under a tx power shift when the offset is fitted")
{
    const auto obs = load_observations_csv(data_dir + "/table2_observations.csv");
    const auto a = calibrate(obs, reference_scenario());
    LinkScenario shifted = reference_scenario();
    shifted.tx_power_dbm += 10.0;
    const auto b = calibrate(obs, shifted);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].residual_without_db ==
              doctest::Approx(b.entries[i].residual_without_db).epsilon(1e-9));
        CHECK(a.entries[i].residual_with_db ==
              doctest::Approx(b.entries[i].residual_with_db).epsilon(1e-9));
    }
}

TEST_CASE("measured-table fit reproduces the observed relay gains")
{
    const auto obs = load_observations_csv(data_dir + "/table2_observations.csv");
    REQUIRE(obs.size() == 3);
    const auto fit = calibrate(obs, reference_scenario());
    const double want[] = {8.0, 7.0, 6.0};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(fit.entries[i].model_gain_db - want[i]) <= 3.0);
    // the absolute powers cannot be matched this tightly: both measured
    // columns rise with distance while the inverse-square model falls
    CHECK(fit.max_abs_residual_db > 3.0);
}

TEST_CASE("observation CSV parsing")
{
    SUBCASE("bundled file loads")
    {
        const auto obs = load_observations_csv(data_dir + "/table2_observations.csv");
        REQUIRE(obs.size() == 3);
        CHECK(obs[0].d1_m == 0.5);
        CHECK(obs[2].p_with_dbm == -61.0);
    }
    SUBCASE("wrong header is rejected")
    {
        CHECK_THROWS_WITH_AS(
            (void)load_observations_csv(data_dir + "/s21_measured_digitized.csv"),
            doctest::Contains("bad header"), std::invalid_argument);
    }
}

TEST_CASE("scenario key=value parsing")
{
    std::map<std::string, std::string> kv{{"tx_power_dbm", "3"},   {"d1_m", "0.7"},
                                          {"d2_m", "0.4"},         {"direct_distance_m", "1.1"},
                                          {"wall_loss_db", "9.5"}, {"freq_ghz", "5.8"}};
    const auto s = scenario_from_key_values(kv);
    CHECK(s.tx_power_dbm == 3.0);
    CHECK(s.d1_m == 0.7);
    CHECK(s.wall_loss_db == 9.5);
    CHECK(s.freq_hz == doctest::Approx(5.8e9));

    kv["no_such_key"] = "1";
    CHECK_THROWS_WITH_AS((void)scenario_from_key_values(kv), doctest::Contains("no_such_key"),
                         std::invalid_argument);
}

TEST_CASE("scenario validation")
{
    LinkScenario s;
    s.d1_m = -1.0;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("d1"), std::invalid_argument);
    s = LinkScenario{};
    s.wall_loss_db = -0.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
