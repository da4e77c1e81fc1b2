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

#include "ris/codebook.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ris;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

// Independent scalar evaluation of the compensation law, kept deliberately
// separate from the library implementation (plain per-element arithmetic,
// no shared helpers).
double oracle_phase(int rows, int cols, double period, double feed_dist, int r, int c,
                    double theta0_deg, double phi0_deg, double freq_hz)
{
    const double x = (c - (cols - 1) / 2.0) * period;
    const double y = (r - (rows - 1) / 2.0) * period;
    const double d = std::sqrt(x * x + y * y + feed_dist * feed_dist);
    const double lambda = 299792458.0 / freq_hz;
    const double t0 = theta0_deg * pi / 180.0;
    const double p0 = phi0_deg * pi / 180.0;
    double phase = (two_pi / lambda) * (d - std::sin(t0) * (x * std::cos(p0) + y * std::sin(p0)));
    phase = std::fmod(phase, two_pi);
    return phase < 0.0 ? phase + two_pi : phase;
}

double angular_distance(double a, double b)
{
    double d = std::fmod(a - b, two_pi);
    if (d > pi)
        d -= two_pi;
    if (d < -pi)
        d += two_pi;
    return std::abs(d);
}

} // namespace

TEST_CASE("single on-axis element phase, hand value")
{
    ArrayLayout layout;
    layout.rows = layout.cols = 1;
    const auto phases = phase_compensation(layout, {0.0, 0.0, 5.8e9});
    REQUIRE(phases.values.size() == 1);
    // 2*pi * frac(0.26 / 0.0516883548...)
    CHECK(phases.values[0] == doctest::Approx(0.1894163951334303).epsilon(1e-9));
}

TEST_CASE("brute-force oracle matches phase_compensation on the full grid")
{
    ArrayLayout layout;
    for (auto [t0, p0] : {std::pair{0.0, 0.0}, {10.0, 0.0}, {45.0, 0.0}, {30.0, 120.0}}) {
        const auto phases = phase_compensation(layout, {t0, p0, 5.8e9});
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                CHECK(angular_distance(phases.at(r, c),
                                       oracle_phase(16, 16, 0.018, 0.26, r, c, t0, p0, 5.8e9)) <
                      1e-12);
    }
}

TEST_CASE("broadside phases depend only on the feed distance")
{
    ArrayLayout layout;
    const auto phases = phase_compensation(layout, {0.0, 77.0, 5.8e9});
    // same distance ring -> exactly the same phase
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            CHECK(phases.at(r, c) == phases.at(c, r));
            CHECK(phases.at(r, c) == phases.at(15 - r, c));
        }
}

TEST_CASE("corner element phase for the 10-degree target")
{
    ArrayLayout layout;
    const auto phases = phase_compensation(layout, {10.0, 0.0, 5.8e9});
    const double expected = oracle_phase(16, 16, 0.018, 0.26, 15, 15, 10.0, 0.0, 5.8e9);
    CHECK(angular_distance(phases.at(15, 15), expected) < 1e-12);
}

TEST_CASE("1-bit quantization codepoints and tie-break")
{
    PhaseMatrix phases;
    phases.rows = 1;
    phases.cols = 6;
    phases.values = {0.0, pi, pi / 2.0, 3.0 * pi / 2.0, pi / 2.0 - 1e-12, 3.0 * pi / 2.0 - 1e-12};
    const auto code = quantize_1bit(phases);
    CHECK(code.at(0, 0) == 0);
    CHECK(code.at(0, 1) == 1);
    CHECK(code.at(0, 2) == 1); // boundary to the upper set
    CHECK(code.at(0, 3) == 0); // boundary to the upper set
    CHECK(code.at(0, 4) == 0);
    CHECK(code.at(0, 5) == 1);
}

TEST_CASE("quantization complements under a half-turn")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, two_pi);
    PhaseMatrix a, b;
    a.rows = b.rows = 1;
    a.cols = b.cols = 500;
    a.values.resize(500);
    b.values.resize(500);
    for (int i = 0; i < 500; ++i) {
        a.values[i] = dist(rng);
        b.values[i] = std::fmod(a.values[i] + pi, two_pi);
    }
    const auto ca = quantize_1bit(a);
    const auto cb = quantize_1bit(b);
    for (int i = 0; i < 500; ++i)
        CHECK(ca.at(0, i) != cb.at(0, i));
}

TEST_CASE("bits are stable under global 2*pi shifts of the raw phase")
{
    ArrayLayout layout;
    const auto phases = phase_compensation(layout, {10.0, 0.0, 5.8e9});
    const auto code = quantize_1bit(phases);
    for (int k : {1, 3, 7}) {
        PhaseMatrix shifted = phases;
        for (auto& v : shifted.values) {
            v = std::fmod(v + k * two_pi, two_pi);
            if (v < 0.0)
                v += two_pi;
            if (v >= two_pi)
                v = 0.0;
        }
        CHECK(quantize_1bit(shifted) == code);
    }
}

TEST_CASE("broadside code matrix has the full dihedral symmetry")
{
    ArrayLayout layout;
    const auto code = quantize_1bit(phase_compensation(layout, {0.0, 0.0, 5.8e9}));
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            CHECK(code.at(r, c) == code.at(c, r));
            CHECK(code.at(r, c) == code.at(15 - r, c));
            CHECK(code.at(r, c) == code.at(r, 15 - c));
        }
}

TEST_CASE("adding 180 degrees to phi0 mirrors the code through the origin")
{
    ArrayLayout layout;
    const auto a = quantize_1bit(phase_compensation(layout, {17.0, 33.0, 5.8e9}));
    const auto b = quantize_1bit(phase_compensation(layout, {17.0, 213.0, 5.8e9}));
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            CHECK(a.at(r, c) == b.at(15 - r, 15 - c));
}

TEST_CASE("scan codebook")
{
    ArrayLayout layout;
    SUBCASE("distinct targets give distinct codes")
    {
        const BeamTarget targets[] = {{0.0, 0.0, 5.8e9}, {10.0, 0.0, 5.8e9}, {45.0, 0.0, 5.8e9}};
        const auto codes = scan_codebook(layout, targets);
        REQUIRE(codes.size() == 3);
        CHECK(codes[0] != codes[1]);
        CHECK(codes[1] != codes[2]);
        CHECK(codes[0] != codes[2]);
    }
    SUBCASE("duplicate targets give identical codes")
    {
        const BeamTarget targets[] = {{10.0, 0.0, 5.8e9}, {10.0, 0.0, 5.8e9}};
        const auto codes = scan_codebook(layout, targets);
        CHECK(codes[0] == codes[1]);
    }
    SUBCASE("empty target list is an error")
    {
        CHECK_THROWS_AS((void)scan_codebook(layout, {}), std::invalid_argument);
    }
}

TEST_CASE("beam target validation")
{
    CHECK_THROWS_WITH_AS((BeamTarget{100.0, 0.0, 5.8e9}.validate()),
                         doctest::Contains("theta0 out of range"), std::invalid_argument);
    CHECK_THROWS_WITH_AS((BeamTarget{10.0, 360.0, 5.8e9}.validate()),
                         doctest::Contains("phi0 out of range"), std::invalid_argument);
    CHECK_THROWS_AS((BeamTarget{10.0, 0.0, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("code matrix text round trip")
{
    ArrayLayout layout;
    const auto code = quantize_1bit(phase_compensation(layout, {45.0, 0.0, 5.8e9}));
    const auto back = CodeMatrix::from_text(code.to_text());
    CHECK(back == code);

    SUBCASE("comments are ignored")
    {
        CHECK(CodeMatrix::from_text("# header\n01\n10\n") ==
              CodeMatrix::from_text("01\n10 # trailing\n"));
    }
    SUBCASE("invalid characters are rejected")
    {
        CHECK_THROWS_WITH_AS(CodeMatrix::from_text("01\n1x\n"),
                             doctest::Contains("invalid character"), std::invalid_argument);
    }
    SUBCASE("ragged rows are rejected")
    {
        CHECK_THROWS_AS(CodeMatrix::from_text("01\n100\n"), std::invalid_argument);
    }
}

TEST_CASE("phase matrix CSV is fixed-format")
{
    PhaseMatrix phases;
    phases.rows = 1;
    phases.cols = 2;
    phases.values = {0.0, pi};
    CHECK(phase_matrix_csv(phases) == "0.0000000000,3.1415926536\n");
}
