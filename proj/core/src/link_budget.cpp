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

#include "ris/array_layout.hpp"
#include "ris/io.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;
}

void LinkScenario::validate() const
{
    if (!(d1_m > 0.0))
        throw std::invalid_argument("d1 must be > 0");
    if (!(d2_m > 0.0))
        throw std::invalid_argument("d2 must be > 0");
    if (!(direct_distance_m > 0.0))
        throw std::invalid_argument("direct_distance must be > 0");
    if (wall_loss_db < 0.0)
        throw std::invalid_argument("wall_loss must be >= 0");
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw std::invalid_argument("frequency must be > 0");
    if (!(ris_aperture_area_m2 > 0.0))
        throw std::invalid_argument("ris_aperture_area must be > 0");
    if (ris_insertion_loss_db < 0.0)
        throw std::invalid_argument("ris_insertion_loss must be >= 0");
}

double LinkScenario::wavelength_m() const
{
    return speed_of_light / freq_hz;
}

double free_space_path_loss_db(double distance_m, double freq_hz)
{
    if (!(distance_m > 0.0) || !(freq_hz > 0.0))
        throw std::invalid_argument("FSPL needs positive distance and frequency");
    return 20.0 * std::log10(four_pi * distance_m * freq_hz / speed_of_light);
}

double received_power_direct(const LinkScenario& s)
{
    s.validate();
    return s.tx_power_dbm + s.tx_gain_dbi + s.rx_gain_dbi -
           free_space_path_loss_db(s.direct_distance_m, s.freq_hz) - s.wall_loss_db +
           s.system_offset_db;
}

double received_power_via_ris(const LinkScenario& s)
{
    s.validate();
    const double lambda = s.wavelength_m();
    const double aperture_gain_db = 10.0 * std::log10(four_pi * s.ris_aperture_area_m2 /
                                                      (lambda * lambda));
    const double captured_dbm = s.tx_power_dbm + s.tx_gain_dbi -
                                free_space_path_loss_db(s.d1_m, s.freq_hz) + aperture_gain_db -
                                s.ris_insertion_loss_db;
    return captured_dbm + s.ris_directivity_dbi -
           free_space_path_loss_db(s.d2_m, s.freq_hz) + s.rx_gain_dbi + s.system_offset_db;
}

LinkResult evaluate(const LinkScenario& s)
{
    LinkResult r;
    r.p_without_ris_dbm = received_power_direct(s);
    r.p_with_ris_dbm = received_power_via_ris(s);
    r.ris_gain_db = r.p_with_ris_dbm - r.p_without_ris_dbm;
    return r;
}

double near_field_boundary_m(const LinkScenario& s)
{
    const double diagonal = std::sqrt(2.0 * s.ris_aperture_area_m2);
    return 2.0 * diagonal * diagonal / s.wavelength_m();
}

bool near_field_violated(const LinkScenario& s)
{
    const double boundary = near_field_boundary_m(s);
    return s.d1_m < boundary || s.d2_m < boundary;
}

CalibrationResult calibrate(std::span<const LinkObservation> observations,
                            const LinkScenario& tmpl, bool fit_system_offset)
{
    if (observations.empty())
        throw std::invalid_argument("calibration needs at least 1 observation");
    if (observations.size() > 1) {
        bool all_same = true;
        for (const auto& o : observations)
            all_same = all_same && o.d1_m == observations[0].d1_m &&
                       o.p_without_dbm == observations[0].p_without_dbm &&
                       o.p_with_dbm == observations[0].p_with_dbm;
        if (all_same)
            throw std::invalid_argument("degenerate fit: all observations are identical");
    }

    // Model values with wall_loss and system_offset zeroed; both parameters
    // then enter linearly. The system constant shifts both columns, the wall
    // loss only the direct one, so the least-squares problem separates.
    auto scenario_for = [&](const LinkObservation& o) {
        LinkScenario s = tmpl;
        s.d1_m = o.d1_m;
        s.direct_distance_m = o.d1_m + tmpl.d2_m; // collinear Tx-surface-Rx geometry
        s.wall_loss_db = 0.0;
        s.system_offset_db = 0.0;
        return s;
    };

    double sum_with = 0.0;
    double sum_without = 0.0;
    for (const auto& o : observations) {
        const LinkScenario s = scenario_for(o);
        sum_with += o.p_with_dbm - received_power_via_ris(s);
        sum_without += received_power_direct(s) - o.p_without_dbm;
    }
    const double n = static_cast<double>(observations.size());
    const double offset = fit_system_offset ? sum_with / n : 0.0;
    double wall = sum_without / n + offset;
    if (wall < 0.0)
        wall = 0.0; // keep the scenario invariant; residuals absorb the misfit

    CalibrationResult result;
    result.scenario = tmpl;
    result.scenario.wall_loss_db = wall;
    result.scenario.system_offset_db = offset;
    if (!observations.empty()) {
        result.scenario.d1_m = observations[0].d1_m;
        result.scenario.direct_distance_m = observations[0].d1_m + tmpl.d2_m;
    }

    for (const auto& o : observations) {
        LinkScenario s = scenario_for(o);
        s.wall_loss_db = wall;
        s.system_offset_db = offset;
        const LinkResult r = evaluate(s);
        CalibrationEntry e;
        e.d1_m = o.d1_m;
        e.residual_without_db = r.p_without_ris_dbm - o.p_without_dbm;
        e.residual_with_db = r.p_with_ris_dbm - o.p_with_dbm;
        e.model_gain_db = r.ris_gain_db;
        e.observed_gain_db = o.p_with_dbm - o.p_without_dbm;
        result.entries.push_back(e);
        result.max_abs_residual_db =
            std::max({result.max_abs_residual_db, std::abs(e.residual_without_db),
                      std::abs(e.residual_with_db)});
    }
    return result;
}

std::vector<LinkObservation> load_observations_csv(const std::string& path)
{
    const auto lines = io::read_data_lines(path);
    if (lines.empty())
        throw std::invalid_argument(path + ": empty observations file");
    const std::string expected = "d1_m,p_without_dbm,p_with_dbm";
    if (io::split(lines.front().text, ',') != io::split(expected, ','))
        throw std::invalid_argument(path + ": bad header, expected '" + expected + "'");
    std::vector<LinkObservation> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = io::split(lines[i].text, ',');
        if (fields.size() != 3)
            throw std::invalid_argument(path + " line " + std::to_string(lines[i].number) +
                                        ": expected 3 fields");
        const std::string ctx = path + " line " + std::to_string(lines[i].number);
        LinkObservation o;
        o.d1_m = io::parse_double(fields[0], ctx);
        o.p_without_dbm = io::parse_double(fields[1], ctx);
        o.p_with_dbm = io::parse_double(fields[2], ctx);
        if (!(o.d1_m > 0.0))
            throw std::invalid_argument(ctx + ": d1 must be > 0");
        out.push_back(o);
    }
    if (out.empty())
        throw std::invalid_argument(path + ": no observation rows");
    return out;
}

LinkScenario scenario_from_key_values(const std::map<std::string, std::string>& kv)
{
    LinkScenario s;
    for (const auto& [key, value] : kv) {
        const double v = io::parse_double(value, "scenario key '" + key + "'");
        if (key == "tx_power_dbm")
            s.tx_power_dbm = v;
        else if (key == "tx_gain_dbi")
            s.tx_gain_dbi = v;
        else if (key == "rx_gain_dbi")
            s.rx_gain_dbi = v;
        else if (key == "d1_m")
            s.d1_m = v;
        else if (key == "d2_m")
            s.d2_m = v;
        else if (key == "direct_distance_m")
            s.direct_distance_m = v;
        else if (key == "wall_loss_db")
            s.wall_loss_db = v;
        else if (key == "freq_ghz")
            s.freq_hz = v * 1e9;
        else if (key == "ris_directivity_dbi")
            s.ris_directivity_dbi = v;
        else if (key == "ris_insertion_loss_db")
            s.ris_insertion_loss_db = v;
        else if (key == "ris_aperture_area_m2")
            s.ris_aperture_area_m2 = v;
        else if (key == "system_offset_db")
            s.system_offset_db = v;
        else
            throw std::invalid_argument("unknown scenario key '" + key + "'");
    }
    s.validate();
    return s;
}

LinkScenario scenario_from_file(const std::string& path)
{
    return scenario_from_key_values(io::read_key_value_file(path));
}

std::string link_result_text(const LinkScenario& s, const LinkResult& r)
{
    std::string out;
    out += "p_without_ris_dbm = " + io::fmt_fixed(r.p_without_ris_dbm, 4) + "\n";
    out += "p_with_ris_dbm = " + io::fmt_fixed(r.p_with_ris_dbm, 4) + "\n";
    out += "ris_gain_db = " + io::fmt_fixed(r.ris_gain_db, 4) + "\n";
    out += "near_field_boundary_m = " + io::fmt_fixed(near_field_boundary_m(s), 4) + "\n";
    out += std::string("near_field_warning = ") + (near_field_violated(s) ? "1" : "0") + "\n";
    return out;
}

std::string calibration_text(const CalibrationResult& c)
{
    std::string out;
    out += "wall_loss_db = " + io::fmt_fixed(c.scenario.wall_loss_db, 4) + "\n";
    out += "system_offset_db = " + io::fmt_fixed(c.scenario.system_offset_db, 4) + "\n";
    out += "max_abs_residual_db = " + io::fmt_fixed(c.max_abs_residual_db, 4) + "\n";
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
        const auto& e = c.entries[i];
        const std::string tag = "obs" + std::to_string(i);
        out += tag + "_d1_m = " + io::fmt_fixed(e.d1_m, 4) + "\n";
        out += tag + "_residual_without_db = " + io::fmt_fixed(e.residual_without_db, 4) + "\n";
        out += tag + "_residual_with_db = " + io::fmt_fixed(e.residual_with_db, 4) + "\n";
        out += tag + "_model_gain_db = " + io::fmt_fixed(e.model_gain_db, 4) + "\n";
        out += tag + "_observed_gain_db = " + io::fmt_fixed(e.observed_gain_db, 4) + "\n";
    }
    return out;
}

} // namespace ris
