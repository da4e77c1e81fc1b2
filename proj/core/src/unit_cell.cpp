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

#include "ris/unit_cell.hpp"

#include "ris/io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ris {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_deg_0_360(double d)
{
    d = std::fmod(d, 360.0);
    if (d < 0.0)
        d += 360.0;
    return d;
}

double wrap_deg_pm180(double d)
{
    d = std::fmod(d, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d <= -180.0)
        d += 360.0;
    return d;
}

void check_state(int state)
{
    if (state != 0 && state != 1)
        throw std::invalid_argument("cell state must be 0 or 1");
}

void check_frequency(double freq_hz)
{
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw std::invalid_argument("frequency must be > 0");
}

// Phenomenological insertion loss of the circuit-informed cell. Mapping the
// switch impedance to a full S21 would need full-wave data, so the proxy
// anchors the loss to ON-state dissipation (0.5 dB at the 2-ohm reference
// diode) and shapes the band as a raised cosine in dB that reaches 3 dB
// total at the design-band edges; outside the band the roll-off continues
// linearly in dB.
double circuit_loss_db(const DiodeCircuitModel& diode, double freq_hz)
{
    const double il0_db = 0.5 * (diode.on_resistance / 2.0);
    const double edge_extra_db = 2.5;
    const double side = freq_hz < design_center_hz ? design_center_hz - design_band_low_hz
                                                   : design_band_high_hz - design_center_hz;
    const double u = std::abs(freq_hz - design_center_hz) / side;
    double extra;
    if (u <= 1.0)
        extra = edge_extra_db * 0.5 * (1.0 - std::cos(pi * u));
    else
        extra = edge_extra_db + 6.0 * (u - 1.0);
    return il0_db + extra;
}

} // namespace

void DiodeCircuitModel::validate() const
{
    if (!(on_resistance > 0.0))
        throw std::invalid_argument("diode on_resistance must be > 0");
    if (on_inductance < 0.0 || off_inductance < 0.0)
        throw std::invalid_argument("diode inductance must be >= 0");
    if (!(off_capacitance > 0.0))
        throw std::invalid_argument("diode off_capacitance must be > 0");
}

std::complex<double> diode_impedance(const DiodeCircuitModel& model, DiodeState state,
                                     double freq_hz)
{
    model.validate();
    check_frequency(freq_hz);
    const double omega = 2.0 * pi * freq_hz;
    if (state == DiodeState::On)
        return {model.on_resistance, omega * model.on_inductance};
    return {0.0, omega * model.off_inductance - 1.0 / (omega * model.off_capacitance)};
}

S21Table S21Table::from_rows(std::vector<Row> rows)
{
    if (rows.size() < 2)
        throw std::invalid_argument("S21 table needs at least 2 rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!(r.freq_hz > 0.0))
            throw std::invalid_argument("S21 table row " + std::to_string(i + 1) +
                                        ": frequency must be > 0");
        if (r.mag_db[0] > 0.0 || r.mag_db[1] > 0.0)
            throw std::invalid_argument("S21 table row " + std::to_string(i + 1) +
                                        ": magnitude above 0 dB");
        if (i > 0 && !(r.freq_hz > rows[i - 1].freq_hz))
            throw std::invalid_argument("S21 table row " + std::to_string(i + 1) +
                                        ": frequencies must be strictly increasing");
    }
    S21Table t;
    t.rows = std::move(rows);
    return t;
}

S21Table S21Table::from_csv_file(const std::string& path)
{
    const auto lines = io::read_data_lines(path);
    if (lines.empty())
        throw std::invalid_argument(path + ": empty S21 table");
    const std::string expected = "freq_hz,mag0_db,phase0_deg,mag1_db,phase1_deg";
    {
        auto header = io::split(lines.front().text, ',');
        auto want = io::split(expected, ',');
        if (header != want)
            throw std::invalid_argument(path + ": bad header, expected '" + expected + "'");
    }
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        auto fields = io::split(l.text, ',');
        if (fields.size() != 5)
            throw std::invalid_argument(path + " line " + std::to_string(l.number) +
                                        ": expected 5 fields");
        const std::string ctx = path + " line " + std::to_string(l.number);
        Row r;
        r.freq_hz = io::parse_double(fields[0], ctx);
        r.mag_db[0] = io::parse_double(fields[1], ctx);
        r.phase_deg[0] = io::parse_double(fields[2], ctx);
        r.mag_db[1] = io::parse_double(fields[3], ctx);
        r.phase_deg[1] = io::parse_double(fields[4], ctx);
        rows.push_back(r);
    }
    try {
        return from_rows(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

UnitCellModel UnitCellModel::ideal(double insertion_loss_db)
{
    if (insertion_loss_db < 0.0 || !std::isfinite(insertion_loss_db))
        throw std::invalid_argument("insertion_loss_db must be >= 0");
    return UnitCellModel(Ideal{insertion_loss_db});
}

UnitCellModel UnitCellModel::circuit(DiodeCircuitModel diode)
{
    diode.validate();
    return UnitCellModel(Circuit{diode});
}

UnitCellModel UnitCellModel::tabulated(S21Table table)
{
    if (table.rows.size() < 2)
        throw std::invalid_argument("S21 table needs at least 2 rows");
    Tabulated t;
    for (int s = 0; s < 2; ++s) {
        auto& u = t.unwrapped_deg[s];
        u.resize(table.rows.size());
        u[0] = table.rows[0].phase_deg[s];
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            u[i] = u[i - 1] + wrap_deg_pm180(table.rows[i].phase_deg[s] -
                                             table.rows[i - 1].phase_deg[s]);
    }
    t.table = std::move(table);
    return UnitCellModel(std::move(t));
}

bool UnitCellModel::is_tabulated() const
{
    return std::holds_alternative<Tabulated>(model_);
}

const UnitCellModel::Tabulated& UnitCellModel::table_variant() const
{
    return std::get<Tabulated>(model_);
}

std::pair<double, double> UnitCellModel::validity_band_hz() const
{
    if (is_tabulated())
        return {table_variant().table.min_freq_hz(), table_variant().table.max_freq_hz()};
    return {design_band_low_hz, design_band_high_hz};
}

std::complex<double> UnitCellModel::transmission(int state, double freq_hz) const
{
    check_state(state);
    check_frequency(freq_hz);

    if (const auto* id = std::get_if<Ideal>(&model_)) {
        const double mag = std::pow(10.0, -id->insertion_loss_db / 20.0);
        return state == 0 ? std::complex<double>(mag, 0.0) : std::complex<double>(-mag, 0.0);
    }
    if (const auto* ci = std::get_if<Circuit>(&model_)) {
        const double mag = std::pow(10.0, -circuit_loss_db(ci->diode, freq_hz) / 20.0);
        return state == 0 ? std::complex<double>(mag, 0.0) : std::complex<double>(-mag, 0.0);
    }

    const auto& tab = table_variant();
    const auto& rows = tab.table.rows;
    if (freq_hz < tab.table.min_freq_hz() || freq_hz > tab.table.max_freq_hz())
        throw std::invalid_argument("frequency outside S21 table span; no extrapolation");
    // locate the segment and interpolate mag (dB) and unwrapped phase (deg)
    std::size_t hi = 1;
    while (rows[hi].freq_hz < freq_hz)
        ++hi;
    const std::size_t lo = hi - 1;
    const double span = rows[hi].freq_hz - rows[lo].freq_hz;
    const double a = (freq_hz - rows[lo].freq_hz) / span;
    const double mag_db = rows[lo].mag_db[state] * (1.0 - a) + rows[hi].mag_db[state] * a;
    const double ph_deg =
        tab.unwrapped_deg[state][lo] * (1.0 - a) + tab.unwrapped_deg[state][hi] * a;
    return std::polar(std::pow(10.0, mag_db / 20.0), ph_deg * pi / 180.0);
}

double UnitCellModel::state_phase_difference_deg(double freq_hz) const
{
    check_frequency(freq_hz);
    if (!is_tabulated())
        return 180.0; // both analytic variants flip the sign exactly

    const auto& tab = table_variant();
    const auto& rows = tab.table.rows;
    if (freq_hz < tab.table.min_freq_hz() || freq_hz > tab.table.max_freq_hz())
        throw std::invalid_argument("frequency outside S21 table span; no extrapolation");
    std::size_t hi = 1;
    while (rows[hi].freq_hz < freq_hz)
        ++hi;
    const std::size_t lo = hi - 1;
    const double a = (freq_hz - rows[lo].freq_hz) / (rows[hi].freq_hz - rows[lo].freq_hz);
    const double p0 = tab.unwrapped_deg[0][lo] * (1.0 - a) + tab.unwrapped_deg[0][hi] * a;
    const double p1 = tab.unwrapped_deg[1][lo] * (1.0 - a) + tab.unwrapped_deg[1][hi] * a;
    return wrap_deg_0_360(p1 - p0);
}

namespace {

// Breakpoints of min(mag0, mag1) on a piecewise-linear table: all nodes plus
// any in-segment crossing of the two state curves.
struct BandCurve {
    std::vector<double> freq;
    std::vector<double> level_db;
};

BandCurve worst_state_curve(const S21Table& table)
{
    BandCurve c;
    const auto& rows = table.rows;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double f0 = rows[i].freq_hz, f1 = rows[i + 1].freq_hz;
        const double a0 = rows[i].mag_db[0], a1 = rows[i + 1].mag_db[0];
        const double b0 = rows[i].mag_db[1], b1 = rows[i + 1].mag_db[1];
        c.freq.push_back(f0);
        c.level_db.push_back(std::min(a0, b0));
        const double d0 = a0 - b0, d1 = a1 - b1;
        if (d0 * d1 < 0.0) {
            const double t = d0 / (d0 - d1);
            c.freq.push_back(f0 + t * (f1 - f0));
            c.level_db.push_back(a0 + t * (a1 - a0));
        }
    }
    c.freq.push_back(rows.back().freq_hz);
    c.level_db.push_back(std::min(rows.back().mag_db[0], rows.back().mag_db[1]));
    return c;
}

double interp_curve(const BandCurve& c, double f)
{
    std::size_t hi = 1;
    while (c.freq[hi] < f)
        ++hi;
    const double a = (f - c.freq[hi - 1]) / (c.freq[hi] - c.freq[hi - 1]);
    return c.level_db[hi - 1] * (1.0 - a) + c.level_db[hi] * a;
}

} // namespace

double UnitCellModel::three_db_bandwidth(double f_center_hz, BandwidthReference reference) const
{
    check_frequency(f_center_hz);
    if (std::holds_alternative<Circuit>(model_))
        throw std::invalid_argument("three_db_bandwidth requires a tabulated or ideal model");

    const auto [band_lo, band_hi] = validity_band_hz();
    if (f_center_hz < band_lo || f_center_hz > band_hi)
        throw std::invalid_argument("f_center outside the model validity band");

    if (const auto* id = std::get_if<Ideal>(&model_)) {
        const double level = -id->insertion_loss_db;
        const double threshold =
            reference == BandwidthReference::AbsoluteMinus3dB ? -3.0 : level - 3.0;
        if (level < threshold)
            throw std::invalid_argument("f_center is already below the bandwidth threshold");
        // flat response: the whole declared band qualifies
        return (band_hi - band_lo) / f_center_hz;
    }

    const auto& tab = table_variant();
    const BandCurve curve = worst_state_curve(tab.table);
    double threshold = -3.0;
    if (reference == BandwidthReference::RelativeToBandMax) {
        double band_max = -1e300;
        for (const auto& r : tab.table.rows)
            band_max = std::max({band_max, r.mag_db[0], r.mag_db[1]});
        threshold = band_max - 3.0;
    }

    if (interp_curve(curve, f_center_hz) < threshold)
        throw std::invalid_argument("f_center is already below the bandwidth threshold");

    // walk outward from f_center; crossings by linear interpolation
    std::size_t seg = 1;
    while (curve.freq[seg] < f_center_hz)
        ++seg;

    double f_hi = curve.freq.back();
    for (std::size_t i = seg; i < curve.freq.size(); ++i) {
        if (curve.level_db[i] < threshold) {
            const double fa = i == seg ? f_center_hz : curve.freq[i - 1];
            const double la = i == seg ? interp_curve(curve, f_center_hz) : curve.level_db[i - 1];
            f_hi = fa + (threshold - la) / (curve.level_db[i] - la) * (curve.freq[i] - fa);
            break;
        }
    }
    double f_lo = curve.freq.front();
    for (std::size_t j = seg; j-- > 0;) {
        if (curve.level_db[j] < threshold) {
            const double fb = j + 1 == seg ? f_center_hz : curve.freq[j + 1];
            const double lb = j + 1 == seg ? interp_curve(curve, f_center_hz) : curve.level_db[j + 1];
            f_lo = fb + (threshold - lb) / (curve.level_db[j] - lb) * (curve.freq[j] - fb);
            break;
        }
    }
    return (f_hi - f_lo) / f_center_hz;
}

} // namespace ris
