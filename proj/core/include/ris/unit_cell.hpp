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

#ifndef RIS_UNIT_CELL_HPP
#define RIS_UNIT_CELL_HPP

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ris {

/// Nominal design band of the cell, used as the declared validity band of
/// the analytic (ideal/circuit) models.
inline constexpr double design_band_low_hz = 5.4e9;
inline constexpr double design_band_high_hz = 6.6e9;
inline constexpr double design_center_hz = 5.8e9;

enum class DiodeState { Off, On };

/// Series equivalent circuit of the RF switch: R-L when forward biased,
/// C-L when reverse biased. Defaults are the SMP1345-079LF values.
struct DiodeCircuitModel {
    double on_resistance = 2.0;        ///< ohm
    double on_inductance = 0.7e-12;    ///< H
    double off_capacitance = 0.18e-12; ///< F
    double off_inductance = 0.7e-12;   ///< H

    void validate() const;
};

/// Series impedance of the switch at frequency f.
/// ON: R + j*2*pi*f*L.  OFF: j*(2*pi*f*L - 1/(2*pi*f*C)).
std::complex<double> diode_impedance(const DiodeCircuitModel& model, DiodeState state,
                                     double freq_hz);

/// Two-state transmission coefficient samples vs frequency. Magnitudes in
/// dB (<= 0), phases in degrees as digitized (wrapping handled downstream).
struct S21Table {
    struct Row {
        double freq_hz;
        double mag_db[2];
        double phase_deg[2];
    };
    std::vector<Row> rows;

    /// Validates: >= 2 rows, strictly increasing frequency, magnitudes <= 0 dB.
    static S21Table from_rows(std::vector<Row> rows);

    /// CSV with header `freq_hz,mag0_db,phase0_deg,mag1_db,phase1_deg`;
    /// '#' comment lines permitted.
    static S21Table from_csv_file(const std::string& path);

    double min_freq_hz() const { return rows.front().freq_hz; }
    double max_freq_hz() const { return rows.back().freq_hz; }
};

/// Per-state complex transmission coefficient t(state, f) of one unit cell.
///
/// Three interchangeable variants:
///  - ideal:     |t| = 10^(-IL/20) for both states, phases 0/180 deg.
///  - circuit:   diode-informed. The R/L/C values fix the switch impedance;
///               the cell magnitude uses a phenomenological loss proxy (see
///               unit_cell.cpp), phases 0/180 deg.
///  - tabulated: linear interpolation of the table, magnitude in dB and
///               phase on the unwrapped curve. No extrapolation.
///
/// Models are immutable after construction; evaluation is pure.
class UnitCellModel {
public:
    struct Ideal {
        double insertion_loss_db = 0.0;
    };
    struct Circuit {
        DiodeCircuitModel diode;
    };

    static UnitCellModel ideal(double insertion_loss_db = 0.0);
    static UnitCellModel circuit(DiodeCircuitModel diode = {});
    static UnitCellModel tabulated(S21Table table);

    bool is_tabulated() const;

    /// Complex linear transmission coefficient for cell state 0 or 1.
    std::complex<double> transmission(int state, double freq_hz) const;

    /// Phase of state 1 minus phase of state 0, reduced to [0, 360) degrees.
    double state_phase_difference_deg(double freq_hz) const;

    enum class BandwidthReference {
        AbsoluteMinus3dB, ///< both states above -3 dB absolute
        RelativeToBandMax ///< both states above (band max - 3 dB)
    };

    /// Fractional width (f_hi - f_lo)/f_center of the maximal contiguous
    /// interval around f_center where both states stay above the threshold.
    /// Ideal models report the declared validity band; circuit models are
    /// not supported here.
    double three_db_bandwidth(double f_center_hz, BandwidthReference reference) const;

    /// [low, high] frequency range the model may be evaluated over for
    /// band-level queries. Table span for tabulated models, the design band
    /// for analytic ones.
    std::pair<double, double> validity_band_hz() const;

private:
    struct Tabulated {
        S21Table table;
        // phases unwrapped once at construction (< 180 deg jump assumed
        // between adjacent rows)
        std::vector<double> unwrapped_deg[2];
    };

    explicit UnitCellModel(std::variant<Ideal, Circuit, Tabulated> v) : model_(std::move(v)) {}

    const Tabulated& table_variant() const;

    std::variant<Ideal, Circuit, Tabulated> model_;
};

} // namespace ris

#endif
