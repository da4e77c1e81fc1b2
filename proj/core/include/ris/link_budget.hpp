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

#ifndef RIS_LINK_BUDGET_HPP
#define RIS_LINK_BUDGET_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ris {

/// Through-wall relay scenario: Tx -> (wall) -> Rx directly, and
/// Tx -> surface aperture -> Rx via the two-segment relay. The insertion
/// loss of the surface is applied here, once; the directivity supplied by
/// the pattern metrics is scale-normalized and carries no loss.
struct LinkScenario {
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 10.0;
    double rx_gain_dbi = 10.0;
    double d1_m = 0.5;               ///< Tx antenna to surface
    double d2_m = 0.3;               ///< surface to Rx antenna
    double direct_distance_m = 0.8;  ///< Tx to Rx through the wall
    double wall_loss_db = 10.0;      ///< default prior for 30 mm concrete at 5.8 GHz
    double freq_hz = 5.8e9;
    double ris_directivity_dbi = 20.0;
    double ris_insertion_loss_db = 3.0;
    double ris_aperture_area_m2 = 0.082944; ///< default 16x16 x 18 mm aperture
    double system_offset_db = 0.0;          ///< fitted constant, applied to both paths

    void validate() const;
    double wavelength_m() const;
};

struct LinkResult {
    double p_without_ris_dbm = 0.0;
    double p_with_ris_dbm = 0.0;
    double ris_gain_db = 0.0;
};

/// 20*log10(4*pi*d*f/c), dB.
double free_space_path_loss_db(double distance_m, double freq_hz);

/// Friis through the wall: tx_power + gains - FSPL(direct) - wall_loss.
double received_power_direct(const LinkScenario& s);

/// Two standard hops: aperture capture (gain 4*pi*A/lambda^2) over d1, then
/// reradiation with ris_directivity over d2. The residual through-wall
/// leakage path is ignored.
double received_power_via_ris(const LinkScenario& s);

LinkResult evaluate(const LinkScenario& s);

/// Far-field boundary 2*D^2/lambda with D the aperture diagonal
/// (sqrt(2*area) for a square aperture). The relay model is approximate
/// inside this radius; callers should warn, not fail.
double near_field_boundary_m(const LinkScenario& s);
bool near_field_violated(const LinkScenario& s);

/// One measured row: Tx-to-surface distance plus both received powers.
struct LinkObservation {
    double d1_m;
    double p_without_dbm;
    double p_with_dbm;
};

struct CalibrationEntry {
    double d1_m;
    double residual_without_db; ///< model minus observed
    double residual_with_db;
    double model_gain_db;
    double observed_gain_db;
};

struct CalibrationResult {
    LinkScenario scenario;
    std::vector<CalibrationEntry> entries;
    double max_abs_residual_db = 0.0;
};

/// Least-squares fit of wall_loss (and optionally the additive system
/// constant) to the observed powers, both columns. Each observation keeps
/// the template geometry except d1 and the direct path, which is taken
/// collinear: direct_distance = d1 + d2.
CalibrationResult calibrate(std::span<const LinkObservation> observations,
                            const LinkScenario& tmpl, bool fit_system_offset = true);

/// CSV with header `d1_m,p_without_dbm,p_with_dbm`; '#' comments allowed.
std::vector<LinkObservation> load_observations_csv(const std::string& path);

/// Flat key=value scenario description; unknown keys rejected.
LinkScenario scenario_from_key_values(const std::map<std::string, std::string>& kv);
LinkScenario scenario_from_file(const std::string& path);

std::string link_result_text(const LinkScenario& s, const LinkResult& r);
std::string calibration_text(const CalibrationResult& c);

} // namespace ris

#endif
