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

#ifndef RIS_FARFIELD_HPP
#define RIS_FARFIELD_HPP

#include "ris/array_layout.hpp"
#include "ris/codebook.hpp"
#include "ris/unit_cell.hpp"

#include <complex>
#include <vector>

namespace ris {

/// Space-feed illumination of the aperture. The horn is modeled as a
/// cos^q power-pattern taper applied to the element excitation, the element
/// as a cos^q_e factor on radiation. Spherical spreading (1/d_i) and the
/// feed path phase exp(-j*k*d_i) can be disabled to recover the classical
/// uniformly excited array factor.
struct IlluminationModel {
    double feed_exponent_q = 6.0;
    double element_exponent_qe = 1.0;
    bool spherical_spreading = true;
    bool feed_path_phase = true;

    void validate() const;
};

/// Outer-product angular sampling: theta in [0, 90] deg (>= 2 strictly
/// increasing samples) times one or more phi columns in [0, 360) deg.
struct AngularGrid {
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;

    void validate() const;
    std::size_t size() const { return theta_deg.size() * phi_deg.size(); }
    std::size_t index(std::size_t it, std::size_t ip) const { return it * phi_deg.size() + ip; }

    /// theta 0..90 step theta_step, phi 0..360-phi_step step phi_step.
    static AngularGrid hemisphere(double theta_step_deg, double phi_step_deg);

    /// Cut grid uniform in u = sin(theta): theta_i = asin(i/(n-1) * u_max).
    /// This is the sampling radiate_fast accepts.
    static AngularGrid uniform_uv_cuts(int n_theta, std::vector<double> phis_deg,
                                       double u_max = 1.0);
};

/// Transmitted far field over a grid. `field` holds the raw complex sum in
/// arbitrary linear units; `mag_db` is peak-normalized (peak exactly 0 dB,
/// exact nulls clamped to the -400 dB floor so every sample stays finite).
struct FarFieldPattern {
    AngularGrid grid;
    std::vector<std::complex<double>> field;
    std::vector<double> mag_db;
    std::size_t peak_index = 0;

    static constexpr double db_floor = -400.0;

    double peak_theta_deg() const { return grid.theta_deg[peak_index / grid.phi_deg.size()]; }
    double peak_phi_deg() const { return grid.phi_deg[peak_index % grid.phi_deg.size()]; }
};

/// Beam descriptors extracted from a pattern.
struct PatternMetrics {
    double peak_theta_deg = 0.0; ///< signed within the principal cut, then folded
    double peak_phi_deg = 0.0;
    double beamwidth_cut1_deg = 0.0; ///< -3 dB span, cut through peak phi
    double beamwidth_cut2_deg = 0.0; ///< -3 dB span, orthogonal cut
    double sidelobe_level_db = 0.0;  ///< peak sidelobe relative to main beam
    double directivity_dbi = 0.0;    ///< forward hemisphere convention
};

/// Direct summation of the aperture radiation integral:
///   E(theta, phi) = sum_i [cos^q(theta_f,i) * s_i * exp(-j*k*d_i)] * t(state_i, f)
///                   * cos^q_e(theta) * exp(+j*k*(x_i*u + y_i*v))
/// with u = sin(theta)*cos(phi), v = sin(theta)*sin(phi). Summation order is
/// fixed (row-major elements) so results are bit-reproducible; directions
/// may be evaluated in parallel (RIS_SIM_THREADS caps the worker count,
/// 0 or unset = auto).
FarFieldPattern radiate(const ArrayLayout& layout, const UnitCellModel& cell,
                        const IlluminationModel& illum, const CodeMatrix& code, double freq_hz,
                        const AngularGrid& grid);

/// Same contract as radiate but computed with a Bluestein chirp-Z transform
/// (zero-padded FFT convolution) along the uniformly sampled u axis.
/// Requires a grid uniform in u = sin(theta); rejects anything else.
/// Matches radiate to <1e-9 relative error.
FarFieldPattern radiate_fast(const ArrayLayout& layout, const UnitCellModel& cell,
                             const IlluminationModel& illum, const CodeMatrix& code,
                             double freq_hz, const AngularGrid& grid);

/// Continuous-phase reference: each cell applies exp(j*phase) at the state-0
/// magnitude instead of a quantized state. Used to measure quantization loss.
FarFieldPattern radiate_continuous(const ArrayLayout& layout, const UnitCellModel& cell,
                                   const IlluminationModel& illum, const PhaseMatrix& phases,
                                   double freq_hz, const AngularGrid& grid);

/// Pattern descriptors. Needs a grid covering the forward hemisphere in phi
/// (directivity integral) and <= 0.25 deg theta sampling near the peak; use
/// hemisphere_pattern for a grid that satisfies both.
PatternMetrics metrics(const FarFieldPattern& pattern);

/// Two-pass evaluation: coarse hemisphere, then theta refinement around the
/// coarse peak merged into the final grid.
struct HemisphereOptions {
    double theta_step_deg = 0.5;
    double phi_step_deg = 2.0;
    double refine_halfspan_deg = 1.5;
    double refine_step_deg = 0.05;
};

FarFieldPattern hemisphere_pattern(const ArrayLayout& layout, const UnitCellModel& cell,
                                   const IlluminationModel& illum, const CodeMatrix& code,
                                   double freq_hz, const HemisphereOptions& options = {});
FarFieldPattern hemisphere_pattern_continuous(const ArrayLayout& layout,
                                              const UnitCellModel& cell,
                                              const IlluminationModel& illum,
                                              const PhaseMatrix& phases, double freq_hz,
                                              const HemisphereOptions& options = {});

/// CSV with header `theta_deg,phi_deg,mag_db,real,imag`, theta rows outer,
/// phi columns inner.
std::string pattern_csv(const FarFieldPattern& pattern);

/// Flat key=value block.
std::string metrics_text(const PatternMetrics& m);

} // namespace ris

#endif
