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

#ifndef RIS_CODEBOOK_HPP
#define RIS_CODEBOOK_HPP

#include "ris/array_layout.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ris {

/// Steering target. theta0 in [0, 90) deg, phi0 in [0, 360) deg.
struct BeamTarget {
    double theta0_deg = 0.0;
    double phi0_deg = 0.0;
    double freq_hz = 5.8e9;

    void validate() const;
    double wavelength_m() const { return speed_of_light / freq_hz; }
};

/// Per-element compensation phases, radians in [0, 2*pi), row-major.
struct PhaseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
};

/// Binary cell-state assignment, row-major; row 0 carries the smallest y.
struct CodeMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;

    int at(int r, int c) const { return bits[static_cast<std::size_t>(r) * cols + c]; }
    void set(int r, int c, int b) { bits[static_cast<std::size_t>(r) * cols + c] = b ? 1 : 0; }

    bool operator==(const CodeMatrix&) const = default;

    /// One '0'/'1' line per row, no separators; '#' comments allowed.
    static CodeMatrix from_text(const std::string& text);
    static CodeMatrix from_text_file(const std::string& path);
    std::string to_text() const;
};

/// Per-element phase each cell must add so the aperture radiates toward the
/// target: (2*pi/lambda) * (d_i - sin(theta0) * (x_i*cos(phi0) + y_i*sin(phi0))),
/// reduced mod 2*pi.
PhaseMatrix phase_compensation(const ArrayLayout& layout, const BeamTarget& target);

/// Nearest of {0, pi}: bit 1 for phases in [pi/2, 3*pi/2), bit 0 otherwise.
/// Boundaries go to the upper set (pi/2 -> 1, 3*pi/2 -> 0).
CodeMatrix quantize_1bit(const PhaseMatrix& phases);

/// phase_compensation + quantize_1bit per target, order preserved.
std::vector<CodeMatrix> scan_codebook(const ArrayLayout& layout,
                                      std::span<const BeamTarget> targets);

/// CSV of radians, row-major, one line per row.
std::string phase_matrix_csv(const PhaseMatrix& phases);

} // namespace ris

#endif
