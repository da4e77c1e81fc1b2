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

#ifndef RIS_ARRAY_LAYOUT_HPP
#define RIS_ARRAY_LAYOUT_HPP

#include <utility>
#include <vector>

namespace ris {

/// Exact free-space speed of light, m/s.
inline constexpr double speed_of_light = 299792458.0;

/// Aperture geometry: a grid-centered rectangular lattice of unit cells in
/// the z = 0 plane, space-fed from (feed_offset_x, feed_offset_y, -F).
/// Element phase centers sit at the geometric cell centers. Immutable value
/// type; share freely across threads.
struct ArrayLayout {
    int rows = 16;
    int cols = 16;
    double period = 0.018;        ///< cell pitch, m
    double feed_distance = 0.260; ///< feed phase center to aperture plane, m
    double feed_offset_x = 0.0;   ///< m
    double feed_offset_y = 0.0;   ///< m

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    int element_count() const { return rows * cols; }

    /// Row-major element index -> grid-centered position. Row 0 carries the
    /// smallest y, column index varies fastest.
    double element_x(int i) const;
    double element_y(int i) const;
};

/// All element positions in row-major order; centroid is the origin.
std::vector<std::pair<double, double>> element_positions(const ArrayLayout& layout);

/// Euclidean distance from the feed phase center to element i.
double feed_distance_to_element(const ArrayLayout& layout, int i);

/// Cosine of the feed's off-axis angle toward element i (boresight = +z).
double feed_cos_offaxis(const ArrayLayout& layout, int i);

} // namespace ris

#endif
