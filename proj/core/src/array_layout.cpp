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

#include <cmath>
#include <stdexcept>

namespace ris {

void ArrayLayout::validate() const
{
    if (rows < 1)
        throw std::invalid_argument("rows must be >= 1");
    if (cols < 1)
        throw std::invalid_argument("cols must be >= 1");
    if (!(period > 0.0) || !std::isfinite(period))
        throw std::invalid_argument("period must be > 0");
    if (!(feed_distance > 0.0) || !std::isfinite(feed_distance))
        throw std::invalid_argument("feed_distance must be > 0");
    if (!std::isfinite(feed_offset_x) || !std::isfinite(feed_offset_y))
        throw std::invalid_argument("feed_offset must be finite");
}

double ArrayLayout::element_x(int i) const
{
    const int col = i % cols;
    return (col - (cols - 1) / 2.0) * period;
}

double ArrayLayout::element_y(int i) const
{
    const int row = i / cols;
    return (row - (rows - 1) / 2.0) * period;
}

std::vector<std::pair<double, double>> element_positions(const ArrayLayout& layout)
{
    layout.validate();
    std::vector<std::pair<double, double>> pos;
    pos.reserve(layout.element_count());
    for (int i = 0; i < layout.element_count(); ++i)
        pos.emplace_back(layout.element_x(i), layout.element_y(i));
    return pos;
}

double feed_distance_to_element(const ArrayLayout& layout, int i)
{
    layout.validate();
    if (i < 0 || i >= layout.element_count())
        throw std::out_of_range("element index out of range");
    const double dx = layout.element_x(i) - layout.feed_offset_x;
    const double dy = layout.element_y(i) - layout.feed_offset_y;
    return std::sqrt(dx * dx + dy * dy + layout.feed_distance * layout.feed_distance);
}

double feed_cos_offaxis(const ArrayLayout& layout, int i)
{
    return layout.feed_distance / feed_distance_to_element(layout, i);
}

} // namespace ris
