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

#include "ris/io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ris {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void BeamTarget::validate() const
{
    if (!(theta0_deg >= 0.0) || theta0_deg >= 90.0)
        throw std::invalid_argument("theta0 out of range [0, 90)");
    if (!(phi0_deg >= 0.0) || phi0_deg >= 360.0)
        throw std::invalid_argument("phi0 out of range [0, 360)");
    if (!(freq_hz > 0.0) || !std::isfinite(freq_hz))
        throw std::invalid_argument("frequency must be > 0");
}

PhaseMatrix phase_compensation(const ArrayLayout& layout, const BeamTarget& target)
{
    layout.validate();
    target.validate();

    const double k = two_pi / target.wavelength_m();
    const double theta0 = target.theta0_deg * std::numbers::pi / 180.0;
    const double phi0 = target.phi0_deg * std::numbers::pi / 180.0;
    const double sin_t = std::sin(theta0);
    const double cos_p = std::cos(phi0);
    const double sin_p = std::sin(phi0);

    PhaseMatrix out;
    out.rows = layout.rows;
    out.cols = layout.cols;
    out.values.resize(layout.element_count());
    for (int i = 0; i < layout.element_count(); ++i) {
        const double x = layout.element_x(i);
        const double y = layout.element_y(i);
        const double d = feed_distance_to_element(layout, i);
        double phase = std::fmod(k * (d - sin_t * (x * cos_p + y * sin_p)), two_pi);
        if (phase < 0.0)
            phase += two_pi;
        out.values[i] = phase;
    }
    return out;
}

CodeMatrix quantize_1bit(const PhaseMatrix& phases)
{
    if (phases.rows < 1 || phases.cols < 1 ||
        phases.values.size() != static_cast<std::size_t>(phases.rows) * phases.cols)
        throw std::invalid_argument("phase matrix dimensions inconsistent");

    CodeMatrix code;
    code.rows = phases.rows;
    code.cols = phases.cols;
    code.bits.resize(phases.values.size());
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double three_half_pi = 3.0 * std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < phases.values.size(); ++i) {
        const double p = phases.values[i];
        if (!(p >= 0.0) || p >= two_pi || !std::isfinite(p))
            throw std::invalid_argument("phase matrix entry outside [0, 2*pi)");
        code.bits[i] = (p >= half_pi && p < three_half_pi) ? 1 : 0;
    }
    return code;
}

std::vector<CodeMatrix> scan_codebook(const ArrayLayout& layout,
                                      std::span<const BeamTarget> targets)
{
    if (targets.empty())
        throw std::invalid_argument("scan target list is empty");
    std::vector<CodeMatrix> out;
    out.reserve(targets.size());
    for (const auto& t : targets)
        out.push_back(quantize_1bit(phase_compensation(layout, t)));
    return out;
}

CodeMatrix CodeMatrix::from_text(const std::string& text)
{
    std::istringstream in(text);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = io::trim(line);
        if (!line.empty())
            rows.push_back(line);
    }
    if (rows.empty())
        throw std::invalid_argument("code matrix text has no rows");

    CodeMatrix m;
    m.rows = static_cast<int>(rows.size());
    m.cols = static_cast<int>(rows.front().size());
    m.bits.reserve(static_cast<std::size_t>(m.rows) * m.cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(m.cols))
            throw std::invalid_argument("code matrix row " + std::to_string(r + 1) +
                                        " has inconsistent length");
        for (char ch : rows[r]) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("code matrix row " + std::to_string(r + 1) +
                                            ": invalid character '" + std::string(1, ch) + "'");
            m.bits.push_back(ch == '1' ? 1 : 0);
        }
    }
    return m;
}

CodeMatrix CodeMatrix::from_text_file(const std::string& path)
{
    std::string joined;
    for (const auto& l : io::read_data_lines(path)) {
        joined += l.text;
        joined += '\n';
    }
    try {
        return from_text(joined);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string CodeMatrix::to_text() const
{
    std::string out;
    out.reserve(static_cast<std::size_t>(rows) * (cols + 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c)
            out += at(r, c) ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string phase_matrix_csv(const PhaseMatrix& phases)
{
    std::string out;
    for (int r = 0; r < phases.rows; ++r) {
        for (int c = 0; c < phases.cols; ++c) {
            if (c)
                out += ',';
            out += io::fmt_fixed(phases.at(r, c), 10);
        }
        out += '\n';
    }
    return out;
}

} // namespace ris
