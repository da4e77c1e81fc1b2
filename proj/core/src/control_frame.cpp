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

#include "ris/control_frame.hpp"

#include "ris/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ris {

namespace {

constexpr int frame_rows = 16;
constexpr int frame_cols = 16;

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

} // namespace

void ControlFrame::validate() const
{
    for (int k = 0; k < connectors; ++k)
        for (int p = payload_pins + 1; p <= pins_per_connector; ++p)
            if (pin(k, p))
                throw std::invalid_argument("malformed frame: reserved pin " + std::to_string(p) +
                                            " high on connector " + std::to_string(k));
}

std::string ControlFrame::to_text() const
{
    validate();
    std::string out;
    for (int k = 0; k < connectors; ++k) {
        std::uint32_t word = 0;
        for (int p = 1; p <= payload_pins; ++p)
            word = (word << 1) | static_cast<std::uint32_t>(pin(k, p));
        char buf[16];
        std::snprintf(buf, sizeof(buf), "C%d: %08X\n", k, word);
        out += buf;
    }
    return out;
}

ControlFrame ControlFrame::from_text(const std::string& text)
{
    std::istringstream in(text);
    std::vector<std::pair<std::string, int>> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        raw = io::trim(raw);
        if (!raw.empty())
            lines.emplace_back(raw, number);
    }
    if (lines.size() != connectors)
        throw std::invalid_argument("frame text must have exactly " +
                                    std::to_string(connectors) + " connector lines, got " +
                                    std::to_string(lines.size()));

    ControlFrame f;
    for (int k = 0; k < connectors; ++k) {
        const auto& [line, lineno] = lines[k];
        const std::string prefix = "C" + std::to_string(k) + ":";
        if (line.rfind(prefix, 0) != 0)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '" +
                                        prefix + "' prefix");
        std::string payload = io::trim(line.substr(prefix.size()));
        if (payload.size() != 8)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 8 hex digits, got " +
                                        std::to_string(payload.size()));
        std::uint32_t word = 0;
        for (std::size_t i = 0; i < payload.size(); ++i) {
            const int v = hex_value(payload[i]);
            if (v < 0)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": invalid hex digit '" +
                                            std::string(1, payload[i]) + "' at position " +
                                            std::to_string(i + 1));
            word = (word << 4) | static_cast<std::uint32_t>(v);
        }
        for (int p = 1; p <= payload_pins; ++p)
            f.set_pin(k, p, (word >> (payload_pins - p)) & 1u);
    }
    return f;
}

ControlFrame ControlFrame::from_text_file(const std::string& path)
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

ControlFrame compile_frame(const CodeMatrix& code)
{
    if (code.rows != frame_rows || code.cols != frame_cols)
        throw std::invalid_argument("control frame compilation requires a 16x16 code matrix");

    ControlFrame f;
    for (int k = 0; k < ControlFrame::connectors; ++k) {
        for (int p = 1; p <= ControlFrame::payload_pins; ++p) {
            const int row = 2 * k + (p - 1) / frame_cols;
            const int col = (p - 1) % frame_cols;
            f.set_pin(k, p, code.at(row, col));
        }
    }
    return f;
}

CodeMatrix decompile_frame(const ControlFrame& frame)
{
    frame.validate();
    CodeMatrix code;
    code.rows = frame_rows;
    code.cols = frame_cols;
    code.bits.assign(static_cast<std::size_t>(frame_rows) * frame_cols, 0);
    for (int k = 0; k < ControlFrame::connectors; ++k) {
        for (int p = 1; p <= ControlFrame::payload_pins; ++p) {
            const int row = 2 * k + (p - 1) / frame_cols;
            const int col = (p - 1) % frame_cols;
            code.set(row, col, frame.pin(k, p));
        }
    }
    return code;
}

std::pair<DiodeState, DiodeState> diode_states(int code_bit)
{
    if (code_bit != 0 && code_bit != 1)
        throw std::invalid_argument("code bit must be 0 or 1");
    return code_bit ? std::pair{DiodeState::On, DiodeState::Off}
                    : std::pair{DiodeState::Off, DiodeState::On};
}

} // namespace ris
