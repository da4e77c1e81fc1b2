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

#ifndef RIS_CONTROL_FRAME_HPP
#define RIS_CONTROL_FRAME_HPP

#include "ris/codebook.hpp"
#include "ris/unit_cell.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>

namespace ris {

/// Bias-line image of a 16x16 code: eight 34-pin connectors, pins 1..32
/// carrying one bias line each (one line drives both diodes of a cell),
/// pins 33/34 reserved and held low. Connector k carries rows 2k and 2k+1;
/// pin p (1-based) maps to row 2k + (p-1)/16, column (p-1) % 16. The pinout
/// is a documented convention, not published hardware data.
struct ControlFrame {
    static constexpr int connectors = 8;
    static constexpr int pins_per_connector = 34;
    static constexpr int payload_pins = 32;

    /// pin states, [connector][pin-1], 0/1
    std::array<std::array<std::uint8_t, pins_per_connector>, connectors> pins{};

    int pin(int connector, int pin_number) const { return pins[connector][pin_number - 1]; }
    void set_pin(int connector, int pin_number, int v)
    {
        pins[connector][pin_number - 1] = v ? 1 : 0;
    }

    /// Throws if a reserved pin is high.
    void validate() const;

    /// Wire format: one line per connector, `C<k>: ` plus the 32 payload
    /// bits as 8 uppercase hex digits, pin 1 at the most significant bit.
    std::string to_text() const;
    static ControlFrame from_text(const std::string& text);
    static ControlFrame from_text_file(const std::string& path);
};

/// Code matrix -> bias frame. Requires exactly 16x16.
ControlFrame compile_frame(const CodeMatrix& code);

/// Exact inverse of compile_frame. Rejects frames with reserved pins high.
CodeMatrix decompile_frame(const ControlFrame& frame);

/// Antisymmetric drive: bit 0 -> (#1 OFF, #2 ON), bit 1 -> (#1 ON, #2 OFF).
std::pair<DiodeState, DiodeState> diode_states(int code_bit);

} // namespace ris

#endif
