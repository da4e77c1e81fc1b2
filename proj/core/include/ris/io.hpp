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

#ifndef RIS_IO_HPP
#define RIS_IO_HPP

#include <map>
#include <string>
#include <vector>

namespace ris::io {

/// Fixed-width numeric formatting. All file output goes through these two
/// helpers so repeated runs produce byte-identical artifacts.
std::string fmt_fixed(double value, int decimals);
std::string fmt_sci(double value, int decimals);

/// One non-comment line of a text file, with its 1-based line number kept
/// for error reporting.
struct TextLine {
    std::string text;
    int number = 0;
};

/// Reads a file, strips '#' comments and blank lines. Throws
/// std::invalid_argument if the file cannot be opened.
std::vector<TextLine> read_data_lines(const std::string& path);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& line, char sep);

/// Strict numeric parsing; `context` names the offending token on failure.
double parse_double(const std::string& token, const std::string& context);
long parse_long(const std::string& token, const std::string& context);

/// Flat `key = value` file ('#' comments allowed). Later duplicates win.
std::map<std::string, std::string> read_key_value_file(const std::string& path);
std::map<std::string, std::string> parse_key_value_lines(const std::vector<TextLine>& lines);

void write_text_file(const std::string& path, const std::string& content);

} // namespace ris::io

#endif
