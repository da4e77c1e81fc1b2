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

#include "ris/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace ris::io {

std::string fmt_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    // avoid the "-0.000" artifact so symmetric inputs format symmetrically
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-')
        s.erase(0, 1);
    return s;
}

std::string fmt_sci(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", decimals, value);
    return std::string(buf);
}

std::vector<TextLine> read_data_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    std::vector<TextLine> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (!line.empty())
            out.push_back({line, number});
    }
    return out;
}

std::string trim(const std::string& s)
{
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return {};
    auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& token, const std::string& context)
{
    const std::string t = trim(token);
    if (t.empty())
        throw std::invalid_argument(context + ": empty numeric field");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw std::invalid_argument(context + ": not a number: '" + t + "'");
    return v;
}

long parse_long(const std::string& token, const std::string& context)
{
    const std::string t = trim(token);
    if (t.empty())
        throw std::invalid_argument(context + ": empty integer field");
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size())
        throw std::invalid_argument(context + ": not an integer: '" + t + "'");
    return v;
}

std::map<std::string, std::string> parse_key_value_lines(const std::vector<TextLine>& lines)
{
    std::map<std::string, std::string> out;
    for (const auto& l : lines) {
        auto eq = l.text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(l.number) +
                                        ": expected 'key = value', got '" + l.text + "'");
        std::string key = trim(l.text.substr(0, eq));
        std::string value = trim(l.text.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("line " + std::to_string(l.number) + ": empty key");
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path)
{
    return parse_key_value_lines(read_data_lines(path));
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open file for writing: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace ris::io
