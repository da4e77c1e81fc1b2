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
//
// Command line front end: codebook synthesis, far-field patterns, scan
// sweeps, link budgets and bias-frame compilation. All outputs are plain
// CSV / key=value text with fixed formatting, so identical inputs produce
// byte-identical files.

#include "ris/array_layout.hpp"
#include "ris/codebook.hpp"
#include "ris/control_frame.hpp"
#include "ris/farfield.hpp"
#include "ris/io.hpp"
#include "ris/link_budget.hpp"
#include "ris/unit_cell.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace {

struct RunConfig {
    ris::ArrayLayout layout;
    std::string model = "ideal";
    std::string s21_path;
    double insertion_loss_db = 0.0;
    ris::IlluminationModel illum;
    double freq_hz = 5.8e9;
    std::string out_dir = ".";
    bool fast = false;
};

std::pair<double, double> parse_offset_pair(const std::string& value, const std::string& field)
{
    const auto parts = ris::io::split(value, ',');
    if (parts.size() != 2)
        throw std::invalid_argument(field + ": expected 'x,y'");
    return {ris::io::parse_double(parts[0], field), ris::io::parse_double(parts[1], field)};
}

bool parse_flag01(const std::string& value, const std::string& field)
{
    if (value == "0")
        return false;
    if (value == "1")
        return true;
    throw std::invalid_argument(field + ": expected 0 or 1");
}

void apply_config_file(RunConfig& cfg, const std::string& path)
{
    for (const auto& [key, value] : ris::io::read_key_value_file(path)) {
        if (key == "rows")
            cfg.layout.rows = static_cast<int>(ris::io::parse_long(value, "rows"));
        else if (key == "cols")
            cfg.layout.cols = static_cast<int>(ris::io::parse_long(value, "cols"));
        else if (key == "period_mm")
            cfg.layout.period = ris::io::parse_double(value, "period_mm") * 1e-3;
        else if (key == "feed_distance_mm")
            cfg.layout.feed_distance = ris::io::parse_double(value, "feed_distance_mm") * 1e-3;
        else if (key == "feed_offset_mm") {
            const auto [x, y] = parse_offset_pair(value, "feed_offset_mm");
            cfg.layout.feed_offset_x = x * 1e-3;
            cfg.layout.feed_offset_y = y * 1e-3;
        } else if (key == "freq_ghz")
            cfg.freq_hz = ris::io::parse_double(value, "freq_ghz") * 1e9;
        else if (key == "model")
            cfg.model = value;
        else if (key == "s21")
            cfg.s21_path = value;
        else if (key == "insertion_loss_db")
            cfg.insertion_loss_db = ris::io::parse_double(value, "insertion_loss_db");
        else if (key == "q")
            cfg.illum.feed_exponent_q = ris::io::parse_double(value, "q");
        else if (key == "q_e")
            cfg.illum.element_exponent_qe = ris::io::parse_double(value, "q_e");
        else if (key == "spherical_spreading")
            cfg.illum.spherical_spreading = parse_flag01(value, "spherical_spreading");
        else if (key == "feed_path_phase")
            cfg.illum.feed_path_phase = parse_flag01(value, "feed_path_phase");
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

ris::UnitCellModel build_cell(const RunConfig& cfg)
{
    if (cfg.model == "ideal")
        return ris::UnitCellModel::ideal(cfg.insertion_loss_db);
    if (cfg.model == "circuit")
        return ris::UnitCellModel::circuit();
    if (cfg.model == "tabulated") {
        if (cfg.s21_path.empty())
            throw std::invalid_argument("tabulated model requires --s21 PATH");
        return ris::UnitCellModel::tabulated(ris::S21Table::from_csv_file(cfg.s21_path));
    }
    throw std::invalid_argument("model must be one of ideal, circuit, tabulated");
}

void check_frequency_in_band(const RunConfig& cfg, const ris::UnitCellModel& cell)
{
    const auto [lo, hi] = cell.validity_band_hz();
    if (cfg.freq_hz < lo || cfg.freq_hz > hi)
        throw std::invalid_argument("freq_ghz outside the model validity band [" +
                                    ris::io::fmt_fixed(lo / 1e9, 3) + ", " +
                                    ris::io::fmt_fixed(hi / 1e9, 3) + "] GHz");
}

std::string out_path(const RunConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::vector<double> parse_angle_list(const std::string& csv, const std::string& field)
{
    std::vector<double> out;
    for (const auto& tok : ris::io::split(csv, ','))
        if (!tok.empty())
            out.push_back(ris::io::parse_double(tok, field));
    if (out.empty())
        throw std::invalid_argument(field + ": empty angle list");
    return out;
}

// Cut grid for pattern export: both great-circle halves of every requested
// cut, uniform in u = sin(theta) so the chirp-Z path accepts it.
ris::AngularGrid cut_grid(const std::vector<double>& cuts_deg, int n_theta)
{
    std::vector<double> phis;
    for (double c : cuts_deg) {
        if (c < 0.0 || c >= 360.0)
            throw std::invalid_argument("cuts: phi out of range [0, 360)");
        phis.push_back(c);
        phis.push_back(std::fmod(c + 180.0, 360.0));
    }
    std::sort(phis.begin(), phis.end());
    phis.erase(std::unique(phis.begin(), phis.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               phis.end());
    return ris::AngularGrid::uniform_uv_cuts(n_theta, phis);
}

void write_pattern_outputs(const RunConfig& cfg, const ris::UnitCellModel& cell,
                           const ris::CodeMatrix& code, const std::vector<double>& cuts,
                           const std::string& pattern_name, const std::string& metrics_name,
                           ris::PatternMetrics* metrics_out)
{
    const ris::AngularGrid grid = cut_grid(cuts, 181);
    const ris::FarFieldPattern cut_pattern =
        cfg.fast ? ris::radiate_fast(cfg.layout, cell, cfg.illum, code, cfg.freq_hz, grid)
                 : ris::radiate(cfg.layout, cell, cfg.illum, code, cfg.freq_hz, grid);
    ris::io::write_text_file(out_path(cfg, pattern_name), ris::pattern_csv(cut_pattern));

    const ris::FarFieldPattern hemi =
        ris::hemisphere_pattern(cfg.layout, cell, cfg.illum, code, cfg.freq_hz);
    const ris::PatternMetrics m = ris::metrics(hemi);
    ris::io::write_text_file(out_path(cfg, metrics_name), ris::metrics_text(m));
    if (metrics_out)
        *metrics_out = m;
}

int cmd_codebook(const RunConfig& cfg, double theta0, double phi0)
{
    const ris::BeamTarget target{theta0, phi0, cfg.freq_hz};
    const ris::PhaseMatrix phases = ris::phase_compensation(cfg.layout, target);
    const ris::CodeMatrix code = ris::quantize_1bit(phases);
    ris::io::write_text_file(out_path(cfg, "phase.csv"), ris::phase_matrix_csv(phases));
    ris::io::write_text_file(out_path(cfg, "code.txt"), code.to_text());
    std::printf("wrote %s and %s\n", out_path(cfg, "phase.csv").c_str(),
                out_path(cfg, "code.txt").c_str());
    return 0;
}

int cmd_pattern(const RunConfig& cfg, const std::string& code_path,
                const std::vector<double>& cuts)
{
    const ris::UnitCellModel cell = build_cell(cfg);
    check_frequency_in_band(cfg, cell);
    const ris::CodeMatrix code = ris::CodeMatrix::from_text_file(code_path);
    ris::PatternMetrics m;
    write_pattern_outputs(cfg, cell, code, cuts, "pattern.csv", "metrics.txt", &m);
    std::printf("peak (%s, %s) deg, directivity %s dBi\n",
                ris::io::fmt_fixed(m.peak_theta_deg, 2).c_str(),
                ris::io::fmt_fixed(m.peak_phi_deg, 2).c_str(),
                ris::io::fmt_fixed(m.directivity_dbi, 2).c_str());
    return 0;
}

int cmd_scan(const RunConfig& cfg, const std::vector<double>& thetas, double phi0)
{
    const ris::UnitCellModel cell = build_cell(cfg);
    check_frequency_in_band(cfg, cell);

    std::string summary =
        "theta0_deg,phi0_deg,peak_theta_deg,peak_phi_deg,directivity_dbi,"
        "sidelobe_level_db,beamwidth_cut1_deg,beamwidth_cut2_deg\n";
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const ris::BeamTarget target{thetas[i], phi0, cfg.freq_hz};
        const ris::PhaseMatrix phases = ris::phase_compensation(cfg.layout, target);
        const ris::CodeMatrix code = ris::quantize_1bit(phases);

        char prefix[32];
        std::snprintf(prefix, sizeof(prefix), "scan_%03zu_", i);
        ris::io::write_text_file(out_path(cfg, std::string(prefix) + "phase.csv"),
                                 ris::phase_matrix_csv(phases));
        ris::io::write_text_file(out_path(cfg, std::string(prefix) + "code.txt"),
                                 code.to_text());
        ris::PatternMetrics m;
        write_pattern_outputs(cfg, cell, code, {phi0, std::fmod(phi0 + 90.0, 360.0)},
                              std::string(prefix) + "pattern.csv",
                              std::string(prefix) + "metrics.txt", &m);

        summary += ris::io::fmt_fixed(thetas[i], 4) + ',' + ris::io::fmt_fixed(phi0, 4) + ',' +
                   ris::io::fmt_fixed(m.peak_theta_deg, 4) + ',' +
                   ris::io::fmt_fixed(m.peak_phi_deg, 4) + ',' +
                   ris::io::fmt_fixed(m.directivity_dbi, 4) + ',' +
                   ris::io::fmt_fixed(m.sidelobe_level_db, 4) + ',' +
                   ris::io::fmt_fixed(m.beamwidth_cut1_deg, 4) + ',' +
                   ris::io::fmt_fixed(m.beamwidth_cut2_deg, 4) + '\n';
        std::printf("theta0 %s: peak %s deg, directivity %s dBi\n",
                    ris::io::fmt_fixed(thetas[i], 1).c_str(),
                    ris::io::fmt_fixed(m.peak_theta_deg, 2).c_str(),
                    ris::io::fmt_fixed(m.directivity_dbi, 2).c_str());
    }
    ris::io::write_text_file(out_path(cfg, "summary.csv"), summary);
    return 0;
}

int cmd_link(const RunConfig& cfg, const std::string& scenario_path,
             const std::string& calibrate_path)
{
    ris::LinkScenario scenario;
    if (!scenario_path.empty())
        scenario = ris::scenario_from_file(scenario_path);

    std::string text;
    if (!calibrate_path.empty()) {
        const auto observations = ris::load_observations_csv(calibrate_path);
        const ris::CalibrationResult fit = ris::calibrate(observations, scenario);
        text = ris::calibration_text(fit);
    } else {
        if (ris::near_field_violated(scenario))
            std::fprintf(stderr,
                         "warning: d1 or d2 inside the far-field boundary (%s m); "
                         "the relay model is approximate there\n",
                         ris::io::fmt_fixed(ris::near_field_boundary_m(scenario), 2).c_str());
        text = ris::link_result_text(scenario, ris::evaluate(scenario));
    }
    ris::io::write_text_file(out_path(cfg, "link.txt"), text);
    std::fputs(text.c_str(), stdout);
    return 0;
}

int cmd_compile_frame(const RunConfig& cfg, const std::string& code_path,
                      const std::string& decompile_path)
{
    if (!decompile_path.empty()) {
        const ris::ControlFrame frame = ris::ControlFrame::from_text_file(decompile_path);
        const ris::CodeMatrix code = ris::decompile_frame(frame);
        ris::io::write_text_file(out_path(cfg, "code.txt"), code.to_text());
        std::printf("wrote %s\n", out_path(cfg, "code.txt").c_str());
        return 0;
    }
    const ris::CodeMatrix code = ris::CodeMatrix::from_text_file(code_path);
    const ris::ControlFrame frame = ris::compile_frame(code);
    ris::io::write_text_file(out_path(cfg, "frame.txt"), frame.to_text());
    std::printf("wrote %s\n", out_path(cfg, "frame.txt").c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"1-bit transmissive RIS simulator"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig flags; // flag values land here; merged over file values below
    struct Seen {
        bool rows = false, cols = false, period = false, feed_distance = false,
             feed_offset = false, freq = false, model = false, s21 = false, il = false,
             q = false, qe = false, spreading = false, feed_phase = false, out = false,
             fast = false;
    } seen;
    std::string feed_offset_arg;
    int spreading_arg = 1;
    int feed_phase_arg = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--freq-ghz", flags.freq_hz, "operating frequency, GHz")
            ->each([&](const std::string&) { seen.freq = true; });
        sub->add_option("--out", flags.out_dir, "output directory")
            ->each([&](const std::string&) { seen.out = true; });
        sub->add_option("--model", flags.model, "cell model: ideal|circuit|tabulated")
            ->each([&](const std::string&) { seen.model = true; });
        sub->add_option("--s21", flags.s21_path, "S21 table CSV (tabulated model)")
            ->each([&](const std::string&) { seen.s21 = true; });
        sub->add_flag("--fast", [&](std::int64_t) { seen.fast = true; },
                      "use the chirp-Z pattern path");
        sub->add_option("--rows", flags.layout.rows, "array rows")
            ->each([&](const std::string&) { seen.rows = true; });
        sub->add_option("--cols", flags.layout.cols, "array columns")
            ->each([&](const std::string&) { seen.cols = true; });
        sub->add_option("--period-mm", flags.layout.period, "cell period, mm")
            ->each([&](const std::string&) { seen.period = true; });
        sub->add_option("--feed-distance-mm", flags.layout.feed_distance, "feed distance, mm")
            ->each([&](const std::string&) { seen.feed_distance = true; });
        sub->add_option("--feed-offset-mm", feed_offset_arg, "feed offset 'x,y', mm")
            ->each([&](const std::string&) { seen.feed_offset = true; });
        sub->add_option("--insertion-loss-db", flags.insertion_loss_db,
                        "ideal-model insertion loss, dB")
            ->each([&](const std::string&) { seen.il = true; });
        sub->add_option("--q", flags.illum.feed_exponent_q, "feed taper exponent")
            ->each([&](const std::string&) { seen.q = true; });
        sub->add_option("--qe", flags.illum.element_exponent_qe, "element pattern exponent")
            ->each([&](const std::string&) { seen.qe = true; });
        sub->add_option("--spherical-spreading", spreading_arg, "1/d feed spreading, 0|1")
            ->each([&](const std::string&) { seen.spreading = true; });
        sub->add_option("--feed-path-phase", feed_phase_arg, "feed path phase, 0|1")
            ->each([&](const std::string&) { seen.feed_phase = true; });
    };

    auto* sc_codebook = app.add_subcommand("codebook", "synthesize phase and code matrices");
    double theta0 = 0.0, phi0 = 0.0;
    sc_codebook->add_option("--theta0", theta0, "target elevation, deg")->required();
    sc_codebook->add_option("--phi0", phi0, "target azimuth, deg");
    add_common(sc_codebook);

    auto* sc_pattern = app.add_subcommand("pattern", "far-field pattern and metrics for a code");
    std::string code_path;
    std::string cuts_arg = "0,90";
    sc_pattern->add_option("--code", code_path, "code matrix file")->required();
    sc_pattern->add_option("--cuts", cuts_arg, "phi cut list, deg (default 0,90)");
    add_common(sc_pattern);

    auto* sc_scan = app.add_subcommand("scan", "codebook + pattern sweep over targets");
    std::string thetas_arg;
    double scan_phi0 = 0.0;
    sc_scan->add_option("--thetas", thetas_arg, "comma list of theta0 targets, deg")->required();
    sc_scan->add_option("--phi0", scan_phi0, "target azimuth, deg");
    add_common(sc_scan);

    auto* sc_link = app.add_subcommand("link", "through-wall link budget");
    std::string scenario_path, calibrate_path;
    sc_link->add_option("--scenario", scenario_path, "scenario key=value file");
    sc_link->add_option("--calibrate", calibrate_path, "observations CSV to fit");
    add_common(sc_link);

    auto* sc_frame = app.add_subcommand("compile-frame", "code matrix <-> bias-line frame");
    std::string frame_code_path, decompile_path;
    sc_frame->add_option("--code", frame_code_path, "code matrix file");
    sc_frame->add_option("--decompile", decompile_path, "frame file to decompile");
    add_common(sc_frame);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty())
            apply_config_file(cfg, config_path);
        if (seen.rows)
            cfg.layout.rows = flags.layout.rows;
        if (seen.cols)
            cfg.layout.cols = flags.layout.cols;
        if (seen.period)
            cfg.layout.period = flags.layout.period * 1e-3;
        if (seen.feed_distance)
            cfg.layout.feed_distance = flags.layout.feed_distance * 1e-3;
        if (seen.feed_offset) {
            const auto [x, y] = parse_offset_pair(feed_offset_arg, "feed_offset_mm");
            cfg.layout.feed_offset_x = x * 1e-3;
            cfg.layout.feed_offset_y = y * 1e-3;
        }
        if (seen.freq)
            cfg.freq_hz = flags.freq_hz * 1e9;
        if (seen.model)
            cfg.model = flags.model;
        if (seen.s21)
            cfg.s21_path = flags.s21_path;
        if (seen.il)
            cfg.insertion_loss_db = flags.insertion_loss_db;
        if (seen.q)
            cfg.illum.feed_exponent_q = flags.illum.feed_exponent_q;
        if (seen.qe)
            cfg.illum.element_exponent_qe = flags.illum.element_exponent_qe;
        if (seen.spreading)
            cfg.illum.spherical_spreading = spreading_arg != 0;
        if (seen.feed_phase)
            cfg.illum.feed_path_phase = feed_phase_arg != 0;
        if (seen.out)
            cfg.out_dir = flags.out_dir;
        if (seen.fast)
            cfg.fast = true;
        cfg.layout.validate();
        cfg.illum.validate();
        if (!(cfg.freq_hz > 0.0))
            throw std::invalid_argument("freq_ghz must be > 0");

        if (sc_codebook->parsed())
            return cmd_codebook(cfg, theta0, phi0);
        if (sc_pattern->parsed())
            return cmd_pattern(cfg, code_path, parse_angle_list(cuts_arg, "cuts"));
        if (sc_scan->parsed())
            return cmd_scan(cfg, parse_angle_list(thetas_arg, "thetas"), scan_phi0);
        if (sc_link->parsed()) {
            if (scenario_path.empty() && calibrate_path.empty())
                throw std::invalid_argument("link needs --scenario and/or --calibrate");
            return cmd_link(cfg, scenario_path, calibrate_path);
        }
        if (sc_frame->parsed()) {
            if (frame_code_path.empty() && decompile_path.empty())
                throw std::invalid_argument("compile-frame needs --code or --decompile");
            return cmd_compile_frame(cfg, frame_code_path, decompile_path);
        }
        throw std::invalid_argument("no subcommand");
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
