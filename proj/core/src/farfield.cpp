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

#include "ris/farfield.hpp"

#include "ris/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ris {

namespace {

constexpr double pi = std::numbers::pi;

double deg2rad(double d) { return d * pi / 180.0; }

double pow_or_one(double base, double exponent)
{
    return exponent == 0.0 ? 1.0 : std::pow(base, exponent);
}

int worker_count(std::size_t jobs)
{
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0)
        n = 1;
    if (const char* env = std::getenv("RIS_SIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
        // 0 (or garbage) means auto
    }
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    const int workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

// Feed-side excitation of every element: taper, spreading loss, path phase
// and the cell transmission, in row-major element order.
std::vector<std::complex<double>> excitations(const ArrayLayout& layout,
                                              const IlluminationModel& illum, double k,
                                              const std::vector<std::complex<double>>& cell_t)
{
    std::vector<std::complex<double>> w(layout.element_count());
    for (int i = 0; i < layout.element_count(); ++i) {
        const double d = feed_distance_to_element(layout, i);
        double amp = pow_or_one(layout.feed_distance / d, illum.feed_exponent_q);
        if (illum.spherical_spreading)
            amp /= d;
        std::complex<double> e =
            illum.feed_path_phase ? std::polar(1.0, -k * d) : std::complex<double>(1.0, 0.0);
        w[i] = amp * e * cell_t[i];
    }
    return w;
}

std::vector<std::complex<double>> cell_transmissions(const UnitCellModel& cell,
                                                     const CodeMatrix& code, double freq_hz)
{
    const std::complex<double> t0 = cell.transmission(0, freq_hz);
    const std::complex<double> t1 = cell.transmission(1, freq_hz);
    std::vector<std::complex<double>> t(code.bits.size());
    for (std::size_t i = 0; i < code.bits.size(); ++i)
        t[i] = code.bits[i] ? t1 : t0;
    return t;
}

std::vector<std::complex<double>> cell_transmissions_continuous(const UnitCellModel& cell,
                                                                const PhaseMatrix& phases,
                                                                double freq_hz)
{
    const double mag = std::abs(cell.transmission(0, freq_hz));
    std::vector<std::complex<double>> t(phases.values.size());
    for (std::size_t i = 0; i < phases.values.size(); ++i)
        t[i] = std::polar(mag, phases.values[i]);
    return t;
}

FarFieldPattern assemble_pattern(AngularGrid grid, std::vector<std::complex<double>> field)
{
    FarFieldPattern p;
    p.grid = std::move(grid);
    p.field = std::move(field);
    p.mag_db.resize(p.field.size());

    double peak = 0.0;
    std::size_t peak_index = 0;
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        const double m = std::abs(p.field[i]);
        if (m > peak) {
            peak = m;
            peak_index = i;
        }
    }
    if (peak <= 0.0)
        throw std::runtime_error("far-field pattern is identically zero");
    for (std::size_t i = 0; i < p.field.size(); ++i) {
        const double m = std::abs(p.field[i]);
        p.mag_db[i] = m > 0.0 ? std::max(20.0 * std::log10(m / peak), FarFieldPattern::db_floor)
                              : FarFieldPattern::db_floor;
    }
    p.mag_db[peak_index] = 0.0;
    p.peak_index = peak_index;
    return p;
}

// ---- chirp-Z machinery for radiate_fast -----------------------------------

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

// In-place iterative radix-2 FFT, size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        const std::complex<double> wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        for (auto& x : a)
            x /= static_cast<double>(n);
    }
}

// X_n = sum_c a_c * exp(j*alpha*n*c) for n = 0..m-1 via Bluestein's identity
// (quadratic chirps plus one zero-padded circular convolution).
std::vector<std::complex<double>> chirp_z(const std::vector<std::complex<double>>& a, int m,
                                          double alpha)
{
    const int n = static_cast<int>(a.size());
    if (n == 1)
        return std::vector<std::complex<double>>(m, a[0]);

    const std::size_t conv = next_pow2(static_cast<std::size_t>(n + m - 1));
    std::vector<std::complex<double>> u(conv, {0.0, 0.0});
    std::vector<std::complex<double>> v(conv, {0.0, 0.0});
    for (int c = 0; c < n; ++c)
        u[c] = a[c] * std::polar(1.0, 0.5 * alpha * static_cast<double>(c) * c);
    for (int t = -(n - 1); t < m; ++t) {
        const std::size_t idx = t >= 0 ? static_cast<std::size_t>(t) : conv + t;
        v[idx] = std::polar(1.0, -0.5 * alpha * static_cast<double>(t) * t);
    }
    fft_pow2(u, false);
    fft_pow2(v, false);
    for (std::size_t i = 0; i < conv; ++i)
        u[i] *= v[i];
    fft_pow2(u, true);

    std::vector<std::complex<double>> out(m);
    for (int t = 0; t < m; ++t)
        out[t] = u[t] * std::polar(1.0, 0.5 * alpha * static_cast<double>(t) * t);
    return out;
}

// ---------------------------------------------------------------------------

void check_code_dims(const ArrayLayout& layout, int rows, int cols, std::size_t count)
{
    if (rows != layout.rows || cols != layout.cols ||
        count != static_cast<std::size_t>(layout.element_count()))
        throw std::invalid_argument("code matrix dimensions do not match the array layout");
}

FarFieldPattern radiate_direct(const ArrayLayout& layout, const IlluminationModel& illum,
                               const std::vector<std::complex<double>>& cell_t, double freq_hz,
                               const AngularGrid& grid)
{
    const double k = 2.0 * pi * freq_hz / speed_of_light;
    const auto w = excitations(layout, illum, k, cell_t);
    const auto pos = element_positions(layout);

    const std::size_t nt = grid.theta_deg.size();
    const std::size_t np = grid.phi_deg.size();
    std::vector<std::complex<double>> field(nt * np);

    parallel_for(nt * np, [&](std::size_t idx) {
        const double theta = deg2rad(grid.theta_deg[idx / np]);
        const double phi = deg2rad(grid.phi_deg[idx % np]);
        const double u = std::sin(theta) * std::cos(phi);
        const double v = std::sin(theta) * std::sin(phi);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < w.size(); ++i)
            acc += w[i] * std::polar(1.0, k * (pos[i].first * u + pos[i].second * v));
        field[idx] = acc * pow_or_one(std::cos(theta), illum.element_exponent_qe);
    });

    return assemble_pattern(grid, std::move(field));
}

FarFieldPattern radiate_czt(const ArrayLayout& layout, const IlluminationModel& illum,
                            const std::vector<std::complex<double>>& cell_t, double freq_hz,
                            const AngularGrid& grid)
{
    const std::size_t nt = grid.theta_deg.size();
    const std::size_t np = grid.phi_deg.size();

    // uniform u = sin(theta) sampling is the contract; reject anything else
    std::vector<double> s(nt);
    for (std::size_t i = 0; i < nt; ++i)
        s[i] = std::sin(deg2rad(grid.theta_deg[i]));
    const double step = (s.back() - s.front()) / static_cast<double>(nt - 1);
    for (std::size_t i = 0; i < nt; ++i) {
        if (std::abs(s[i] - (s.front() + step * static_cast<double>(i))) > 1e-12)
            throw std::invalid_argument(
                "radiate_fast: non-uniform grid requested (needs uniform u-v sampling)");
    }

    const double k = 2.0 * pi * freq_hz / speed_of_light;
    const auto w = excitations(layout, illum, k, cell_t);

    const int rows = layout.rows;
    const int cols = layout.cols;
    const double col_center = (cols - 1) / 2.0;
    std::vector<std::complex<double>> field(nt * np);

    for (std::size_t ip = 0; ip < np; ++ip) {
        const double phi = deg2rad(grid.phi_deg[ip]);
        const double cphi = std::cos(phi);
        const double sphi = std::sin(phi);
        const double alpha = k * step * layout.period * cphi;

        // per-row chirp-Z along the column axis, evaluated at every u sample
        std::vector<std::vector<std::complex<double>>> row_spectra(rows);
        std::vector<std::complex<double>> a(cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c)
                a[c] = w[static_cast<std::size_t>(r) * cols + c] *
                       std::polar(1.0, k * s.front() * layout.period * cphi * c);
            row_spectra[r] = chirp_z(a, static_cast<int>(nt), alpha);
        }

        for (std::size_t n = 0; n < nt; ++n) {
            const double sn = s.front() + step * static_cast<double>(n);
            std::complex<double> acc(0.0, 0.0);
            for (int r = 0; r < rows; ++r) {
                const double y = layout.element_y(r * cols);
                acc += row_spectra[r][n] * std::polar(1.0, k * sn * y * sphi);
            }
            acc *= std::polar(1.0, -k * sn * layout.period * cphi * col_center);
            const double theta = deg2rad(grid.theta_deg[n]);
            field[n * np + ip] = acc * pow_or_one(std::cos(theta), illum.element_exponent_qe);
        }
    }

    return assemble_pattern(grid, std::move(field));
}

} // namespace

void IlluminationModel::validate() const
{
    if (!(feed_exponent_q >= 0.0) || !std::isfinite(feed_exponent_q))
        throw std::invalid_argument("feed_exponent_q must be >= 0");
    if (!(element_exponent_qe >= 0.0) || !std::isfinite(element_exponent_qe))
        throw std::invalid_argument("element_exponent_qe must be >= 0");
}

void AngularGrid::validate() const
{
    if (theta_deg.size() < 2)
        throw std::invalid_argument("angular grid needs at least 2 theta samples");
    if (phi_deg.empty())
        throw std::invalid_argument("angular grid needs at least 1 phi sample");
    for (std::size_t i = 0; i < theta_deg.size(); ++i) {
        if (theta_deg[i] < 0.0 || theta_deg[i] > 90.0)
            throw std::invalid_argument("theta samples must lie in [0, 90] deg");
        if (i > 0 && !(theta_deg[i] > theta_deg[i - 1]))
            throw std::invalid_argument("theta samples must be strictly increasing");
    }
    for (std::size_t i = 0; i < phi_deg.size(); ++i) {
        if (phi_deg[i] < 0.0 || phi_deg[i] >= 360.0)
            throw std::invalid_argument("phi samples must lie in [0, 360) deg");
        if (i > 0 && !(phi_deg[i] > phi_deg[i - 1]))
            throw std::invalid_argument("phi samples must be strictly increasing");
    }
}

AngularGrid AngularGrid::hemisphere(double theta_step_deg, double phi_step_deg)
{
    if (!(theta_step_deg > 0.0) || !(phi_step_deg > 0.0))
        throw std::invalid_argument("grid steps must be > 0");
    AngularGrid g;
    for (double t = 0.0; t < 90.0 - 1e-9; t += theta_step_deg)
        g.theta_deg.push_back(t);
    g.theta_deg.push_back(90.0);
    for (double p = 0.0; p < 360.0 - 1e-9; p += phi_step_deg)
        g.phi_deg.push_back(p);
    g.validate();
    return g;
}

AngularGrid AngularGrid::uniform_uv_cuts(int n_theta, std::vector<double> phis_deg, double u_max)
{
    if (n_theta < 2)
        throw std::invalid_argument("uniform_uv_cuts needs at least 2 samples");
    if (!(u_max > 0.0) || u_max > 1.0)
        throw std::invalid_argument("u_max must lie in (0, 1]");
    AngularGrid g;
    g.theta_deg.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        const double u = u_max * static_cast<double>(i) / static_cast<double>(n_theta - 1);
        g.theta_deg[i] = std::asin(u) * 180.0 / pi;
    }
    std::sort(phis_deg.begin(), phis_deg.end());
    g.phi_deg = std::move(phis_deg);
    g.validate();
    return g;
}

FarFieldPattern radiate(const ArrayLayout& layout, const UnitCellModel& cell,
                        const IlluminationModel& illum, const CodeMatrix& code, double freq_hz,
                        const AngularGrid& grid)
{
    layout.validate();
    illum.validate();
    grid.validate();
    check_code_dims(layout, code.rows, code.cols, code.bits.size());
    return radiate_direct(layout, illum, cell_transmissions(cell, code, freq_hz), freq_hz, grid);
}

FarFieldPattern radiate_fast(const ArrayLayout& layout, const UnitCellModel& cell,
                             const IlluminationModel& illum, const CodeMatrix& code,
                             double freq_hz, const AngularGrid& grid)
{
    layout.validate();
    illum.validate();
    grid.validate();
    check_code_dims(layout, code.rows, code.cols, code.bits.size());
    return radiate_czt(layout, illum, cell_transmissions(cell, code, freq_hz), freq_hz, grid);
}

FarFieldPattern radiate_continuous(const ArrayLayout& layout, const UnitCellModel& cell,
                                   const IlluminationModel& illum, const PhaseMatrix& phases,
                                   double freq_hz, const AngularGrid& grid)
{
    layout.validate();
    illum.validate();
    grid.validate();
    check_code_dims(layout, phases.rows, phases.cols, phases.values.size());
    return radiate_direct(layout, illum, cell_transmissions_continuous(cell, phases, freq_hz),
                          freq_hz, grid);
}

// ---- metrics ---------------------------------------------------------------

namespace {

// A great-circle cut through the pole: the phi+180 column supplies the
// negative-theta half. `s_deg` is the signed theta axis.
struct CompositeCut {
    std::vector<double> s_deg;
    std::vector<double> mag_db;
    std::size_t pole_offset = 0; // index of theta=theta[0] in the primary half
};

std::size_t mirror_phi_column(const AngularGrid& grid, std::size_t ip)
{
    const double want = std::fmod(grid.phi_deg[ip] + 180.0, 360.0);
    for (std::size_t j = 0; j < grid.phi_deg.size(); ++j)
        if (std::abs(grid.phi_deg[j] - want) < 1e-9)
            return j;
    throw std::invalid_argument("pattern metrics need phi and phi+180 columns in the grid");
}

CompositeCut composite_cut(const FarFieldPattern& p, std::size_t ip)
{
    const auto& grid = p.grid;
    const std::size_t im = mirror_phi_column(grid, ip);
    const std::size_t nt = grid.theta_deg.size();
    const std::size_t np = grid.phi_deg.size();

    CompositeCut cut;
    cut.s_deg.reserve(2 * nt - 1);
    cut.mag_db.reserve(2 * nt - 1);
    for (std::size_t j = nt; j-- > 1;) {
        cut.s_deg.push_back(-grid.theta_deg[j]);
        cut.mag_db.push_back(p.mag_db[j * np + im]);
    }
    cut.pole_offset = cut.s_deg.size();
    for (std::size_t j = 0; j < nt; ++j) {
        cut.s_deg.push_back(grid.theta_deg[j]);
        cut.mag_db.push_back(p.mag_db[j * np + ip]);
    }
    return cut;
}

// Vertex of the parabola through three (x, y) samples; falls back to the
// middle sample when the points are collinear.
void parabolic_vertex(double x1, double y1, double x2, double y2, double x3, double y3,
                      double& vx, double& vy)
{
    const double a = (x2 - x1) * (y2 - y3);
    const double b = (x2 - x3) * (y2 - y1);
    const double den = a - b;
    vx = x2;
    vy = y2;
    if (std::abs(den) < 1e-300)
        return;
    vx = x2 - 0.5 * ((x2 - x1) * a - (x2 - x3) * b) / den;
    if (vx < std::min(x1, x3) || vx > std::max(x1, x3)) {
        vx = x2;
        return;
    }
    // evaluate via Lagrange
    const double l1 = (vx - x2) * (vx - x3) / ((x1 - x2) * (x1 - x3));
    const double l2 = (vx - x1) * (vx - x3) / ((x2 - x1) * (x2 - x3));
    const double l3 = (vx - x1) * (vx - x2) / ((x3 - x1) * (x3 - x2));
    vy = std::max(y2, y1 * l1 + y2 * l2 + y3 * l3);
}

struct CutPeak {
    std::size_t index;
    double s_deg;
    double level_db;
};

// Argmax on a cut; ties (flat ridges, conical cuts of a broadside beam) go
// to the sample nearest the pole so a flat cut is not mistaken for a lobe
// clipped at the horizon.
std::size_t cut_argmax(const CompositeCut& cut)
{
    double best = *std::max_element(cut.mag_db.begin(), cut.mag_db.end());
    std::size_t pick = 0;
    double pick_s = 1e300;
    for (std::size_t i = 0; i < cut.mag_db.size(); ++i) {
        if (cut.mag_db[i] >= best - 1e-9 && std::abs(cut.s_deg[i]) < pick_s) {
            pick = i;
            pick_s = std::abs(cut.s_deg[i]);
        }
    }
    return pick;
}

CutPeak refine_cut_peak(const CompositeCut& cut, std::size_t idx)
{
    CutPeak pk{idx, cut.s_deg[idx], cut.mag_db[idx]};
    if (idx == 0 || idx + 1 == cut.s_deg.size())
        throw std::runtime_error("main lobe clipped by grid edge");
    parabolic_vertex(cut.s_deg[idx - 1], cut.mag_db[idx - 1], cut.s_deg[idx], cut.mag_db[idx],
                     cut.s_deg[idx + 1], cut.mag_db[idx + 1], pk.s_deg, pk.level_db);
    return pk;
}

// -3 dB crossing on one side; `dir` is +1 or -1. Returns the signed-theta
// coordinate of the crossing, or the cut end when the level never drops
// (legal only when the grid reaches the horizon).
double half_power_edge(const CompositeCut& cut, const CutPeak& pk, int dir, double full_theta)
{
    const double level = pk.level_db - 3.0;
    std::size_t i = pk.index;
    while (true) {
        const std::size_t next = i + dir;
        if (next >= cut.s_deg.size()) { // unsigned wrap covers both ends
            if (std::abs(cut.s_deg[i]) >= full_theta - 1e-9)
                return cut.s_deg[i];
            throw std::runtime_error("main lobe clipped by grid edge");
        }
        if (cut.mag_db[next] < level) {
            const double f =
                (level - cut.mag_db[i]) / (cut.mag_db[next] - cut.mag_db[i]);
            return cut.s_deg[i] + f * (cut.s_deg[next] - cut.s_deg[i]);
        }
        i = next;
    }
}

// First local minimum below -10 dB walking outward; cut end if none.
std::size_t main_lobe_bound(const CompositeCut& cut, std::size_t peak_idx, int dir)
{
    std::size_t i = peak_idx;
    while (true) {
        const std::size_t next = i + dir;
        if (next >= cut.s_deg.size())
            return i;
        const bool is_min = cut.mag_db[next] < -10.0 &&
                            (next + dir >= cut.s_deg.size() ||
                             cut.mag_db[next + dir] >= cut.mag_db[next]) &&
                            cut.mag_db[i] >= cut.mag_db[next];
        if (is_min)
            return next;
        i = next;
    }
}

double max_outside(const CompositeCut& cut, std::size_t lo, std::size_t hi)
{
    double m = FarFieldPattern::db_floor;
    for (std::size_t i = 0; i < lo; ++i)
        m = std::max(m, cut.mag_db[i]);
    for (std::size_t i = hi + 1; i < cut.mag_db.size(); ++i)
        m = std::max(m, cut.mag_db[i]);
    return m;
}

double hemisphere_integral(const FarFieldPattern& p)
{
    const auto& grid = p.grid;
    const std::size_t nt = grid.theta_deg.size();
    const std::size_t np = grid.phi_deg.size();
    if (np < 8)
        throw std::invalid_argument("directivity needs hemispheric phi coverage (>= 8 columns)");
    for (std::size_t j = 0; j < np; ++j) {
        const double gap = (j + 1 < np ? grid.phi_deg[j + 1] : grid.phi_deg[0] + 360.0) -
                           grid.phi_deg[j];
        if (gap > 30.0 + 1e-9)
            throw std::invalid_argument("directivity needs hemispheric phi coverage (gap > 30 deg)");
    }

    // per-column theta integral of |E|^2 sin(theta), then periodic trapezoid in phi
    std::vector<double> col(np, 0.0);
    for (std::size_t j = 0; j < np; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < nt; ++i) {
            const double t0 = deg2rad(grid.theta_deg[i]);
            const double t1 = deg2rad(grid.theta_deg[i + 1]);
            const double f0 = std::norm(p.field[i * np + j]) * std::sin(t0);
            const double f1 = std::norm(p.field[(i + 1) * np + j]) * std::sin(t1);
            acc += 0.5 * (f0 + f1) * (t1 - t0);
        }
        col[j] = acc;
    }
    double integral = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
        const std::size_t j1 = (j + 1) % np;
        const double dphi = deg2rad((j + 1 < np ? grid.phi_deg[j + 1] : grid.phi_deg[0] + 360.0) -
                                    grid.phi_deg[j]);
        integral += 0.5 * (col[j] + col[j1]) * dphi;
    }
    return integral;
}

} // namespace

PatternMetrics metrics(const FarFieldPattern& pattern)
{
    const auto& grid = pattern.grid;
    grid.validate();
    if (pattern.field.size() != grid.size() || pattern.mag_db.size() != grid.size())
        throw std::invalid_argument("pattern arrays do not match its grid");
    if (pattern.peak_index >= pattern.field.size() ||
        std::abs(pattern.field[pattern.peak_index]) == 0.0)
        throw std::runtime_error("pattern is identically zero");

    const std::size_t np = grid.phi_deg.size();
    const std::size_t peak_ip = pattern.peak_index % np;
    const std::size_t peak_it = pattern.peak_index / np;

    // principal cut through the peak
    CompositeCut cut1 = composite_cut(pattern, peak_ip);
    const CutPeak pk1 = refine_cut_peak(cut1, cut1.pole_offset + peak_it);

    // orthogonal cut; its reference is its own maximum
    const double want_phi = std::fmod(grid.phi_deg[peak_ip] + 90.0, 360.0);
    std::size_t orth_ip = 0;
    {
        bool found = false;
        for (std::size_t j = 0; j < np; ++j)
            if (std::abs(grid.phi_deg[j] - want_phi) < 1e-9) {
                orth_ip = j;
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument("pattern metrics need the phi+90 column in the grid");
    }
    CompositeCut cut2 = composite_cut(pattern, orth_ip);
    const CutPeak pk2 = refine_cut_peak(cut2, cut_argmax(cut2));

    const double full_theta = grid.theta_deg.back();

    PatternMetrics m;
    if (pk1.s_deg < 0.0) {
        m.peak_theta_deg = -pk1.s_deg;
        m.peak_phi_deg = grid.phi_deg[mirror_phi_column(grid, peak_ip)];
    } else {
        m.peak_theta_deg = pk1.s_deg;
        m.peak_phi_deg = grid.phi_deg[peak_ip];
    }

    m.beamwidth_cut1_deg = half_power_edge(cut1, pk1, +1, full_theta) -
                           half_power_edge(cut1, pk1, -1, full_theta);
    m.beamwidth_cut2_deg = half_power_edge(cut2, pk2, +1, full_theta) -
                           half_power_edge(cut2, pk2, -1, full_theta);

    const std::size_t lo1 = main_lobe_bound(cut1, pk1.index, -1);
    const std::size_t hi1 = main_lobe_bound(cut1, pk1.index, +1);
    const std::size_t lo2 = main_lobe_bound(cut2, pk2.index, -1);
    const std::size_t hi2 = main_lobe_bound(cut2, pk2.index, +1);
    m.sidelobe_level_db = std::max(max_outside(cut1, lo1, hi1), max_outside(cut2, lo2, hi2));

    const double integral = hemisphere_integral(pattern);
    const double peak_power = std::norm(pattern.field[pattern.peak_index]);
    m.directivity_dbi = 10.0 * std::log10(4.0 * pi * peak_power / integral);
    return m;
}

namespace {

std::vector<double> refined_theta_list(const std::vector<double>& coarse, double center,
                                       const HemisphereOptions& options)
{
    std::vector<double> t = coarse;
    const double lo = std::max(0.0, center - options.refine_halfspan_deg);
    const double hi = std::min(90.0, center + options.refine_halfspan_deg);
    for (double v = lo; v <= hi + 1e-12; v += options.refine_step_deg)
        t.push_back(v);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-9; }),
            t.end());
    return t;
}

template <typename RadiateFn>
FarFieldPattern two_pass(RadiateFn&& run, const HemisphereOptions& options)
{
    const AngularGrid coarse =
        AngularGrid::hemisphere(options.theta_step_deg, options.phi_step_deg);
    const FarFieldPattern first = run(coarse);

    AngularGrid fine;
    fine.theta_deg = refined_theta_list(coarse.theta_deg, first.peak_theta_deg(), options);
    fine.phi_deg = coarse.phi_deg;
    return run(fine);
}

} // namespace

FarFieldPattern hemisphere_pattern(const ArrayLayout& layout, const UnitCellModel& cell,
                                   const IlluminationModel& illum, const CodeMatrix& code,
                                   double freq_hz, const HemisphereOptions& options)
{
    return two_pass(
        [&](const AngularGrid& g) { return radiate(layout, cell, illum, code, freq_hz, g); },
        options);
}

FarFieldPattern hemisphere_pattern_continuous(const ArrayLayout& layout,
                                              const UnitCellModel& cell,
                                              const IlluminationModel& illum,
                                              const PhaseMatrix& phases, double freq_hz,
                                              const HemisphereOptions& options)
{
    return two_pass(
        [&](const AngularGrid& g) {
            return radiate_continuous(layout, cell, illum, phases, freq_hz, g);
        },
        options);
}

std::string pattern_csv(const FarFieldPattern& pattern)
{
    std::string out = "theta_deg,phi_deg,mag_db,real,imag\n";
    const std::size_t np = pattern.grid.phi_deg.size();
    for (std::size_t i = 0; i < pattern.field.size(); ++i) {
        out += io::fmt_fixed(pattern.grid.theta_deg[i / np], 4);
        out += ',';
        out += io::fmt_fixed(pattern.grid.phi_deg[i % np], 4);
        out += ',';
        out += io::fmt_fixed(pattern.mag_db[i], 6);
        out += ',';
        out += io::fmt_sci(pattern.field[i].real(), 10);
        out += ',';
        out += io::fmt_sci(pattern.field[i].imag(), 10);
        out += '\n';
    }
    return out;
}

std::string metrics_text(const PatternMetrics& m)
{
    std::string out;
    out += "# directivity convention: forward hemisphere (theta 0..90 deg)\n";
    out += "peak_theta_deg = " + io::fmt_fixed(m.peak_theta_deg, 4) + "\n";
    out += "peak_phi_deg = " + io::fmt_fixed(m.peak_phi_deg, 4) + "\n";
    out += "beamwidth_cut1_deg = " + io::fmt_fixed(m.beamwidth_cut1_deg, 4) + "\n";
    out += "beamwidth_cut2_deg = " + io::fmt_fixed(m.beamwidth_cut2_deg, 4) + "\n";
    out += "sidelobe_level_db = " + io::fmt_fixed(m.sidelobe_level_db, 4) + "\n";
    out += "directivity_dbi = " + io::fmt_fixed(m.directivity_dbi, 4) + "\n";
    return out;
}

} // namespace ris
