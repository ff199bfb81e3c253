// SPDX-License-Identifier: Apache-2.0
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

#include "ltient/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ltient {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

// |K(e^{i theta})| with real arithmetic Horner.
double modulus_on_circle(std::span<const double> c, double theta)
{
    const double zr = std::cos(theta);
    const double zi = std::sin(theta);
    double re = 0.0, im = 0.0;
    for (std::size_t t = c.size(); t-- > 0;) {
        const double nr = re * zr - im * zi + c[t];
        const double ni = re * zi + im * zr;
        re = nr;
        im = ni;
    }
    return std::hypot(re, im);
}

} // namespace

NormInterval::NormInterval(double lo, double hi) : lower(lo), upper(hi)
{
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw std::invalid_argument("NormInterval: bounds must be finite");
    if (lo < 0.0 || lo > hi)
        throw std::invalid_argument("NormInterval: require 0 <= lower <= upper");
}

double l1_norm(const ImpulseResponse &k)
{
    double s = 0.0;
    for (double v : k.coeffs())
        s += std::fabs(v);
    return s;
}

double l2_norm(const ImpulseResponse &k)
{
    double s = 0.0;
    for (double v : k.coeffs())
        s += v * v;
    return std::sqrt(s);
}

std::complex<double> zeval(const ImpulseResponse &k, std::complex<double> z)
{
    // A point computed as polar(1, theta) may land an ulp outside the circle.
    if (std::abs(z) > 1.0 + 4.0 * std::numeric_limits<double>::epsilon())
        throw std::domain_error("zeval: |z| must not exceed 1");
    std::complex<double> acc = 0.0;
    const auto c = k.coeffs();
    for (std::size_t t = c.size(); t-- > 0;)
        acc = acc * z + c[t];
    return acc;
}

double h2_norm(const ImpulseResponse &k)
{
    return l2_norm(k);
}

double h2_norm_radial(const ImpulseResponse &k, double r, std::size_t n_theta)
{
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("h2_norm_radial: radius must lie in (0, 1]");
    if (n_theta == 0)
        throw std::invalid_argument("h2_norm_radial: need at least one quadrature node");
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n_theta);
    double sum = 0.0;
    for (std::size_t j = 0; j < n_theta; ++j) {
        const auto v = zeval(k, std::polar(r, static_cast<double>(j) * h));
        sum += std::norm(v);
    }
    return std::sqrt(sum / static_cast<double>(n_theta));
}

NormInterval hinf_norm(const ImpulseResponse &k, double tol, const HinfOptions &options)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("hinf_norm: tol must be positive");
    const auto c = k.coeffs();

    std::size_t last = c.size();
    while (last > 0 && c[last - 1] == 0.0)
        --last;
    if (last == 0)
        return {0.0, 0.0};
    if (last == 1)
        return {std::fabs(c[0]), std::fabs(c[0])};
    const auto poly = c.first(last);

    double l1 = 0.0, slope = 0.0, curvature = 0.0;
    for (std::size_t t = 0; t < poly.size(); ++t) {
        const double m = std::fabs(poly[t]);
        const double td = static_cast<double>(t);
        l1 += m;
        slope += td * m;
        curvature += td * td * m;
    }
    const double n = static_cast<double>(poly.size());
    // Round-off in cos/sin, Horner and hypot, generously bounded.
    const double eval_err = (8.0 * n + 16.0) * kUnitRoundoff * l1 + 4.0 * kUnitRoundoff * slope;
    const double l1_cap = l1 * (1.0 + (n + 2.0) * kUnitRoundoff);
    const double second = 2.0 * (curvature * l1 + slope * slope);

    // Bound on |K| over a cell of the given width whose end values are known.
    auto cell_upper = [&](double end_max, double width) {
        const double m_hi = end_max + eval_err;
        const double w = width * (1.0 + 1e-12) + 32.0 * kUnitRoundoff;
        const double lipschitz = m_hi + 0.5 * w * slope;
        const double quadratic = std::sqrt(m_hi * m_hi + second * w * w / 8.0) * (1.0 + 4.0 * kUnitRoundoff);
        return std::min({lipschitz, quadratic, l1_cap});
    };

    struct Cell {
        double left, width, v_left, v_right;
    };
    const std::size_t initial = std::max<std::size_t>(options.initial_points, 4);
    const double h0 = 2.0 * std::numbers::pi / static_cast<double>(initial);
    std::vector<double> nodes(initial + 1);
    for (std::size_t j = 0; j < initial; ++j)
        nodes[j] = modulus_on_circle(poly, static_cast<double>(j) * h0);
    nodes[initial] = nodes[0];
    std::size_t evaluations = initial;
    double grid_max = *std::max_element(nodes.begin(), nodes.end());

    std::vector<Cell> active(initial);
    for (std::size_t j = 0; j < initial; ++j)
        active[j] = {static_cast<double>(j) * h0, h0, nodes[j], nodes[j + 1]};

    double upper = 0.0;
    std::vector<Cell> next;
    while (!active.empty()) {
        const double lower = std::max(0.0, grid_max - eval_err);
        next.clear();
        for (const Cell &c : active) {
            const double u = cell_upper(std::max(c.v_left, c.v_right), c.width);
            if (u - lower <= tol) {
                upper = std::max(upper, u);
                continue;
            }
            if (evaluations >= options.max_points)
                throw ConvergenceError("hinf_norm: tolerance " + std::to_string(tol) + " not reached within " +
                                       std::to_string(options.max_points) + " evaluations");
            const double half = 0.5 * c.width;
            const double v_mid = modulus_on_circle(poly, c.left + half);
            ++evaluations;
            grid_max = std::max(grid_max, v_mid);
            next.push_back({c.left, half, c.v_left, v_mid});
            next.push_back({c.left + half, half, v_mid, c.v_right});
        }
        active.swap(next);
    }
    const double lower = std::min(std::max(0.0, grid_max - eval_err), upper);
    return {lower, upper};
}

NormInterval rho(const ImpulseResponse &k, const ImpulseResponse &k2, double tol, const HinfOptions &options)
{
    return hinf_norm(difference(k, k2), tol, options);
}

double response_gain(const ImpulseResponse &d, const Signal &x)
{
    double xs = 0.0;
    for (double v : x.coeffs())
        xs += v * v;
    if (!(xs > 0.0))
        throw std::invalid_argument("response_gain: input signal must be nonzero");
    const Signal y = convolve(d, x);
    double ys = 0.0;
    for (double v : y.coeffs())
        ys += v * v;
    return std::sqrt(ys / xs);
}

double opnorm_lower(const ImpulseResponse &k, const ImpulseResponse &k2, std::size_t trials, std::uint64_t seed)
{
    if (trials == 0)
        throw std::invalid_argument("opnorm_lower: trials must be positive");
    const ImpulseResponse d = difference(k, k2);
    // x = unit impulse: the gain is ||d||_2.
    double best = l2_norm(d);
    SplitMix64 rng(seed);
    const std::size_t len = 4 * d.size() + 16;
    std::vector<double> x(len);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (double &v : x)
            v = rng.normal();
        best = std::max(best, response_gain(d, Signal(x)));
    }
    return best;
}

} // namespace ltient
