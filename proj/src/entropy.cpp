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

#include "ltient/entropy.hpp"

#include "ltient/covering.hpp"
#include "ltient/packing.hpp"
#include "params_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltient {

double gamma_const() noexcept
{
    return kLog2E;
}

double rate_coefficient(double b) noexcept
{
    return kLog2E / (2.0 * b);
}

double uncorrected_rate_coefficient(double b) noexcept
{
    return 1.0 / b;
}

double asymptotic_rate(const DecayClass &cls, double eps)
{
    detail::require_eps_in_range(cls, eps, "asymptotic_rate");
    const double L = std::log(cls.a() / eps);
    return rate_coefficient(cls.b()) * L * L;
}

bool EntropyReport::ordered() const noexcept
{
    return closed_form_lower <= log2_packing && log2_packing <= log2_covering && log2_covering <= closed_form_upper;
}

EntropyReport entropy_report(const DecayClass &cls, double eps)
{
    const PackingParams pack = packing_params(cls, eps);
    const CoveringParams cover = covering_params(cls, eps);
    EntropyReport r;
    r.eps = eps;
    r.packing_last_slot = pack.last_slot;
    r.covering_last_slot = cover.last_slot;
    r.log2_packing = packing_log2_cardinality(pack);
    r.log2_covering = covering_log2_cardinality(cover);
    r.closed_form_lower = packing_lower_bound(cls, eps);
    r.closed_form_upper = covering_upper_bound(cls, eps);
    r.asymptotic = asymptotic_rate(cls, eps);
    r.ratio_lower = r.log2_packing / r.asymptotic;
    r.ratio_upper = r.log2_covering / r.asymptotic;
    return r;
}

std::vector<double> log_sweep(double start, double stop, std::size_t points)
{
    if (points == 0)
        throw std::invalid_argument("log_sweep: need at least one point");
    if (!(start > 0.0 && stop > 0.0))
        throw std::invalid_argument("log_sweep: endpoints must be positive");
    if (points == 1)
        return {start};
    std::vector<double> out(points);
    const double ls = std::log10(start);
    const double step = (std::log10(stop) - ls) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = std::pow(10.0, ls + step * static_cast<double>(i));
    // Pin the endpoints so a sweep "1e-1:1e-8" contains those exact values.
    out.front() = start;
    out.back() = stop;
    return out;
}

RemainderReport big_o_remainder_check(const DecayClass &cls, std::span<const double> sweep)
{
    if (sweep.empty())
        throw std::invalid_argument("big_o_remainder_check: empty sweep");
    RemainderReport out;
    for (double eps : sweep) {
        const EntropyReport r = entropy_report(cls, eps);
        RemainderPoint p;
        p.eps = eps;
        p.remainder = std::max(std::fabs(r.log2_covering - r.asymptotic), std::fabs(r.log2_packing - r.asymptotic));
        const double inv = std::log(1.0 / eps);
        p.scale = inv > 0.0 ? inv * std::log(inv) : 0.0;
        p.applicable = p.scale > 0.0;
        p.constant = p.applicable ? p.remainder / p.scale : 0.0;
        out.points.push_back(p);
    }

    std::vector<RemainderPoint> usable;
    for (const auto &p : out.points)
        if (p.applicable)
            usable.push_back(p);
    if (usable.empty())
        return out;
    std::sort(usable.begin(), usable.end(), [](const auto &x, const auto &y) { return x.eps > y.eps; });

    for (const auto &p : usable)
        out.fitted_constant = std::max(out.fitted_constant, p.constant);
    const std::size_t tail_begin = usable.size() / 2;
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (std::size_t i = tail_begin; i < usable.size(); ++i) {
        cmin = std::min(cmin, usable[i].constant);
        cmax = std::max(cmax, usable[i].constant);
    }
    out.stability = cmin > 0.0 ? cmax / cmin : (cmax == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    out.ok = std::isfinite(out.fitted_constant) && out.stability <= 2.0;
    return out;
}

} // namespace ltient
