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

#include "ltient/covering.hpp"

#include "params_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ltient {

namespace {

std::uint64_t slot_count(const DecayClass &cls, double delta, std::size_t t)
{
    return detail::checked_count(std::ceil(snap_near_integer(2.0 * envelope(cls, t) / delta)), "covering_params");
}

double grid_value(double env, double delta, std::uint64_t i)
{
    return std::min(-env - 0.5 * delta + static_cast<double>(i) * delta, env);
}

} // namespace

CoveringParams covering_params(const DecayClass &cls, double eps)
{
    detail::require_eps_in_range(cls, eps, "covering_params");
    const double one_minus = -std::expm1(-cls.b());
    const double horizon = snap_near_integer(std::log(2.0 * cls.a() / (eps * one_minus)) / cls.b());

    CoveringParams p;
    p.eps = eps;
    p.last_slot = detail::checked_slots(std::floor(horizon), "covering_params");
    p.delta = eps / static_cast<double>(p.last_slot + 1);
    p.counts.resize(p.last_slot + 1);
    for (std::size_t t = 0; t <= p.last_slot; ++t)
        p.counts[t] = slot_count(cls, p.delta, t);
    return p;
}

double grid_point(const DecayClass &cls, double delta, std::size_t t, std::uint64_t i)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("grid_point: delta must be positive");
    const std::uint64_t n = slot_count(cls, delta, t);
    if (i < 1 || i > n)
        throw std::out_of_range("grid_point: index " + std::to_string(i) + " outside {1, ..., " + std::to_string(n) +
                                "}");
    return grid_value(envelope(cls, t), delta, i);
}

ImpulseResponse covering_element(const CoveringParams &params, const DecayClass &cls, const MixedRadixIndex &idx)
{
    if (idx.size() != params.slots())
        throw std::invalid_argument("covering_element: index length does not match C2 + 1");
    std::vector<double> k(params.slots());
    for (std::size_t t = 0; t < k.size(); ++t) {
        const std::uint64_t i = idx.digit(t) + 1;
        if (i > params.counts[t])
            throw std::out_of_range("covering_element: digit out of range at slot " + std::to_string(t));
        k[t] = grid_value(envelope(cls, t), params.delta, i);
    }
    return ImpulseResponse(std::move(k));
}

MixedRadixIndex quantize(const CoveringParams &params, const DecayClass &cls, const ImpulseResponse &k)
{
    if (!is_member(cls, k, 0.0))
        throw NonMemberError("quantize: impulse response is not a member of C(a,b)");

    std::vector<std::uint64_t> digits(params.slots());
    for (std::size_t t = 0; t < params.slots(); ++t) {
        const double env = envelope(cls, t);
        const double x = k.at(t);
        const std::uint64_t n = params.counts[t];
        // The grid is increasing; the nearest point sits within two of the
        // continuous estimate, so a short scan settles it and breaks ties low.
        const double guess = std::nearbyint((x + env + 0.5 * params.delta) / params.delta);
        const double lo_d = std::clamp(guess - 2.0, 1.0, static_cast<double>(n));
        const double hi_d = std::clamp(guess + 2.0, 1.0, static_cast<double>(n));
        std::uint64_t best = static_cast<std::uint64_t>(lo_d);
        double best_err = std::numeric_limits<double>::infinity();
        for (auto i = static_cast<std::uint64_t>(lo_d); i <= static_cast<std::uint64_t>(hi_d); ++i) {
            const double err = std::fabs(x - grid_value(env, params.delta, i));
            if (err < best_err) {
                best_err = err;
                best = i;
            }
        }
        digits[t] = best - 1;
    }
    return MixedRadixIndex(std::move(digits), params.counts);
}

double tail_bound(const DecayClass &cls, std::size_t last_slot)
{
    return envelope(cls, last_slot + 1) / -std::expm1(-cls.b());
}

double certified_distortion(const CoveringParams &params, const DecayClass &cls, const ImpulseResponse &k,
                            const ImpulseResponse &reconstruction)
{
    double s = 0.0;
    for (std::size_t t = 0; t < params.slots(); ++t)
        s += std::fabs(k.at(t) - reconstruction.at(t));
    return s + tail_bound(cls, params.last_slot);
}

double certification_limit(const CoveringParams &params)
{
    const double u = std::numeric_limits<double>::epsilon();
    return params.eps * (1.0 + 4.0 * static_cast<double>(params.slots() + 2) * u);
}

CoverReport verify_cover(const CoveringParams &params, const DecayClass &cls, double eps, std::uint64_t samples,
                         std::uint64_t seed)
{
    if (eps != params.eps)
        throw std::invalid_argument("verify_cover: eps does not match the covering parameters");
    CoverReport report;
    report.tail = tail_bound(cls, params.last_slot);
    const double limit = certification_limit(params);
    for (std::uint64_t j = 0; j < samples; ++j) {
        const ImpulseResponse k = random_member(cls, params.last_slot + 10, seed + j);
        const ImpulseResponse rec = covering_element(params, cls, quantize(params, cls, k));
        for (std::size_t t = 0; t < params.slots(); ++t)
            report.worst_slot_error = std::max(report.worst_slot_error, std::fabs(k.at(t) - rec.at(t)));
        const double d = certified_distortion(params, cls, k, rec);
        report.worst_certified = std::max(report.worst_certified, d);
        ++report.samples;
        if (!(d <= limit))
            ++report.violations;
    }
    return report;
}

double covering_log2_cardinality(const CoveringParams &params)
{
    double s = 0.0;
    for (std::uint64_t n : params.counts)
        s += std::log2(static_cast<double>(n));
    return s;
}

BigUint covering_cardinality_exact(const CoveringParams &params)
{
    return MixedRadixIndex::cardinality(params.counts);
}

KConstants k_constants(const DecayClass &cls)
{
    const double a = cls.a();
    const double b = cls.b();
    const double g = kLog2E;
    KConstants k;
    k.k1 = std::log(2.0 / -std::expm1(-b)) / b;
    k.k2 = -(g * b / 2.0) * k.k1 + g * b / 2.0 + 2.0;
    k.k3 = k.k1 + 1.0;
    k.k4 = k.k2 / b + (g / 2.0) * k.k3;
    k.k5 = (g / b) * std::log(a) + g * k.k3;
    k.k6 = k.k4 * std::log(a) + k.k3 * k.k2;
    return k;
}

double covering_upper_bound(const DecayClass &cls, double eps)
{
    const CoveringParams p = covering_params(cls, eps);
    const KConstants k = k_constants(cls);
    const double g = kLog2E;
    const double b = cls.b();
    const double L = std::log(cls.a() / eps);
    const double inv = std::log(1.0 / eps);
    const double lc = std::log(static_cast<double>(p.last_slot + 1));
    return g / (2.0 * b) * L * L + (g / b) * inv * lc + k.k4 * inv + k.k5 * lc + k.k6;
}

} // namespace ltient
