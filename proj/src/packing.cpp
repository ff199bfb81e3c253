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

#include "ltient/packing.hpp"

#include "params_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltient {

std::vector<std::uint64_t> PackingParams::radices() const
{
    std::vector<std::uint64_t> r(counts.size());
    for (std::size_t t = 0; t < counts.size(); ++t)
        r[t] = counts[t] + 1;
    return r;
}

PackingParams packing_params(const DecayClass &cls, double eps)
{
    detail::require_eps_in_range(cls, eps, "packing_params");

    PackingParams p;
    p.eps = eps;
    const double horizon = snap_near_integer(std::log(cls.a() / eps) / cls.b());
    p.last_slot = detail::checked_slots(std::ceil(horizon) - 1.0, "packing_params");

    p.counts.resize(p.last_slot + 1);
    p.steps.resize(p.last_slot + 1);
    for (std::size_t t = 0; t <= p.last_slot; ++t) {
        const double env = envelope(cls, t);
        const double ratio = snap_near_integer(env / eps);
        // ratio > 1 holds exactly for t <= C1; the clamp only absorbs round-off.
        const double count = std::max(1.0, std::ceil(ratio) - 1.0);
        p.counts[t] = detail::checked_count(count, "packing_params");
        p.steps[t] = 2.0 * env / count;
        if (!(p.steps[t] > 2.0 * eps))
            throw std::logic_error("packing_params: step does not exceed 2 eps at slot " + std::to_string(t));
    }
    return p;
}

ImpulseResponse packing_element(const PackingParams &params, const DecayClass &cls, const MixedRadixIndex &idx)
{
    if (idx.size() != params.slots())
        throw std::invalid_argument("packing_element: index length does not match C1 + 1");
    std::vector<double> k(params.slots());
    for (std::size_t t = 0; t < k.size(); ++t) {
        const std::uint64_t d = idx.digit(t);
        if (d > params.counts[t])
            throw std::out_of_range("packing_element: digit out of range at slot " + std::to_string(t));
        const double env = envelope(cls, t);
        // The top digit lands exactly on the envelope.
        k[t] = d == params.counts[t] ? env : -env + static_cast<double>(d) * params.steps[t];
    }
    return ImpulseResponse(std::move(k));
}

double packing_log2_cardinality(const PackingParams &params)
{
    double s = 0.0;
    for (std::uint64_t n : params.counts)
        s += std::log2(static_cast<double>(n) + 1.0);
    return s;
}

BigUint packing_cardinality_exact(const PackingParams &params)
{
    const auto r = params.radices();
    return MixedRadixIndex::cardinality(r);
}

double packing_lower_bound(const DecayClass &cls, double eps)
{
    detail::require_eps_in_range(cls, eps, "packing_lower_bound");
    const double L = std::log(cls.a() / eps);
    const double b = cls.b();
    return kLog2E / (2.0 * b) * L * L - kLog2E / 2.0 * L - b * kLog2E / 2.0;
}

namespace {

double l2_distance(const std::vector<double> &x, const std::vector<double> &y)
{
    double s = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double d = x[t] - y[t];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

SeparationReport verify_separation(const PackingParams &params, const DecayClass &cls, double eps,
                                   std::uint64_t pairs, std::uint64_t seed)
{
    const auto radices = params.radices();
    const BigUint card = MixedRadixIndex::cardinality(radices);
    if (card < 2)
        throw std::invalid_argument("verify_separation: packing has fewer than two elements");

    SeparationReport report;
    report.threshold = 2.0 * eps;
    report.min_separation = std::numeric_limits<double>::infinity();
    auto record = [&](double dist) {
        ++report.pairs_checked;
        report.min_separation = std::min(report.min_separation, dist);
        if (!(dist > report.threshold))
            ++report.violations;
    };

    if (card <= kExhaustiveSeparationLimit) {
        report.exhaustive = true;
        std::vector<std::vector<double>> elements;
        MixedRadixIndex idx = MixedRadixIndex::zeros(radices);
        do {
            elements.push_back(packing_element(params, cls, idx).values());
        } while (idx.increment());
        for (std::size_t i = 0; i < elements.size(); ++i)
            for (std::size_t j = i + 1; j < elements.size(); ++j)
                record(l2_distance(elements[i], elements[j]));
        return report;
    }

    // Adjacent-digit steps: other slots are identical and cancel exactly.
    for (std::size_t t = 0; t < params.slots(); ++t) {
        const double env = envelope(cls, t);
        const std::uint64_t n = params.counts[t];
        for (std::uint64_t d = 0; d < n; ++d) {
            const double lo = -env + static_cast<double>(d) * params.steps[t];
            const double hi = d + 1 == n ? env : -env + static_cast<double>(d + 1) * params.steps[t];
            record(std::fabs(hi - lo));
        }
    }

    SplitMix64 rng(seed);
    auto draw = [&] {
        std::vector<std::uint64_t> digits(radices.size());
        for (std::size_t t = 0; t < radices.size(); ++t)
            digits[t] = rng.below(radices[t]);
        return MixedRadixIndex(std::move(digits), radices);
    };
    for (std::uint64_t p = 0; p < pairs; ++p) {
        const MixedRadixIndex x = draw();
        MixedRadixIndex y = draw();
        while (y == x)
            y = draw();
        record(l2_distance(packing_element(params, cls, x).values(), packing_element(params, cls, y).values()));
    }
    return report;
}

} // namespace ltient
