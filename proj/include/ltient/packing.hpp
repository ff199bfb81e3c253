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

#pragma once

#include "ltient/core.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ltient {

/**
 * Parameters of the explicit (2 eps)-packing of C(a,b).
 *
 *   last_slot = ceil(ln(a/eps) / b) - 1
 *   counts[t] = ceil(a e^{-bt} / eps) - 1         (>= 1)
 *   steps[t]  = 2 a e^{-bt} / counts[t]           (> 2 eps)
 *
 * Element digits d_t range over {0, ..., counts[t]}, so the radices of the
 * index are counts[t] + 1.
 */
struct PackingParams {
    double eps = 0.0;
    std::size_t last_slot = 0; // C1
    std::vector<std::uint64_t> counts;
    std::vector<double> steps;

    std::size_t slots() const noexcept { return counts.size(); }
    std::vector<std::uint64_t> radices() const;
};

/// Throws std::invalid_argument unless 0 < eps < a.
PackingParams packing_params(const DecayClass &cls, double eps);

/// k[t] = -a e^{-bt} + d_t * steps[t] for t <= C1, zero beyond.
ImpulseResponse packing_element(const PackingParams &params, const DecayClass &cls, const MixedRadixIndex &idx);

/// sum_t log2(1 + counts[t]).
double packing_log2_cardinality(const PackingParams &params);
BigUint packing_cardinality_exact(const PackingParams &params);

/// gamma/(2b) ln^2(a/eps) - (gamma/2) ln(a/eps) - b gamma / 2, gamma = log2(e).
double packing_lower_bound(const DecayClass &cls, double eps);

struct SeparationReport {
    bool exhaustive = false;
    std::uint64_t pairs_checked = 0;
    std::uint64_t violations = 0;
    double min_separation = 0.0; // smallest l2 distance seen
    double threshold = 0.0;      // 2 eps

    bool ok() const noexcept { return violations == 0; }
};

/// Packings up to this many elements are checked over all pairs.
inline constexpr std::uint64_t kExhaustiveSeparationLimit = 10000;

/**
 * Checks that distinct packing elements lie more than 2 eps apart in l2,
 * which lower-bounds their H-infinity distance (take the unit impulse as
 * input).
 *
 * With at most kExhaustiveSeparationLimit elements every pair is checked and
 * `pairs` is ignored. Otherwise `pairs` random distinct pairs from
 * SplitMix64(seed) are checked together with every adjacent-digit step
 * d -> d+1 in every slot; since other slots cancel exactly in the
 * difference, those steps cover all adjacent pairs.
 *
 * Violations are reported, not thrown. Throws std::invalid_argument when the
 * packing has fewer than two elements.
 */
SeparationReport verify_separation(const PackingParams &params, const DecayClass &cls, double eps,
                                   std::uint64_t pairs, std::uint64_t seed);

} // namespace ltient
