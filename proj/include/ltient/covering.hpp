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
 * Parameters of the explicit eps-covering of C(a,b).
 *
 *   last_slot = floor( ln(2a / (eps (1 - e^{-b}))) / b )     (C2)
 *   delta     = eps / (C2 + 1)
 *   counts[t] = ceil(2 a e^{-bt} / delta),  t = 0..C2
 *
 * Evaluation order is fixed so the decoder re-derives identical values from
 * (a, b, eps): 1 - e^{-b} is computed as -expm1(-b), the floor/ceil
 * arguments pass through snap_near_integer(), and envelopes come from
 * envelope().
 */
struct CoveringParams {
    double eps = 0.0;
    std::size_t last_slot = 0; // C2
    double delta = 0.0;
    std::vector<std::uint64_t> counts;

    std::size_t slots() const noexcept { return counts.size(); }
};

/// Throws std::invalid_argument unless 0 < eps < a.
CoveringParams covering_params(const DecayClass &cls, double eps);

/**
 * Grid map f_t(i) = min(-a e^{-bt} - delta/2 + i delta, a e^{-bt}) for the
 * 1-based grid index i in {1, ..., n_t} with n_t = ceil(2 a e^{-bt} / delta).
 * Throws std::out_of_range for other i.
 */
double grid_point(const DecayClass &cls, double delta, std::size_t t, std::uint64_t i);

/**
 * Covering element for an index whose digit d_t selects grid index
 * i_t = d_t + 1, i.e. the radices of `idx` are the counts n_t.
 */
ImpulseResponse covering_element(const CoveringParams &params, const DecayClass &cls, const MixedRadixIndex &idx);

/**
 * Nearest grid point per slot t <= C2 (ties go to the smaller index);
 * coefficients beyond C2 are dropped. Each slot error is at most delta/2.
 * Throws NonMemberError when k is not in the class.
 */
MixedRadixIndex quantize(const CoveringParams &params, const DecayClass &cls, const ImpulseResponse &k);

/// a e^{-b (C2+1)} / (1 - e^{-b}): l1 mass any member can carry past slot C2.
double tail_bound(const DecayClass &cls, std::size_t last_slot);

/**
 * Upper bound on rho(k, reconstruction): the l1 distance on slots 0..C2
 * plus tail_bound(). Valid for every member k because the H-infinity
 * distance never exceeds the l1 distance of the coefficients.
 */
double certified_distortion(const CoveringParams &params, const DecayClass &cls, const ImpulseResponse &k,
                            const ImpulseResponse &reconstruction);

/// Slack allowed for round-off when comparing a certified distortion to eps.
double certification_limit(const CoveringParams &params);

struct CoverReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    double worst_certified = 0.0;
    double worst_slot_error = 0.0;
    double tail = 0.0;

    bool ok() const noexcept { return violations == 0; }
};

/**
 * Quantizes `samples` random members (support C2 + 10, member j drawn with
 * seed + j) and certifies each reconstruction within eps.
 */
CoverReport verify_cover(const CoveringParams &params, const DecayClass &cls, double eps, std::uint64_t samples,
                         std::uint64_t seed);

double covering_log2_cardinality(const CoveringParams &params);
BigUint covering_cardinality_exact(const CoveringParams &params);

/// Constants of the closed-form covering bound.
struct KConstants {
    double k1 = 0.0; // (1/b) ln(2 / (1 - e^{-b}))
    double k2 = 0.0; // -(gamma b / 2) k1 + gamma b / 2 + 2
    double k3 = 0.0; // k1 + 1
    double k4 = 0.0; // k2 / b + (gamma / 2) k3
    double k5 = 0.0; // (gamma / b) ln a + gamma k3
    double k6 = 0.0; // k4 ln a + k3 k2
};

KConstants k_constants(const DecayClass &cls);

/**
 * gamma/(2b) ln^2(a/eps) + (gamma/b) ln(1/eps) ln(C2+1) + K4 ln(1/eps)
 *   + K5 ln(C2+1) + K6,   gamma = log2(e).
 */
double covering_upper_bound(const DecayClass &cls, double eps);

} // namespace ltient
