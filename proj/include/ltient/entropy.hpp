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
#include <span>
#include <vector>

namespace ltient {

/// gamma = log2(e) = 1 / ln 2.
double gamma_const() noexcept;

/// Leading coefficient gamma / (2b) of the metric entropy in ln^2(a/eps).
double rate_coefficient(double b) noexcept;

/**
 * The coefficient 1/b that has circulated in the literature for the same
 * rate. It overstates the entropy by the factor 2 / gamma = 2 ln 2 ~ 1.386;
 * rate_coefficient() is the correct value. Kept only so callers comparing
 * against the old figure can quantify the gap.
 */
double uncorrected_rate_coefficient(double b) noexcept;

/// gamma / (2b) * ln^2(a/eps). Throws std::invalid_argument unless 0 < eps < a.
double asymptotic_rate(const DecayClass &cls, double eps);

/**
 * Constructive bracket on the metric entropy H(eps) = log2 N(eps).
 *
 * The true minimal covering number is not computed: log2_packing comes from
 * the explicit (2 eps)-packing and log2_covering from the explicit
 * eps-covering, so closed_form_lower <= log2_packing <= H(eps) <=
 * log2_covering <= closed_form_upper.
 */
struct EntropyReport {
    double eps = 0.0;
    std::size_t packing_last_slot = 0;  // C1
    std::size_t covering_last_slot = 0; // C2
    double log2_packing = 0.0;
    double log2_covering = 0.0;
    double closed_form_lower = 0.0;
    double closed_form_upper = 0.0;
    double asymptotic = 0.0;
    double ratio_lower = 0.0; // log2_packing / asymptotic
    double ratio_upper = 0.0; // log2_covering / asymptotic

    /// The bracket orderings above, evaluated on the computed numbers.
    bool ordered() const noexcept;
};

EntropyReport entropy_report(const DecayClass &cls, double eps);

/// eps values log-spaced from start to stop inclusive (points >= 1).
std::vector<double> log_sweep(double start, double stop, std::size_t points);

struct RemainderPoint {
    double eps = 0.0;
    double remainder = 0.0; // max(|log2_covering - rate|, |log2_packing - rate|)
    double scale = 0.0;     // ln(1/eps) ln(ln(1/eps)); not positive when eps >= 1/e
    double constant = 0.0;  // remainder / scale
    bool applicable = false;
};

/**
 * Fits the remainder of the entropy expansion against
 * ln(1/eps) ln ln(1/eps).
 *
 * fitted_constant is the smallest C with remainder <= C * scale at every
 * applicable point. stability is max/min of the per-point constants over the
 * tail (smaller-eps half) of the applicable points; ok requires at least one
 * applicable point and stability <= 2.
 */
struct RemainderReport {
    std::vector<RemainderPoint> points;
    double fitted_constant = 0.0;
    double stability = 0.0;
    bool ok = false;
};

RemainderReport big_o_remainder_check(const DecayClass &cls, std::span<const double> sweep);

} // namespace ltient
