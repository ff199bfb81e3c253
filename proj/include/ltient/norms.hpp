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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace ltient {

/// Certified enclosure lower <= value <= upper of a nonnegative quantity.
struct NormInterval {
    double lower = 0.0;
    double upper = 0.0;

    NormInterval() = default;
    NormInterval(double lo, double hi);

    double width() const noexcept { return upper - lower; }
    bool contains(double v, double slack = 0.0) const noexcept
    {
        return lower - slack <= v && v <= upper + slack;
    }
};

/// The requested enclosure width could not be reached within the grid cap.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

double l1_norm(const ImpulseResponse &k);
double l2_norm(const ImpulseResponse &k);

/// sum_t k[t] z^t by Horner's scheme; |z| must not exceed 1.
std::complex<double> zeval(const ImpulseResponse &k, std::complex<double> z);

/// H2 norm of the transfer function. Equal to the l2 norm of the coefficients.
double h2_norm(const ImpulseResponse &k);

/// sqrt((1/2pi) * integral |K(r e^{i theta})|^2 d theta) by the periodic
/// trapezoid rule on n_theta points. Validation route for h2_norm.
double h2_norm_radial(const ImpulseResponse &k, double r, std::size_t n_theta);

struct HinfOptions {
    std::size_t initial_points = 64;
    std::size_t max_points = std::size_t{1} << 24;
};

/**
 * Certified enclosure of the H-infinity norm sup_{|z|<1} |K(z)|.
 *
 * For a finite impulse response K is a polynomial, so by the maximum
 * modulus principle the supremum over the open disk equals the maximum of
 * |K(e^{i theta})| on the unit circle. The circle starts as initial_points
 * equal cells; the largest sampled value m gives the lower end. A cell of
 * width w whose end values have maximum v is bounded by the least of
 *
 *   v + w * L1' / 2              L1' = sum t |k[t]| bounds |dK/d theta|
 *   sqrt(v^2 + M2 w^2 / 8)       M2 = 2 (L2' * l1 + L1'^2) bounds |d^2|K|^2 / d theta^2|,
 *                                L2' = sum t^2 |k[t]|; an interior maximiser
 *                                is a critical point within w/2 of an end
 *   l1_norm(k)
 *
 * Cells whose bound is within tol of the current lower end are retired;
 * the rest are bisected. The upper end is the largest retired bound.
 * Evaluation round-off is bounded by a multiple of the unit roundoff times
 * l1_norm(k) and widens both ends.
 *
 * Throws std::invalid_argument for tol <= 0 and ConvergenceError when more
 * than options.max_points evaluations would be needed.
 *
 * The Hardy-space setting assumes transforms of bounded one-sided sequences;
 * with finite support there are no boundary-value subtleties.
 */
NormInterval hinf_norm(const ImpulseResponse &k, double tol, const HinfOptions &options = {});

/// rho(k, k2) = ||K - K2||_Hinf as a certified interval.
NormInterval rho(const ImpulseResponse &k, const ImpulseResponse &k2, double tol,
                 const HinfOptions &options = {});

/// ||d * x||_2 / ||x||_2 for a nonzero input x.
double response_gain(const ImpulseResponse &d, const Signal &x);

/**
 * Lower estimate of the induced l2 operator norm of k - k2:
 * the best gain over the unit impulse and `trials` random Gaussian inputs
 * (length 4 * support + 16) drawn from SplitMix64(seed).
 */
double opnorm_lower(const ImpulseResponse &k, const ImpulseResponse &k2, std::size_t trials,
                    std::uint64_t seed);

} // namespace ltient
