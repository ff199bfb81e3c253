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
#include "ltient/norms.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ltient {

/// A distance comparison could not be certified even at the tightest tolerance.
class UncertainDecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Relation {
    Within, // rho <= eps, certified by the interval upper end
    Beyond, // rho > eps, certified by the interval lower end
};

/**
 * Finite point set under rho with a precomputed matrix of certified
 * distance intervals. Comparisons against a threshold re-evaluate the
 * distance at tighter tolerance whenever the stored interval straddles it.
 */
class FiniteMetricSet {
  public:
    explicit FiniteMetricSet(std::vector<ImpulseResponse> points, double tol = 1e-10);

    std::size_t size() const noexcept { return points_.size(); }
    const ImpulseResponse &point(std::size_t i) const { return points_.at(i); }
    const std::vector<ImpulseResponse> &points() const noexcept { return points_; }
    const NormInterval &distance(std::size_t i, std::size_t j) const { return distances_.at(i * size() + j); }
    double tolerance() const noexcept { return tol_; }

    /// Certified comparison of rho(point i, point j) with eps.
    Relation relation(std::size_t i, std::size_t j, double eps) const;

    /// Largest certified upper distance bound.
    double diameter_upper() const noexcept;

  private:
    std::vector<ImpulseResponse> points_;
    std::vector<NormInterval> distances_;
    double tol_;
};

/// Upper limit on levels^(T+1) for discretize_class.
inline constexpr std::size_t kMaxDiscretizedPoints = 10000;
/// Upper limit on set size for the exhaustive searches.
inline constexpr std::size_t kMaxExhaustivePoints = 24;

/**
 * All responses on slots 0..T with k[t] in
 *   { -e_t + 2 j e_t / (levels - 1) : j = 0..levels-1 },  e_t = a e^{-bt}.
 * levels == 1 uses the single value 0 per slot. Points are ordered with
 * slot 0 varying fastest. Throws std::invalid_argument when levels == 0 or
 * levels^(T+1) > kMaxDiscretizedPoints.
 */
FiniteMetricSet discretize_class(const DecayClass &cls, std::size_t T, std::size_t levels, double tol = 1e-10);

/**
 * Greedy eps-packing in point order: a point is kept when it is certified
 * Beyond eps from every kept point. The result cannot be extended, so every
 * discarded point is certified Within eps of a kept one and the result is
 * also an eps-covering.
 */
std::vector<std::size_t> greedy_maximal_packing(const FiniteMetricSet &set, double eps);

/// A largest eps-packing (maximum clique of the "> eps" graph). |set| <= 24.
std::vector<std::size_t> maximum_packing(const FiniteMetricSet &set, double eps);
std::size_t exact_packing_number(const FiniteMetricSet &set, double eps);

/// A smallest eps-covering with centres in the set (minimum dominating set
/// of the "<= eps" graph). |set| <= 24.
std::vector<std::size_t> minimum_covering(const FiniteMetricSet &set, double eps);
std::size_t exact_covering_number(const FiniteMetricSet &set, double eps);

struct SandwichReport {
    double eps = 0.0;
    std::size_t packing_2eps = 0;  // M(2 eps)
    std::size_t covering_eps = 0;  // N(eps)
    std::size_t packing_eps = 0;   // M(eps)
    bool ok = false;               // M(2 eps) <= N(eps) <= M(eps)
};

SandwichReport sandwich_check(const FiniteMetricSet &set, double eps);

} // namespace ltient
