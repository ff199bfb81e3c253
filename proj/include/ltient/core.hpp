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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ltient {

using BigUint = boost::multiprecision::cpp_int;

/// log2(e), the nat-to-bit conversion factor.
inline constexpr double kLog2E = std::numbers::log2e_v<double>;

/**
 * The class C(a,b) of causal discrete-time LTI systems whose impulse
 * responses obey |k[t]| <= a * exp(-b t) for every t >= 0.
 *
 * Membership is taken coefficient-wise against that envelope. Both
 * parameters must be positive and finite; the constructor throws
 * std::invalid_argument otherwise.
 */
class DecayClass {
  public:
    DecayClass(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    bool operator==(const DecayClass &) const = default;

  private:
    double a_;
    double b_;
};

/**
 * Finite-support one-sided real sequence indexed t = 0..size()-1.
 *
 * Values outside the stored support (t < 0 or t >= size()) are zero. The
 * tag parameter keeps impulse responses and input signals distinct types.
 */
template <typename Tag> class OneSidedSequence {
  public:
    OneSidedSequence() = default;
    explicit OneSidedSequence(std::vector<double> values) : values_(std::move(values)) {}
    OneSidedSequence(std::initializer_list<double> values) : values_(values) {}

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    /// Zero beyond the stored support.
    double at(std::size_t t) const noexcept { return t < values_.size() ? values_[t] : 0.0; }
    double operator[](std::size_t t) const noexcept { return at(t); }

    std::span<const double> coeffs() const & noexcept { return values_; }
    std::span<const double> coeffs() const && = delete;
    const std::vector<double> &values() const noexcept { return values_; }

    bool operator==(const OneSidedSequence &) const = default;

  private:
    std::vector<double> values_;
};

struct ImpulseResponseTag {};
struct SignalTag {};

using ImpulseResponse = OneSidedSequence<ImpulseResponseTag>;
using Signal = OneSidedSequence<SignalTag>;

/// k - k2, padded to the longer support.
ImpulseResponse difference(const ImpulseResponse &k, const ImpulseResponse &k2);

/// alpha * k, coefficient-wise.
ImpulseResponse scaled(const ImpulseResponse &k, double alpha);

/**
 * Tuple of per-slot digits d_t with radices r_t, 0 <= d_t < r_t.
 *
 * Slot 0 is the least significant position of the packed integer
 *   v = sum_t d_t * prod_{s<t} r_s.
 */
class MixedRadixIndex {
  public:
    MixedRadixIndex() = default;
    MixedRadixIndex(std::vector<std::uint64_t> digits, std::vector<std::uint64_t> radices);

    /// All-zero digits for the given radices.
    static MixedRadixIndex zeros(std::vector<std::uint64_t> radices);

    /// Inverse of to_integer(); throws std::out_of_range when value >= cardinality(radices).
    static MixedRadixIndex from_integer(const BigUint &value, std::vector<std::uint64_t> radices);

    /// Product of the radices (1 for an empty tuple).
    static BigUint cardinality(std::span<const std::uint64_t> radices);

    BigUint to_integer() const;

    std::size_t size() const noexcept { return digits_.size(); }
    std::uint64_t digit(std::size_t t) const { return digits_.at(t); }
    std::uint64_t radix(std::size_t t) const { return radices_.at(t); }
    const std::vector<std::uint64_t> &digits() const noexcept { return digits_; }
    const std::vector<std::uint64_t> &radices() const noexcept { return radices_; }

    /// Advances to the next tuple in packed-integer order; returns false after wrapping to zero.
    bool increment();

    bool operator==(const MixedRadixIndex &) const = default;

  private:
    std::vector<std::uint64_t> digits_;
    std::vector<std::uint64_t> radices_;
};

/// a * exp(-b t).
double envelope(const DecayClass &cls, std::size_t t);

/// An impulse response lies outside the envelope of the requested class.
class NonMemberError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// True iff |k[t]| <= envelope(t) + tol on the stored support.
bool is_member(const DecayClass &cls, const ImpulseResponse &k, double tol = 0.0);

/// Input signal convolved with the impulse response; support len(k)+len(x)-1.
Signal convolve(const ImpulseResponse &k, const Signal &x);

/**
 * splitmix64 generator (Steele, Lea & Flood). Fixed so that seeded outputs
 * are reproducible across builds and languages:
 *
 *   state += 0x9e3779b97f4a7c15
 *   z = state
 *   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
 *   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
 *   return z ^ (z >> 31)
 *
 * uniform() maps the top 53 bits to [0, 1).
 */
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    std::uint64_t operator()() noexcept { return next(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    double uniform() noexcept;
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Standard normal via Box-Muller (one draw per call, second value discarded).
    double normal() noexcept;

  private:
    std::uint64_t state_;
};

/// k[t] = envelope(t) * (2u - 1), u ~ uniform() from SplitMix64(seed), t = 0..T.
ImpulseResponse random_member(const DecayClass &cls, std::size_t T, std::uint64_t seed);

/**
 * Returns the nearest integer when y lies within 8 ulp of it, y otherwise.
 *
 * Every floor/ceil in the packing and covering parameter derivations is
 * applied to snap_near_integer(argument). An argument that is an integer in
 * exact arithmetic therefore rounds as the exact value would, instead of
 * depending on the last bits of exp/log.
 */
double snap_near_integer(double y) noexcept;

} // namespace ltient
