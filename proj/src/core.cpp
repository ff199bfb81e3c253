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

#include "ltient/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ltient {

DecayClass::DecayClass(double a, double b) : a_(a), b_(b)
{
    if (!(std::isfinite(a) && a > 0.0))
        throw std::invalid_argument("DecayClass: a must be positive and finite, got " + std::to_string(a));
    if (!(std::isfinite(b) && b > 0.0))
        throw std::invalid_argument("DecayClass: b must be positive and finite, got " + std::to_string(b));
}

ImpulseResponse difference(const ImpulseResponse &k, const ImpulseResponse &k2)
{
    std::vector<double> out(std::max(k.size(), k2.size()));
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = k.at(t) - k2.at(t);
    return ImpulseResponse(std::move(out));
}

ImpulseResponse scaled(const ImpulseResponse &k, double alpha)
{
    std::vector<double> out(k.values());
    for (double &v : out)
        v *= alpha;
    return ImpulseResponse(std::move(out));
}

// ---- MixedRadixIndex ---------------------------------------------------

MixedRadixIndex::MixedRadixIndex(std::vector<std::uint64_t> digits, std::vector<std::uint64_t> radices)
    : digits_(std::move(digits)), radices_(std::move(radices))
{
    if (digits_.size() != radices_.size())
        throw std::invalid_argument("MixedRadixIndex: digits and radices differ in length");
    for (std::size_t t = 0; t < digits_.size(); ++t) {
        if (radices_[t] == 0)
            throw std::invalid_argument("MixedRadixIndex: radix must be positive at slot " + std::to_string(t));
        if (digits_[t] >= radices_[t])
            throw std::out_of_range("MixedRadixIndex: digit " + std::to_string(digits_[t]) +
                                    " out of range for radix " + std::to_string(radices_[t]) + " at slot " +
                                    std::to_string(t));
    }
}

MixedRadixIndex MixedRadixIndex::zeros(std::vector<std::uint64_t> radices)
{
    std::vector<std::uint64_t> digits(radices.size(), 0);
    return MixedRadixIndex(std::move(digits), std::move(radices));
}

BigUint MixedRadixIndex::cardinality(std::span<const std::uint64_t> radices)
{
    BigUint product = 1;
    for (std::uint64_t r : radices)
        product *= r;
    return product;
}

BigUint MixedRadixIndex::to_integer() const
{
    // Horner from the most significant slot down.
    BigUint value = 0;
    for (std::size_t t = digits_.size(); t-- > 0;) {
        value *= radices_[t];
        value += digits_[t];
    }
    return value;
}

MixedRadixIndex MixedRadixIndex::from_integer(const BigUint &value, std::vector<std::uint64_t> radices)
{
    if (value < 0 || value >= cardinality(radices))
        throw std::out_of_range("MixedRadixIndex: packed value exceeds the index space");
    std::vector<std::uint64_t> digits(radices.size());
    BigUint rest = value;
    for (std::size_t t = 0; t < radices.size(); ++t) {
        BigUint q, r;
        boost::multiprecision::divide_qr(rest, BigUint(radices[t]), q, r);
        digits[t] = r.convert_to<std::uint64_t>();
        rest = std::move(q);
    }
    return MixedRadixIndex(std::move(digits), std::move(radices));
}

bool MixedRadixIndex::increment()
{
    for (std::size_t t = 0; t < digits_.size(); ++t) {
        if (++digits_[t] < radices_[t])
            return true;
        digits_[t] = 0;
    }
    return false;
}

// ---- envelope, membership, convolution ----------------------------------

double envelope(const DecayClass &cls, std::size_t t)
{
    // exp(-(p + r)) with p + r == b*t exactly; the residual r of the product
    // is folded in to first order so the envelope stays within a few ulp of
    // a*exp(-b t) even for large t.
    const double tt = static_cast<double>(t);
    const double p = cls.b() * tt;
    const double r = std::fma(cls.b(), tt, -p);
    const double e = std::exp(-p);
    return cls.a() * std::fma(-e, r, e);
}

bool is_member(const DecayClass &cls, const ImpulseResponse &k, double tol)
{
    if (!(tol >= 0.0))
        throw std::invalid_argument("is_member: tol must be nonnegative");
    const auto c = k.coeffs();
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (!std::isfinite(c[t]))
            return false;
        if (std::fabs(c[t]) > envelope(cls, t) + tol)
            return false;
    }
    return true;
}

Signal convolve(const ImpulseResponse &k, const Signal &x)
{
    if (k.empty() || x.empty())
        return Signal{};
    const auto kc = k.coeffs();
    const auto xc = x.coeffs();
    std::vector<double> out(kc.size() + xc.size() - 1, 0.0);
    for (std::size_t tau = 0; tau < kc.size(); ++tau) {
        const double kv = kc[tau];
        if (kv == 0.0)
            continue;
        for (std::size_t s = 0; s < xc.size(); ++s)
            out[tau + s] += kv * xc[s];
    }
    return Signal(std::move(out));
}

// ---- PRNG ---------------------------------------------------------------

std::uint64_t SplitMix64::next() noexcept
{
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept
{
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

double SplitMix64::normal() noexcept
{
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ImpulseResponse random_member(const DecayClass &cls, std::size_t T, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<double> out(T + 1);
    for (std::size_t t = 0; t <= T; ++t)
        out[t] = envelope(cls, t) * (2.0 * rng.uniform() - 1.0);
    return ImpulseResponse(std::move(out));
}

double snap_near_integer(double y) noexcept
{
    if (!std::isfinite(y))
        return y;
    const double r = std::nearbyint(y);
    const double ulp = std::nextafter(std::fabs(y), std::numeric_limits<double>::infinity()) - std::fabs(y);
    return std::fabs(y - r) <= 8.0 * ulp ? r : y;
}

} // namespace ltient
