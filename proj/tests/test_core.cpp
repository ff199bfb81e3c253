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

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace ltient;

TEST_CASE("decay class rejects non-positive and non-finite parameters")
{
    CHECK_NOTHROW(DecayClass(1.0, 1.0));
    CHECK_THROWS_AS(DecayClass(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DecayClass(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(DecayClass(std::numeric_limits<double>::infinity(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DecayClass(1.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("one-sided sequences read zero past their support")
{
    const ImpulseResponse k{1.0, -2.0};
    CHECK(k.at(0) == 1.0);
    CHECK(k[1] == -2.0);
    CHECK(k.at(2) == 0.0);
    CHECK(k.at(1000) == 0.0);

    const ImpulseResponse d = difference(k, ImpulseResponse{0.5});
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 0.5);
    CHECK(d[1] == -2.0);
    CHECK(scaled(k, -2.0) == ImpulseResponse{-2.0, 4.0});
}

TEST_CASE("envelope")
{
    CHECK(envelope(DecayClass(1.0, 1.0), 0) == 1.0);
    CHECK(envelope(DecayClass(2.0, 0.5), 2) == doctest::Approx(0.7357588823428847).epsilon(1e-15));

    SUBCASE("consecutive ratio is e^{-b} to a few ulp")
    {
        for (double b : {0.1, 0.7, 1.0, 3.0}) {
            const DecayClass cls(1.0, b);
            const double expected = std::exp(-b);
            for (std::size_t t = 0; t < 200; ++t) {
                const double ratio = envelope(cls, t + 1) / envelope(cls, t);
                CHECK(std::fabs(ratio - expected) <= 4.0 * std::numeric_limits<double>::epsilon() * expected);
            }
        }
    }
}

TEST_CASE("membership")
{
    const DecayClass cls(1.0, 1.0);
    CHECK(is_member(cls, ImpulseResponse{1.0, -std::exp(-1.0), 0.0}));
    CHECK(is_member(cls, ImpulseResponse{}));
    CHECK_FALSE(is_member(cls, ImpulseResponse{1.0 + 1e-12}));
    CHECK(is_member(cls, ImpulseResponse{1.0 + 1e-12}, 1e-9));
    CHECK_FALSE(is_member(cls, ImpulseResponse{0.0, 0.5}));
    CHECK_FALSE(is_member(cls, ImpulseResponse{std::nan("")}));

    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(is_member(cls, random_member(cls, 20, seed)));
}

TEST_CASE("convolution")
{
    const Signal y = convolve(ImpulseResponse{1.0, 2.0}, Signal{1.0, 0.0, -1.0});
    CHECK(y == Signal{1.0, 2.0, -1.0, -2.0});
    CHECK(convolve(ImpulseResponse{}, Signal{1.0}).empty());
    CHECK(convolve(ImpulseResponse{1.0}, Signal{}).empty());

    SUBCASE("impulse input returns the impulse response")
    {
        const ImpulseResponse k{0.3, -0.1, 0.05};
        CHECK(convolve(k, Signal{1.0}).values() == k.values());
    }

    SUBCASE("bilinear in the response")
    {
        SplitMix64 rng(7);
        std::vector<double> a(9), b(9), x(13);
        for (auto *v : {&a, &b, &x})
            for (double &e : *v)
                e = rng.normal();
        const double alpha = 0.75, beta = -1.25;
        std::vector<double> mix(9);
        for (std::size_t i = 0; i < 9; ++i)
            mix[i] = alpha * a[i] + beta * b[i];
        const Signal lhs = convolve(ImpulseResponse(mix), Signal(x));
        const Signal ya = convolve(ImpulseResponse(a), Signal(x));
        const Signal yb = convolve(ImpulseResponse(b), Signal(x));
        REQUIRE(lhs.size() == 21);
        for (std::size_t t = 0; t < lhs.size(); ++t)
            CHECK(lhs[t] == doctest::Approx(alpha * ya[t] + beta * yb[t]).epsilon(1e-12).scale(10.0));
    }
}

TEST_CASE("mixed radix index")
{
    const std::vector<std::uint64_t> radices{10, 4, 2};
    CHECK(MixedRadixIndex::cardinality(radices) == 80);

    SUBCASE("slot 0 is least significant")
    {
        const MixedRadixIndex idx({3, 2, 1}, radices);
        CHECK(idx.to_integer() == 3 + 10 * 2 + 40 * 1);
    }

    SUBCASE("round trip over the whole space in increment order")
    {
        MixedRadixIndex idx = MixedRadixIndex::zeros(radices);
        BigUint n = 0;
        do {
            CHECK(idx.to_integer() == n);
            CHECK(MixedRadixIndex::from_integer(n, radices) == idx);
            ++n;
        } while (idx.increment());
        CHECK(n == 80);
        CHECK(idx == MixedRadixIndex::zeros(radices));
    }

    SUBCASE("big cardinalities")
    {
        const std::vector<std::uint64_t> big(40, std::uint64_t{1} << 40);
        BigUint v = 1;
        v <<= 1599;
        v += 12345;
        const MixedRadixIndex idx = MixedRadixIndex::from_integer(v, big);
        CHECK(idx.to_integer() == v);
        CHECK(idx.digit(0) == 12345);
        CHECK(idx.digit(39) == std::uint64_t{1} << 39);
    }

    CHECK_THROWS_AS(MixedRadixIndex({10, 0, 0}, radices), std::out_of_range);
    CHECK_THROWS_AS(MixedRadixIndex::from_integer(80, radices), std::out_of_range);
    CHECK_THROWS(MixedRadixIndex({0, 0}, radices));
}

TEST_CASE("splitmix64 reference stream")
{
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ull);
    CHECK(rng.next() == 3203168211198807973ull);
    CHECK(rng.next() == 9817491932198370423ull);
    CHECK(rng.next() == 4593380528125082431ull);
    CHECK(rng.next() == 16408922859458223821ull);
}

TEST_CASE("splitmix64 derived draws")
{
    SplitMix64 rng(42);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const std::uint64_t k = rng.below(7);
        CHECK(k < 7);
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::fabs(sum / n) < 0.05);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("near-integer snapping")
{
    CHECK(snap_near_integer(3.0) == 3.0);
    CHECK(snap_near_integer(std::nextafter(3.0, 4.0)) == 3.0);
    CHECK(snap_near_integer(std::nextafter(3.0, 2.0)) == 3.0);
    CHECK(snap_near_integer(3.0 + 1e-9) == 3.0 + 1e-9);
    CHECK(snap_near_integer(2.5) == 2.5);
    CHECK(snap_near_integer(1.0 + 4.0 * std::numeric_limits<double>::epsilon()) == 1.0);
    CHECK(snap_near_integer(-7.0 - 1e-15) == -7.0);
    CHECK(std::isinf(snap_near_integer(std::numeric_limits<double>::infinity())));
}

TEST_CASE("reference examples for the core types")
{
    const DecayClass cls(1.0, 1.0);
    CHECK(is_member(cls, ImpulseResponse{1.0}));
    CHECK_FALSE(is_member(cls, ImpulseResponse{1.0 + 10 * 1e-9}, 1e-9));
    CHECK(random_member(cls, 5, 99) == random_member(cls, 5, 99));
    CHECK_FALSE(random_member(cls, 5, 99) == random_member(cls, 5, 100));
    CHECK(convolve(ImpulseResponse{1.0, 1.0}, Signal{1.0, 1.0}) == Signal{1.0, 2.0, 1.0});

    double prev = envelope(cls, 0);
    for (std::size_t t = 1; t < 800; ++t) {
        const double e = envelope(cls, t);
        CHECK(e <= prev);
        prev = e;
    }
    CHECK(prev < 1e-300);
}

TEST_CASE("random members are centred uniform draws")
{
    const DecayClass cls(2.0, 1.0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += random_member(cls, 0, static_cast<std::uint64_t>(i))[0];
    const double sigma = 2.0 / std::sqrt(3.0 * n);
    CHECK(std::fabs(sum / n) <= 3.0 * sigma);
}

TEST_CASE("convolution matches a direct double loop")
{
    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> k(1 + rng.below(8)), x(1 + rng.below(8));
        for (double &v : k)
            v = rng.normal();
        for (double &v : x)
            v = rng.normal();
        std::vector<double> expected(k.size() + x.size() - 1, 0.0);
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                expected[i + j] += k[i] * x[j];
        const Signal y = convolve(ImpulseResponse(k), Signal(x));
        REQUIRE(y.size() == expected.size());
        for (std::size_t t = 0; t < y.size(); ++t)
            CHECK(y[t] == doctest::Approx(expected[t]).epsilon(1e-13));
    }
}
