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

#include "ltient/codec.hpp"

#include "ltient/covering.hpp"
#include "ltient/entropy.hpp"

#include <doctest.h>

#include <cmath>

using namespace ltient;

TEST_CASE("payload length")
{
    CHECK(payload_bits_for(1) == 0);
    CHECK(payload_bits_for(2) == 1);
    CHECK(payload_bits_for(3) == 2);
    CHECK(payload_bits_for(4) == 2);
    CHECK(payload_bits_for(5) == 3);
    CHECK(payload_bits_for(105600) == 17);
    BigUint big = 1;
    big <<= 300;
    CHECK(payload_bits_for(big) == 300);
    CHECK(payload_bits_for(big + 1) == 301);
    CHECK_THROWS_AS(payload_bits_for(0), std::invalid_argument);
}

TEST_CASE("bitstream layout")
{
    const DecayClass cls(1.0, 1.0);
    const ImpulseResponse k{0.5, -0.2, 0.1};
    const Bitstream s = encode(cls, 0.1, k);
    CHECK(s.payload_bits == 17);
    CHECK(s.payload.size() == 3);
    const auto bytes = s.to_bytes();
    REQUIRE(bytes.size() == kHeaderBytes + 3);
    CHECK(bytes[0] == 0x01);
    // 1.0 as a big-endian binary64.
    CHECK(bytes[1] == 0x3F);
    CHECK(bytes[2] == 0xF0);
    for (int i = 3; i <= 8; ++i)
        CHECK(bytes[static_cast<std::size_t>(i)] == 0);
    CHECK((bytes.back() & 0x7F) == 0);

    // Payload is the mixed-radix integer, most significant bit first.
    const CoveringParams p = covering_params(cls, 0.1);
    const MixedRadixIndex idx = quantize(p, cls, k);
    CHECK(idx.to_integer() == BigUint(idx.digit(0)) + 80 * (idx.digit(1) + 30 * (idx.digit(2) + 11 * idx.digit(3))));
    BigUint v = 0;
    for (std::size_t j = 0; j < 17; ++j)
        v = 2 * v + ((s.payload[j / 8] >> (7 - j % 8)) & 1);
    CHECK(v == idx.to_integer());

    CHECK(Bitstream::from_bytes(bytes) == s);
}

TEST_CASE("round trip keeps the certified distortion within eps")
{
    for (double a : {0.5, 1.0, 10.0})
        for (double b : {0.1, 1.0, 3.0})
            for (double r : {0.5, 0.1, 1e-3}) {
                const DecayClass cls(a, b);
                const double eps = r * a;
                const CoveringParams p = covering_params(cls, eps);
                SplitMix64 rng(static_cast<std::uint64_t>(a * 1000 + b * 10 + r * 1e4));
                for (int i = 0; i < 20; ++i) {
                    const ImpulseResponse k = random_member(cls, p.slots() + 5, rng.next());
                    const auto bytes = encode(cls, eps, k).to_bytes();
                    const Decoded d = decode_bytes(bytes);
                    CHECK(d.cls == cls);
                    CHECK(d.eps == eps);
                    CHECK(d.response == covering_element(p, cls, quantize(p, cls, k)));
                    CHECK(certified_distortion(p, cls, k, d.response) <= certification_limit(p));
                }
            }
}

TEST_CASE("every index of a small covering decodes to itself")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.5);
    MixedRadixIndex idx = MixedRadixIndex::zeros(p.counts);
    do {
        const ImpulseResponse c = covering_element(p, cls, idx);
        const Bitstream s = encode(cls, 0.5, c);
        CHECK(decode(s).response == c);
    } while (idx.increment());
}

TEST_CASE("corrupt and malformed streams")
{
    const DecayClass cls(1.0, 1.0);
    const auto good = encode(cls, 0.1, ImpulseResponse{0.5, -0.2, 0.1}).to_bytes();

    SUBCASE("truncated")
    {
        auto b = good;
        b.pop_back();
        CHECK_THROWS_AS(decode_bytes(b), CorruptStreamError);
        CHECK_THROWS_AS(decode_bytes(std::span(good).first(10)), FormatError);
    }
    SUBCASE("trailing byte")
    {
        auto b = good;
        b.push_back(0);
        CHECK_THROWS_AS(decode_bytes(b), CorruptStreamError);
    }
    SUBCASE("nonzero padding")
    {
        auto b = good;
        b.back() |= 0x01;
        CHECK_THROWS_AS(decode_bytes(b), CorruptStreamError);
    }
    SUBCASE("index beyond the covering size")
    {
        auto b = good;
        b[kHeaderBytes] = 0xFF;
        b[kHeaderBytes + 1] = 0xFF;
        b[kHeaderBytes + 2] = 0x80;
        CHECK_THROWS_AS(decode_bytes(b), CorruptStreamError);
    }
    SUBCASE("bad header")
    {
        auto b = good;
        b[0] = 0x02;
        CHECK_THROWS_AS(decode_bytes(b), FormatError);
        b = good;
        b[1] = 0xBF; // a = -1
        CHECK_THROWS_AS(decode_bytes(b), FormatError);
        b = good;
        b[17] = 0x7F; // eps = NaN or huge
        b[18] = 0xF8;
        CHECK_THROWS_AS(decode_bytes(b), FormatError);
    }
}

TEST_CASE("encoding rejects non-members")
{
    CHECK_THROWS_AS(encode(DecayClass(1.0, 1.0), 0.1, ImpulseResponse{0.0, 0.9}), NonMemberError);
}

TEST_CASE("rate report")
{
    const DecayClass cls(1.0, 1.0);
    const RateReport r = rate_report(cls, 0.1);
    CHECK(r.bits == 17);
    CHECK(r.overhead_bits == 200);
    CHECK(r.rate_formula == doctest::Approx(3.824511055642875));
    CHECK(static_cast<double>(r.bits) <= r.upper_bound + 1.0);

    // bits / rate at eps = 1e-1 .. 1e-8.
    const double expected[] = {4.45, 2.61, 2.21, 1.90, 1.73, 1.61, 1.55, 1.49};
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
        const RateReport ri = rate_report(cls, std::pow(10.0, -(i + 1)));
        const double ratio = static_cast<double>(ri.bits) / ri.rate_formula;
        CHECK(ratio == doctest::Approx(expected[i]).epsilon(1e-2));
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("reference examples for the codec")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    const RateReport r = rate_report(cls, 0.1);
    CHECK(r.overhead_bits == 8 * kHeaderBytes);

    SUBCASE("distinct covering elements give distinct payloads")
    {
        SplitMix64 rng(3);
        for (int i = 0; i < 200; ++i) {
            std::vector<std::uint64_t> da(p.slots()), db(p.slots());
            for (std::size_t t = 0; t < p.slots(); ++t) {
                da[t] = rng.below(p.counts[t]);
                db[t] = rng.below(p.counts[t]);
            }
            const auto x = covering_element(p, cls, MixedRadixIndex(da, p.counts));
            const auto y = covering_element(p, cls, MixedRadixIndex(db, p.counts));
            CHECK((encode(cls, 0.1, x).payload == encode(cls, 0.1, y).payload) == (da == db));
        }
    }

    SUBCASE("re-encoding a decoded stream reproduces it byte for byte")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto bytes = encode(cls, 0.1, random_member(cls, 6, seed)).to_bytes();
            const Decoded d = decode_bytes(bytes);
            CHECK(encode(d.cls, d.eps, d.response).to_bytes() == bytes);
        }
    }

    SUBCASE("payload is never shorter than the packing entropy")
    {
        for (double eps : log_sweep(1e-1, 1e-8, 8)) {
            const EntropyReport e = entropy_report(cls, eps);
            CHECK(static_cast<double>(rate_report(cls, eps).bits) >= std::ceil(e.log2_packing) - 1.0);
        }
    }
}
