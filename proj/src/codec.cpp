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

#include <bit>
#include <cmath>
#include <string>

namespace ltient {

namespace {

void put_be64(std::vector<std::uint8_t> &out, double v)
{
    const auto u = std::bit_cast<std::uint64_t>(v);
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(u >> shift));
}

double get_be64(std::span<const std::uint8_t> in)
{
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < 8; ++i)
        u = (u << 8) | in[i];
    return std::bit_cast<double>(u);
}

std::size_t payload_bytes(std::size_t bits)
{
    return (bits + 7) / 8;
}

std::vector<std::uint8_t> pack_bits(const BigUint &value, std::size_t bits)
{
    std::vector<std::uint8_t> out(payload_bytes(bits), 0);
    for (std::size_t j = 0; j < bits; ++j)
        if (boost::multiprecision::bit_test(value, static_cast<unsigned>(bits - 1 - j)))
            out[j / 8] |= static_cast<std::uint8_t>(0x80u >> (j % 8));
    return out;
}

BigUint unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bits)
{
    BigUint v = 0;
    for (std::size_t j = 0; j < bits; ++j) {
        v <<= 1;
        if (bytes[j / 8] & (0x80u >> (j % 8)))
            v |= 1;
    }
    return v;
}

// Validates header fields and re-derives the covering they describe.
struct StreamContext {
    DecayClass cls;
    CoveringParams params;
};

StreamContext context_from_header(std::uint8_t version, double a, double b, double eps)
{
    if (version != kBitstreamVersion)
        throw FormatError("bitstream: unsupported version " + std::to_string(version));
    if (!(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0))
        throw FormatError("bitstream: header carries an invalid class (a, b)");
    if (!(std::isfinite(eps) && eps > 0.0 && eps < a))
        throw FormatError("bitstream: header eps outside (0, a)");
    DecayClass cls(a, b);
    try {
        return {cls, covering_params(cls, eps)};
    } catch (const std::domain_error &e) {
        throw FormatError(std::string("bitstream: ") + e.what());
    }
}

} // namespace

std::size_t payload_bits_for(const BigUint &cardinality)
{
    if (cardinality < 1)
        throw std::invalid_argument("payload_bits_for: cardinality must be positive");
    if (cardinality == 1)
        return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(BigUint(cardinality - 1))) + 1;
}

std::vector<std::uint8_t> Bitstream::to_bytes() const
{
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + payload.size());
    out.push_back(version);
    put_be64(out, a);
    put_be64(out, b);
    put_be64(out, eps);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Bitstream Bitstream::from_bytes(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kHeaderBytes)
        throw FormatError("bitstream: " + std::to_string(bytes.size()) + " bytes is shorter than the header");
    Bitstream s;
    s.version = bytes[0];
    s.a = get_be64(bytes.subspan(1));
    s.b = get_be64(bytes.subspan(9));
    s.eps = get_be64(bytes.subspan(17));
    const StreamContext ctx = context_from_header(s.version, s.a, s.b, s.eps);

    s.payload_bits = payload_bits_for(covering_cardinality_exact(ctx.params));
    const std::size_t expected = payload_bytes(s.payload_bits);
    const auto body = bytes.subspan(kHeaderBytes);
    if (body.size() < expected)
        throw CorruptStreamError("bitstream: payload truncated (" + std::to_string(body.size()) + " of " +
                                 std::to_string(expected) + " bytes)");
    if (body.size() > expected)
        throw CorruptStreamError("bitstream: trailing bytes after payload");
    if (s.payload_bits % 8 != 0 && expected > 0) {
        const unsigned pad_mask = 0xFFu >> (s.payload_bits % 8);
        if (body[expected - 1] & pad_mask)
            throw CorruptStreamError("bitstream: nonzero padding bits");
    }
    s.payload.assign(body.begin(), body.end());
    return s;
}

Bitstream encode(const DecayClass &cls, double eps, const ImpulseResponse &k)
{
    const CoveringParams params = covering_params(cls, eps);
    const MixedRadixIndex idx = quantize(params, cls, k);
    Bitstream s;
    s.a = cls.a();
    s.b = cls.b();
    s.eps = eps;
    s.payload_bits = payload_bits_for(covering_cardinality_exact(params));
    s.payload = pack_bits(idx.to_integer(), s.payload_bits);
    return s;
}

Decoded decode(const Bitstream &bits)
{
    const StreamContext ctx = context_from_header(bits.version, bits.a, bits.b, bits.eps);
    const BigUint card = covering_cardinality_exact(ctx.params);
    const std::size_t nbits = payload_bits_for(card);
    if (bits.payload_bits != nbits || bits.payload.size() != payload_bytes(nbits))
        throw CorruptStreamError("bitstream: payload length does not match the header");
    const BigUint v = unpack_bits(bits.payload, nbits);
    if (v >= card)
        throw CorruptStreamError("bitstream: payload index exceeds the covering size");
    const MixedRadixIndex idx = MixedRadixIndex::from_integer(v, ctx.params.counts);
    return {ctx.cls, bits.eps, covering_element(ctx.params, ctx.cls, idx)};
}

Decoded decode_bytes(std::span<const std::uint8_t> bytes)
{
    return decode(Bitstream::from_bytes(bytes));
}

RateReport rate_report(const DecayClass &cls, double eps)
{
    const CoveringParams params = covering_params(cls, eps);
    RateReport r;
    r.bits = payload_bits_for(covering_cardinality_exact(params));
    r.rate_formula = asymptotic_rate(cls, eps);
    r.overhead_bits = 8 * kHeaderBytes;
    r.upper_bound = covering_upper_bound(cls, eps);
    if (static_cast<double>(r.bits) > r.upper_bound + 1.0)
        throw std::logic_error("rate_report: payload exceeds the closed-form covering bound");
    return r;
}

} // namespace ltient
