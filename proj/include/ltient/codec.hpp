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
#include <span>
#include <stdexcept>
#include <vector>

namespace ltient {

/// Header bytes are malformed (short, unknown version, invalid a, b or eps).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Payload does not match the header (truncated, trailing bytes, nonzero
/// padding, or index out of range).
class CorruptStreamError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kBitstreamVersion = 0x01;
inline constexpr std::size_t kHeaderBytes = 25;

/**
 * Encoded impulse response.
 *
 * Byte layout (big-endian throughout):
 *
 *   offset  size  field
 *   0       1     version (0x01)
 *   1       8     a    IEEE-754 binary64
 *   9       8     b    IEEE-754 binary64
 *   17      8     eps  IEEE-754 binary64
 *   25      ...   payload
 *
 * The payload is the single integer v = sum_t (i_t - 1) prod_{s<t} n_s of
 * the covering grid indices i_t, written MSB-first in exactly
 * ceil(log2 prod n_t) bits and zero-padded at the end to a whole byte. The
 * decoder re-derives C2, delta and n_t from (a, b, eps).
 */
struct Bitstream {
    std::uint8_t version = kBitstreamVersion;
    double a = 0.0;
    double b = 0.0;
    double eps = 0.0;
    std::size_t payload_bits = 0;
    std::vector<std::uint8_t> payload; // ceil(payload_bits / 8) bytes

    std::vector<std::uint8_t> to_bytes() const;
    /// Throws FormatError or CorruptStreamError.
    static Bitstream from_bytes(std::span<const std::uint8_t> bytes);

    bool operator==(const Bitstream &) const = default;
};

/// ceil(log2 N) for N >= 1: the bit length of N - 1.
std::size_t payload_bits_for(const BigUint &cardinality);

/// Throws std::invalid_argument for eps outside (0, a) and NonMemberError for non-members.
Bitstream encode(const DecayClass &cls, double eps, const ImpulseResponse &k);

struct Decoded {
    DecayClass cls;
    double eps;
    ImpulseResponse response;
};

/// Throws FormatError or CorruptStreamError.
Decoded decode(const Bitstream &bits);
Decoded decode_bytes(std::span<const std::uint8_t> bytes);

struct RateReport {
    std::size_t bits = 0;          // payload length
    double rate_formula = 0.0;     // gamma/(2b) ln^2(a/eps)
    std::size_t overhead_bits = 0; // header
    double upper_bound = 0.0;      // closed-form covering bound
};

/// Throws std::logic_error if bits exceed the closed-form covering bound by more than one.
RateReport rate_report(const DecayClass &cls, double eps);

} // namespace ltient
