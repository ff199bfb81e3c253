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

#include "ltient/covering.hpp"

#include "ltient/norms.hpp"

#include <doctest.h>

#include <cmath>

using namespace ltient;

TEST_CASE("covering parameters at a=1, b=1, eps=0.1")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    CHECK(p.last_slot == 3);
    CHECK(p.delta == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(p.counts == std::vector<std::uint64_t>{80, 30, 11, 4});
    CHECK(covering_cardinality_exact(p) == 105600);
    CHECK(covering_log2_cardinality(p) == doctest::Approx(16.688250309133178).epsilon(1e-14));
    CHECK(tail_bound(cls, 3) == doctest::Approx(std::exp(-4.0) / (1.0 - std::exp(-1.0))).epsilon(1e-14));
}

TEST_CASE("covering parameters on further instances")
{
    SUBCASE("a=10, b=3, eps=0.01")
    {
        const CoveringParams p = covering_params(DecayClass(10.0, 3.0), 0.01);
        CHECK(p.last_slot == 2);
        CHECK(p.counts == std::vector<std::uint64_t>{6000, 299, 15});
        CHECK(covering_cardinality_exact(p) == 26910000);
    }
    SUBCASE("a=1, b=1, eps=0.25")
    {
        const CoveringParams p = covering_params(DecayClass(1.0, 1.0), 0.25);
        CHECK(p.counts == std::vector<std::uint64_t>{24, 9, 4});
        CHECK(covering_cardinality_exact(p) == 864);
    }
    SUBCASE("slow decay needs arbitrary precision")
    {
        const CoveringParams p = covering_params(DecayClass(0.5, 0.1), 0.05);
        CHECK(p.last_slot == 53);
        CHECK(covering_cardinality_exact(p) ==
              BigUint("1011978649303643369823049801113983939288274781806035426811476971876286996506947128131584000000"
                      "000000000"));
        CHECK(covering_log2_cardinality(p) == doctest::Approx(338.8538445309259).epsilon(1e-13));
    }
}

TEST_CASE("grid points")
{
    const DecayClass cls(1.0, 1.0);
    const double delta = 0.025;
    CHECK(grid_point(cls, delta, 0, 1) == doctest::Approx(-1.0 + 0.0125));
    CHECK(grid_point(cls, delta, 0, 80) == doctest::Approx(1.0 - 0.0125));
    // The last point of a slot whose envelope is not on the grid is clipped.
    CHECK(grid_point(cls, delta, 1, 30) == envelope(cls, 1));
    CHECK_THROWS_AS(grid_point(cls, delta, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(grid_point(cls, delta, 0, 81), std::out_of_range);

    for (std::size_t t = 0; t < 4; ++t) {
        const double env = envelope(cls, t);
        const auto n = covering_params(cls, 0.1).counts[t];
        double prev = -env;
        for (std::uint64_t i = 1; i <= n; ++i) {
            const double g = grid_point(cls, delta, t, i);
            CHECK(g > prev);
            CHECK(std::fabs(g) <= env);
            prev = g;
        }
    }
}

TEST_CASE("quantization picks the nearest grid point")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    SplitMix64 rng(31);
    for (int s = 0; s < 500; ++s) {
        const ImpulseResponse k = random_member(cls, 8, rng.next());
        const MixedRadixIndex idx = quantize(p, cls, k);
        const ImpulseResponse rec = covering_element(p, cls, idx);
        for (std::size_t t = 0; t < p.slots(); ++t) {
            const double err = std::fabs(k[t] - rec[t]);
            CHECK(err <= 0.5 * p.delta * (1.0 + 1e-12));
            for (std::uint64_t i = 1; i <= p.counts[t]; ++i)
                CHECK(err <= std::fabs(k[t] - grid_point(cls, p.delta, t, i)));
        }
        CHECK(certified_distortion(p, cls, k, rec) <= certification_limit(p));
    }
}

TEST_CASE("quantization edge cases")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    SUBCASE("envelope extremes map to the outer grid points")
    {
        const ImpulseResponse top{1.0, envelope(cls, 1), envelope(cls, 2), envelope(cls, 3)};
        const MixedRadixIndex hi = quantize(p, cls, top);
        for (std::size_t t = 0; t < 4; ++t)
            CHECK(hi.digit(t) == p.counts[t] - 1);
        const MixedRadixIndex lo = quantize(p, cls, scaled(top, -1.0));
        CHECK(lo == MixedRadixIndex::zeros(p.counts));
    }
    SUBCASE("ties go to the lower index")
    {
        const double mid = 0.5 * (grid_point(cls, p.delta, 0, 40) + grid_point(cls, p.delta, 0, 41));
        CHECK(quantize(p, cls, ImpulseResponse{mid}).digit(0) == 39);
    }
    SUBCASE("non-members are rejected")
    {
        CHECK_THROWS_AS(quantize(p, cls, ImpulseResponse{1.5}), NonMemberError);
        CHECK_THROWS_AS(quantize(p, cls, ImpulseResponse{0.0, 0.0, 0.0, 0.0, 0.0, 0.5}), NonMemberError);
    }
}

TEST_CASE("certified distortion dominates rho")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    SplitMix64 rng(37);
    for (int s = 0; s < 50; ++s) {
        const ImpulseResponse k = random_member(cls, 15, rng.next());
        const ImpulseResponse rec = covering_element(p, cls, quantize(p, cls, k));
        const double cert = certified_distortion(p, cls, k, rec);
        CHECK(rho(k, rec, 1e-9).upper <= cert + 1e-12);
        CHECK(cert <= 0.1 * (1.0 + 1e-12));
    }
}

TEST_CASE("random cover verification")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    const CoverReport r = verify_cover(p, cls, 0.1, 1000, 1);
    CHECK(r.samples == 1000);
    CHECK(r.ok());
    CHECK(r.worst_slot_error <= 0.0125 * (1.0 + 1e-12));
    CHECK(r.tail == doctest::Approx(0.028974914093407467).epsilon(1e-14));
    CHECK_THROWS_AS(verify_cover(p, cls, 0.2, 10, 1), std::invalid_argument);
}

TEST_CASE("closed-form covering bound constants")
{
    const KConstants k = k_constants(DecayClass(1.0, 1.0));
    CHECK(k.k1 == doctest::Approx(1.1518223259470272).epsilon(1e-14));
    CHECK(k.k2 == doctest::Approx(1.890483341629998).epsilon(1e-14));
    CHECK(k.k3 == doctest::Approx(2.1518223259470272).epsilon(1e-14));
    CHECK(k.k4 == doctest::Approx(3.4426950408889634).epsilon(1e-14));
    CHECK(k.k5 == doctest::Approx(3.1044233985179308).epsilon(1e-14));
    CHECK(k.k6 == doctest::Approx(4.067984261350371).epsilon(1e-14));
    CHECK(covering_upper_bound(DecayClass(1.0, 1.0), 0.1) == doctest::Approx(24.728408435750847).epsilon(1e-13));
}

TEST_CASE("covering argument checks")
{
    const DecayClass cls(1.0, 1.0);
    CHECK_THROWS_AS(covering_params(cls, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(covering_params(cls, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(covering_params(cls, std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(covering_params(DecayClass(1.0, 1e-12), 1e-300), std::domain_error);
}

TEST_CASE("reference examples for the covering")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    const KConstants k = k_constants(cls);

    const double horizon = std::log(10.0);
    CHECK(horizon + k.k1 - 1.0 <= static_cast<double>(p.last_slot));
    CHECK(static_cast<double>(p.last_slot) <= horizon + k.k1);

    CHECK(grid_point(cls, 0.025, 0, 1) == doctest::Approx(-0.9875).epsilon(1e-15));
    CHECK(grid_point(cls, 0.025, 0, 80) == doctest::Approx(0.9875).epsilon(1e-15));
    for (std::size_t t = 0; t < p.slots(); ++t)
        for (std::uint64_t i = 1; i < p.counts[t]; ++i)
            CHECK(grid_point(cls, p.delta, t, i + 1) - grid_point(cls, p.delta, t, i) <= p.delta * (1.0 + 1e-12));

    const ImpulseResponse low = covering_element(p, cls, MixedRadixIndex::zeros(p.counts));
    for (std::size_t t = 0; t < p.slots(); ++t)
        CHECK(low[t] == doctest::Approx(-envelope(cls, t) + 0.5 * p.delta).epsilon(1e-14));

    const ImpulseResponse zero_rec = covering_element(p, cls, quantize(p, cls, ImpulseResponse{}));
    for (std::size_t t = 0; t < p.slots(); ++t)
        CHECK(std::fabs(zero_rec[t]) <= 0.5 * p.delta * (1.0 + 1e-12));
    CHECK(certified_distortion(p, cls, ImpulseResponse{}, zero_rec) <=
          static_cast<double>(p.slots()) * p.delta / 2.0 + tail_bound(cls, p.last_slot));

    CHECK(k.k5 == doctest::Approx(kLog2E * k.k3).epsilon(1e-15));
    CHECK(k.k6 == doctest::Approx(k.k3 * k.k2).epsilon(1e-15));
    CHECK(covering_log2_cardinality(p) <= covering_upper_bound(cls, 0.1));
}

TEST_CASE("grid elements are fixed points of quantization")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    SplitMix64 rng(41);
    for (int s = 0; s < 300; ++s) {
        std::vector<std::uint64_t> digits(p.slots());
        for (std::size_t t = 0; t < p.slots(); ++t)
            digits[t] = rng.below(p.counts[t]);
        const MixedRadixIndex idx(digits, p.counts);
        const ImpulseResponse c = covering_element(p, cls, idx);
        CHECK(is_member(cls, c));
        CHECK(quantize(p, cls, c) == idx);
        // Only the analytic tail remains.
        const double cert = certified_distortion(p, cls, c, c);
        CHECK(cert == tail_bound(cls, p.last_slot));
        CHECK(cert <= 0.05);
    }
}

TEST_CASE("per-slot quantization error over long random members")
{
    const DecayClass cls(1.0, 1.0);
    const CoveringParams p = covering_params(cls, 0.1);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ImpulseResponse k = random_member(cls, p.last_slot + 10, seed);
        const ImpulseResponse rec = covering_element(p, cls, quantize(p, cls, k));
        for (std::size_t t = 0; t < p.slots(); ++t)
            CHECK(std::fabs(k[t] - rec[t]) <= 0.5 * p.delta * (1.0 + 1e-12));
    }
}

TEST_CASE("covering cardinality paths agree")
{
    const DecayClass cls(1.0, 0.5);
    for (double eps : {0.5, 1e-2, 1e-5}) {
        const CoveringParams p = covering_params(cls, eps);
        BigUint prod = 1;
        for (auto n : p.counts)
            prod *= n;
        CHECK(prod == covering_cardinality_exact(p));
        double acc = 0.0;
        for (auto n : p.counts)
            acc += std::log2(static_cast<double>(n));
        CHECK(covering_log2_cardinality(p) == doctest::Approx(acc).epsilon(1e-12));
    }
    const CoveringParams ones{0.1, 1, 0.05, {1, 1}};
    CHECK(covering_log2_cardinality(ones) == 0.0);
    CHECK(covering_cardinality_exact(ones) == 1);
}
