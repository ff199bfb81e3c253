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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltient::detail {

// Largest per-slot count accepted; keeps counts exactly representable as doubles.
inline constexpr double kMaxSlotCount = 0x1.0p53;
// Largest number of slots accepted.
inline constexpr double kMaxSlots = 1.0e7;

inline void require_eps_in_range(const DecayClass &cls, double eps, const char *who)
{
    if (!(std::isfinite(eps) && eps > 0.0 && eps < cls.a()))
        throw std::invalid_argument(std::string(who) + ": eps must lie in (0, a); got eps=" + std::to_string(eps) +
                                    ", a=" + std::to_string(cls.a()));
}

inline std::uint64_t checked_count(double v, const char *who)
{
    if (!(v <= kMaxSlotCount))
        throw std::domain_error(std::string(who) + ": eps too small, slot count exceeds 2^53");
    return static_cast<std::uint64_t>(v);
}

inline std::size_t checked_slots(double v, const char *who)
{
    if (!(v >= 0.0 && v <= kMaxSlots))
        throw std::domain_error(std::string(who) + ": eps too small, slot count exceeds 1e7");
    return static_cast<std::size_t>(v);
}

} // namespace ltient::detail
