// Copyright 2026 The djsim Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Small bit-twiddling helpers shared by the Boolean-function and simulator
 * layers.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace djsim::bits {

using Index = std::uint64_t;

constexpr Index pow2(unsigned k) noexcept { return Index{1} << k; }

constexpr Index low_mask(unsigned width) noexcept {
    return width >= 64 ? ~Index{0} : pow2(width) - 1;
}

constexpr unsigned popcount(Index x) noexcept {
    return static_cast<unsigned>(std::popcount(x));
}

/// Encode a signed integer as a two's-complement pattern of `width` bits.
constexpr Index to_twos_complement(std::int64_t value, unsigned width) noexcept {
    return static_cast<Index>(value) & low_mask(width);
}

/// Decode a `width`-bit two's-complement pattern.
constexpr std::int64_t from_twos_complement(Index pattern, unsigned width) noexcept {
    pattern &= low_mask(width);
    if (width > 0 && width < 64 && (pattern & pow2(width - 1)) != 0) {
        return static_cast<std::int64_t>(pattern) - static_cast<std::int64_t>(pow2(width));
    }
    return static_cast<std::int64_t>(pattern);
}

/// Render the low `width` bits of `pattern`, most significant first.
inline std::string to_bitstring(Index pattern, unsigned width) {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i) {
        if ((pattern >> (width - 1 - i)) & 1U) {
            out[i] = '1';
        }
    }
    return out;
}

} // namespace djsim::bits
