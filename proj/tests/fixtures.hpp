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
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "djsim/boolfn.hpp"

namespace fixtures {

// Worked truth tables, index 0 first.
inline constexpr const char *kTwoNodeBits = "10000111";        // n=3: B00 = B11 = 1
inline constexpr const char *kDeltaBits = "1010101101001100";  // n=4: delta = (0,-2,2,0)
inline constexpr const char *kBigDeltaBits = "1100101101001010"; // n=4: Delta = (0,-1,1,0)
inline constexpr const char *kXorCounterexampleBits = "1001001101011010"; // n=4

/// `count` distinct-seeded draws from the n-ary promise functions.
inline std::vector<djsim::BooleanFunction> random_promise_functions(unsigned n, std::size_t count,
                                                                   std::uint64_t seed) {
    const auto all = djsim::enumerate_promise_functions(n);
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::vector<djsim::BooleanFunction> out;
    out.reserve(count + 2);
    out.push_back(all[0]);
    out.push_back(all[1]);
    while (out.size() < count) {
        out.push_back(all[pick(gen)]);
    }
    return out;
}

} // namespace fixtures
