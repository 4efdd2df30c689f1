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
 * Truth-table files:
 *
 *     { "n": 4, "bits": "1010101101001100" }   // index 0 first
 *     { "n": 4, "hex":  "ab4c" }               // same table, 2^n/4 digits
 *
 * Hex digits are big-endian over indices: the first digit covers indices
 * 0..3 with index 0 as its most significant bit.
 */
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "boolfn.hpp"

namespace djsim {

class TruthTableFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline BooleanFunction function_from_hex(unsigned n, std::string_view hex) {
    if (n < 2) {
        throw TruthTableFormatError("hex form needs n >= 2");
    }
    const auto want = bits::pow2(n) / 4;
    if (hex.size() != want) {
        throw TruthTableFormatError("hex string has " + std::to_string(hex.size()) +
                                    " digits, expected " + std::to_string(want));
    }
    std::string bit_chars;
    bit_chars.reserve(bits::pow2(n));
    for (char c : hex) {
        int v = -1;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        }
        if (v < 0) {
            throw TruthTableFormatError(std::string("invalid hex digit '") + c + "'");
        }
        for (int b = 3; b >= 0; --b) {
            bit_chars.push_back(((v >> b) & 1) != 0 ? '1' : '0');
        }
    }
    return make_function(n, bit_chars);
}

inline BooleanFunction truth_table_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw TruthTableFormatError("truth table must be a JSON object");
    }
    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw TruthTableFormatError("truth table needs an integer field \"n\"");
    }
    const auto n_raw = j["n"].get<long long>();
    if (n_raw < 1 || n_raw > static_cast<long long>(kMaxArity)) {
        throw TruthTableFormatError("\"n\" out of range: " + std::to_string(n_raw));
    }
    const auto n = static_cast<unsigned>(n_raw);
    const bool has_bits = j.contains("bits");
    const bool has_hex = j.contains("hex");
    if (has_bits == has_hex) {
        throw TruthTableFormatError("truth table needs exactly one of \"bits\" or \"hex\"");
    }
    try {
        if (has_bits) {
            if (!j["bits"].is_string()) {
                throw TruthTableFormatError("\"bits\" must be a string");
            }
            return make_function(n, j["bits"].get<std::string>());
        }
        if (!j["hex"].is_string()) {
            throw TruthTableFormatError("\"hex\" must be a string");
        }
        return function_from_hex(n, j["hex"].get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw TruthTableFormatError(e.what());
    }
}

inline BooleanFunction parse_truth_table(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw TruthTableFormatError(std::string("malformed JSON: ") + e.what());
    }
    return truth_table_from_json(j);
}

inline BooleanFunction load_truth_table(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw TruthTableFormatError("cannot open truth-table file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_truth_table(buf.str());
}

inline nlohmann::json to_json(const BooleanFunction &f) {
    return {{"n", f.arity()}, {"bits", f.bit_string()}};
}

} // namespace djsim
