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
 * The named operators of the distributed DJ circuits, each built as a
 * GateSpec bound to an explicit wire layout.
 *
 * Arithmetic results are XORed into their registers, so every
 * permutation built here is an involution. Signed results are stored as
 * two's complement of the register width, big-endian within the register.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "boolfn.hpp"
#include "statevector.hpp"

namespace djsim::gates {

namespace detail {

inline QubitList concat(std::initializer_list<const QubitList *> parts) {
    QubitList all;
    for (const auto *p : parts) {
        all.insert(all.end(), p->begin(), p->end());
    }
    return all;
}

inline void require_disjoint(const QubitList &all, const std::string &what) {
    auto sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(what + ": layout overlap");
    }
}

inline void require_size(const QubitList &reg, std::size_t want, const std::string &what) {
    if (reg.size() != want) {
        throw std::invalid_argument(what + ": expected " + std::to_string(want) +
                                    " qubits, got " + std::to_string(reg.size()));
    }
}

// A gate whose targets are [controls..., result...] and whose action XORs
// value(control pattern) into the result register.
template <class ValueFn>
GateSpec xor_into(std::string name, const QubitList &controls, const QubitList &result,
                  ValueFn value) {
    auto targets = concat({&controls, &result});
    require_disjoint(targets, name);
    const auto width = static_cast<unsigned>(result.size());
    const auto mask = bits::low_mask(width);
    return GateSpec::permutation(std::move(name), std::move(targets),
                                 [=](bits::Index p) -> bits::Index {
                                     const auto ctrl = p >> width;
                                     return p ^ (value(ctrl) & mask);
                                 });
}

inline std::vector<double> signed_ratio_cosines(unsigned width, unsigned scale_exponent) {
    std::vector<double> cosines(bits::pow2(width));
    const auto scale = static_cast<double>(bits::pow2(scale_exponent));
    for (bits::Index p = 0; p < cosines.size(); ++p) {
        cosines[p] = static_cast<double>(bits::from_twos_complement(p, width)) / scale;
    }
    return cosines;
}

} // namespace detail

/// |u>|b> -> |u>|b xor f_w(u)>. Serves O, O' and O'': pass-through wires of
/// the primed forms are simply the wires not named here.
inline GateSpec build_oracle(const Decomposition &d, bits::Index w, const QubitList &controls,
                             Qubit target) {
    detail::require_size(controls, d.input_bits(), "oracle controls");
    if (w >= d.num_w()) {
        throw std::invalid_argument("subfunction index out of range");
    }
    const QubitList tgt{target};
    return detail::xor_into("O_f" + bits::to_bitstring(w, d.t()), controls, tgt,
                            [&d, w](bits::Index u) -> bits::Index { return d(w, u) ? 1 : 0; });
}

/// Whole-function oracle |x>|b> -> |x>|b xor f(x)>.
inline GateSpec build_oracle(const BooleanFunction &f, const QubitList &controls,
                             Qubit target) {
    detail::require_size(controls, f.arity(), "oracle controls");
    const QubitList tgt{target};
    return detail::xor_into("O_f", controls, tgt,
                            [&f](bits::Index x) -> bits::Index { return f(x) ? 1 : 0; });
}

inline GateSpec pauli_x(Qubit target) {
    return GateSpec::permutation("X", {target}, [](bits::Index p) { return p ^ 1U; });
}

inline GateSpec cnot(Qubit control, Qubit target) {
    const QubitList c{control};
    const QubitList r{target};
    return detail::xor_into("CNOT", c, r, [](bits::Index p) { return p; });
}

inline GateSpec ccnot(Qubit control_a, Qubit control_b, Qubit target) {
    const QubitList c{control_a, control_b};
    const QubitList r{target};
    return detail::xor_into("CCNOT", c, r, [](bits::Index p) { return p == 3 ? 1 : 0; });
}

/// U: result (t+2 qubits) ^= twos(2^t - 2 * sum a_i) over 2^t control bits.
inline GateSpec build_U(unsigned t, const QubitList &controls, const QubitList &result) {
    if (t < 1) {
        throw std::invalid_argument("U needs t >= 1");
    }
    detail::require_size(controls, bits::pow2(t), "U controls");
    detail::require_size(result, t + 2, "U result register");
    const auto width = t + 2;
    const auto pow_t = static_cast<std::int64_t>(bits::pow2(t));
    return detail::xor_into("U", controls, result, [=](bits::Index a) {
        const auto delta = pow_t - 2 * static_cast<std::int64_t>(bits::popcount(a));
        return bits::to_twos_complement(delta, width);
    });
}

/// A: result (t qubits) ^= sum of 2^{t-1} control bits. Controls may be
/// spread across the register (one per wire triple).
inline GateSpec build_A(unsigned t, const QubitList &controls, const QubitList &result,
                        std::string name = "A") {
    if (t < 1) {
        throw std::invalid_argument("A needs t >= 1");
    }
    detail::require_size(controls, bits::pow2(t - 1), name + " controls");
    detail::require_size(result, t, name + " result register");
    return detail::xor_into(std::move(name), controls, result,
                            [](bits::Index a) -> bits::Index { return bits::popcount(a); });
}

/// A': A acting on one contiguous block of 2^{t-1} + t wires.
inline GateSpec build_A_prime(unsigned t, const QubitList &controls, const QubitList &result) {
    const auto wires = detail::concat({&controls, &result});
    for (std::size_t i = 1; i < wires.size(); ++i) {
        if (wires[i] != wires[i - 1] + 1) {
            throw std::invalid_argument("A' needs contiguous control and result wires");
        }
    }
    return build_A(t, controls, result, "A'");
}

/// V: c (t+1 qubits) ^= twos(2^{t-1} - a - 2b) for t-bit operands a, b.
inline GateSpec build_V(unsigned t, const QubitList &a, const QubitList &b,
                        const QubitList &result) {
    if (t < 1) {
        throw std::invalid_argument("V needs t >= 1");
    }
    detail::require_size(a, t, "V operand a");
    detail::require_size(b, t, "V operand b");
    detail::require_size(result, t + 1, "V result register");
    const auto operands = detail::concat({&a, &b});
    const auto width = t + 1;
    const auto half = static_cast<std::int64_t>(bits::pow2(t - 1));
    return detail::xor_into("V", operands, result, [=](bits::Index ab) {
        const auto av = static_cast<std::int64_t>(ab >> t);
        const auto bv = static_cast<std::int64_t>(ab & bits::low_mask(t));
        return bits::to_twos_complement(half - av - 2 * bv, width);
    });
}

/// R: rotate `target` by cos(theta) = clamp(signed(d) / 2^t) for the
/// (t+2)-qubit register d.
inline GateSpec build_R(unsigned t, const QubitList &d, Qubit target) {
    detail::require_size(d, t + 2, "R control register");
    return GateSpec::block_rotation("R", d, target, detail::signed_ratio_cosines(t + 2, t));
}

/// R': rotate `target` by cos(theta) = clamp(signed(d) / 2^{t-1}) for the
/// (t+1)-qubit register d.
inline GateSpec build_Rprime(unsigned t, const QubitList &d, Qubit target) {
    if (t < 1) {
        throw std::invalid_argument("R' needs t >= 1");
    }
    detail::require_size(d, t + 1, "R' control register");
    return GateSpec::block_rotation("R'", d, target, detail::signed_ratio_cosines(t + 1, t - 1));
}

/// Number of consecutive wires spanned by the gate as laid out.
inline unsigned span_width(const GateSpec &g) {
    const auto w = g.wires();
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return *hi - *lo + 1;
}

} // namespace djsim::gates
