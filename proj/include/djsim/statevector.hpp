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
 * Dense statevector over Q qubits and the four gate kinds the DJ circuits
 * need: Hadamard layers, basis permutations, block rotations and Pauli Z.
 *
 * Qubit 0 is the top circuit wire and the most significant bit of the basis
 * index, so a register of consecutive wires reads as a big-endian field.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace djsim {

using Complex = std::complex<double>;
using Qubit = unsigned;
using QubitList = std::vector<Qubit>;

inline constexpr unsigned kMaxQubits = 26;
inline constexpr unsigned kMaxVerifiedPermutationBits = 20;

enum class GateKind { Hadamard, BasisPermutation, BlockRotation, PauliZ };

namespace detail {

inline void require_distinct(const QubitList &qubits, const char *what) {
    auto sorted = qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(what) + ": qubit indices must be distinct");
    }
}

// scatter[p] places the bits of pattern p (first listed qubit = MSB) onto
// their basis-index positions in a Q-qubit register.
inline std::vector<bits::Index> scatter_table(const QubitList &qubits, unsigned q) {
    const auto k = static_cast<unsigned>(qubits.size());
    std::vector<bits::Index> table(bits::pow2(k), 0);
    for (bits::Index p = 0; p < table.size(); ++p) {
        bits::Index idx = 0;
        for (unsigned j = 0; j < k; ++j) {
            if ((p >> (k - 1 - j)) & 1U) {
                idx |= bits::pow2(q - 1 - qubits[j]);
            }
        }
        table[p] = idx;
    }
    return table;
}

// Basis-index bits of `pattern` (first listed qubit = MSB).
inline bits::Index scatter_pattern(const QubitList &qubits, unsigned q, bits::Index pattern) {
    const auto k = static_cast<unsigned>(qubits.size());
    if (pattern >= bits::pow2(k)) {
        throw std::out_of_range("outcome pattern out of range");
    }
    bits::Index idx = 0;
    for (unsigned j = 0; j < k; ++j) {
        if ((pattern >> (k - 1 - j)) & 1U) {
            idx |= bits::pow2(q - 1 - qubits[j]);
        }
    }
    return idx;
}

inline bits::Index qubit_mask(const QubitList &qubits, unsigned q) {
    bits::Index m = 0;
    for (auto b : qubits) {
        m |= bits::pow2(q - 1 - b);
    }
    return m;
}

// Visit every index whose bits lie inside `mask` (including 0).
template <class F> inline void for_each_submask(bits::Index mask, F &&fn) {
    bits::Index r = 0;
    do {
        fn(r);
        r = (r - mask) & mask;
    } while (r != 0);
}

} // namespace detail

/**
 * @brief Immutable description of one gate bound to qubit indices.
 *
 * BasisPermutation carries its action as a table over target-qubit
 * patterns; BlockRotation carries cos(theta) per control pattern and
 * applies [[c, -s], [s, c]] (s = sqrt(1 - c^2) >= 0) to its target.
 */
class GateSpec {
  public:
    static GateSpec hadamard(QubitList qubits, std::string name = "H") {
        detail::require_distinct(qubits, "Hadamard");
        GateSpec g(GateKind::Hadamard, std::move(name));
        g.targets_ = std::move(qubits);
        return g;
    }

    static GateSpec pauli_z(Qubit qubit, std::string name = "Z") {
        GateSpec g(GateKind::PauliZ, std::move(name));
        g.targets_ = {qubit};
        return g;
    }

    /// `action` maps each target pattern (targets[0] = MSB) to its image.
    /// Bijectivity is checked for up to kMaxVerifiedPermutationBits targets.
    static GateSpec permutation(std::string name, QubitList targets,
                                const std::function<bits::Index(bits::Index)> &action) {
        detail::require_distinct(targets, "permutation");
        const auto k = static_cast<unsigned>(targets.size());
        if (k > kMaxQubits) {
            throw std::invalid_argument("permutation acts on too many qubits");
        }
        GateSpec g(GateKind::BasisPermutation, std::move(name));
        g.targets_ = std::move(targets);
        const auto size = bits::pow2(k);
        g.image_.resize(size);
        for (bits::Index p = 0; p < size; ++p) {
            const auto img = action(p);
            if (img >= size) {
                throw std::invalid_argument("permutation '" + g.name_ +
                                            "' maps outside its target patterns");
            }
            g.image_[p] = static_cast<std::uint32_t>(img);
        }
        if (k <= kMaxVerifiedPermutationBits) {
            std::vector<bool> seen(size, false);
            for (auto img : g.image_) {
                if (seen[img]) {
                    throw std::invalid_argument("permutation '" + g.name_ +
                                                "' is not a bijection");
                }
                seen[img] = true;
            }
        }
        g.involution_ = true;
        for (bits::Index p = 0; p < size && g.involution_; ++p) {
            g.involution_ = g.image_[g.image_[p]] == p;
        }
        return g;
    }

    /// One rotation per control pattern; `cosines[p]` is clamped to [-1, 1].
    static GateSpec block_rotation(std::string name, QubitList controls, Qubit target,
                                   std::vector<double> cosines) {
        auto all = controls;
        all.push_back(target);
        detail::require_distinct(all, "block rotation");
        if (cosines.size() != bits::pow2(static_cast<unsigned>(controls.size()))) {
            throw std::invalid_argument("block rotation needs one angle per control pattern");
        }
        GateSpec g(GateKind::BlockRotation, std::move(name));
        g.targets_ = std::move(controls);
        g.rotation_target_ = target;
        g.cos_ = std::move(cosines);
        g.sin_.resize(g.cos_.size());
        for (std::size_t p = 0; p < g.cos_.size(); ++p) {
            g.cos_[p] = std::clamp(g.cos_[p], -1.0, 1.0);
            g.sin_[p] = std::sqrt(std::max(0.0, 1.0 - g.cos_[p] * g.cos_[p]));
        }
        return g;
    }

    [[nodiscard]] GateKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }

    /// Hadamard/Z/permutation: the acted-on qubits. Rotation: the controls.
    [[nodiscard]] const QubitList &targets() const noexcept { return targets_; }
    [[nodiscard]] Qubit rotation_target() const noexcept { return rotation_target_; }

    /// Every wire the gate touches, in layout order.
    [[nodiscard]] QubitList wires() const {
        auto w = targets_;
        if (kind_ == GateKind::BlockRotation) {
            w.push_back(rotation_target_);
        }
        return w;
    }

    [[nodiscard]] bits::Index image(bits::Index pattern) const { return image_.at(pattern); }
    [[nodiscard]] bool is_involution() const noexcept { return involution_; }

    [[nodiscard]] double cosine(bits::Index pattern) const { return cos_.at(pattern); }
    [[nodiscard]] double sine(bits::Index pattern) const { return sin_.at(pattern); }

    [[nodiscard]] Qubit max_qubit() const {
        auto w = wires();
        return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
    }

  private:
    GateSpec(GateKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    friend class StateVector;

    GateKind kind_;
    std::string name_;
    QubitList targets_;
    Qubit rotation_target_{0};
    std::vector<std::uint32_t> image_;
    bool involution_{false};
    std::vector<double> cos_;
    std::vector<double> sin_;
};

struct MeasurementRecord;

inline constexpr double kReportedProbabilityFloor = 1e-15;

class StateVector {
  public:
    /// |0...0> on q qubits.
    static StateVector zero(unsigned q) { return basis(q, 0); }

    static StateVector basis(unsigned q, bits::Index index) {
        check_qubits(q);
        if (index >= bits::pow2(q)) {
            throw std::out_of_range("basis index out of range");
        }
        StateVector s(q);
        s.amps_[index] = 1.0;
        return s;
    }

    static StateVector from_amplitudes(std::vector<Complex> amps) {
        if (amps.empty() || !std::has_single_bit(amps.size())) {
            throw std::invalid_argument("amplitude count must be a power of two");
        }
        const auto q = static_cast<unsigned>(std::countr_zero(amps.size()));
        check_qubits(q);
        StateVector s;
        s.q_ = q;
        s.amps_ = std::move(amps);
        return s;
    }

    [[nodiscard]] unsigned num_qubits() const noexcept { return q_; }
    [[nodiscard]] bits::Index dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex amplitude(bits::Index i) const { return amps_.at(i); }

    [[nodiscard]] double norm_squared() const noexcept {
        double total = 0.0;
        for (const auto &a : amps_) {
            total += std::norm(a);
        }
        return total;
    }

    void normalize() {
        const double n = std::sqrt(norm_squared());
        if (n == 0.0) {
            throw std::domain_error("cannot normalize the zero vector");
        }
        for (auto &a : amps_) {
            a /= n;
        }
    }

    void apply(const GateSpec &g) {
        for (auto w : g.wires()) {
            if (w >= q_) {
                throw std::out_of_range("gate '" + g.name() + "' touches qubit " +
                                        std::to_string(w) + " of a " + std::to_string(q_) +
                                        "-qubit register");
            }
        }
        switch (g.kind_) {
        case GateKind::Hadamard:
            for (auto b : g.targets_) {
                apply_single_hadamard(b);
            }
            break;
        case GateKind::PauliZ:
            apply_z(g.targets_.front());
            break;
        case GateKind::BasisPermutation:
            apply_permutation_kernel(g);
            break;
        case GateKind::BlockRotation:
            apply_rotation_kernel(g);
            break;
        }
    }

    /// Total probability of observing `outcome` on `qubits`.
    [[nodiscard]] double probability_of(const QubitList &qubits, bits::Index outcome) const {
        check_measured(qubits);
        const auto mask = detail::qubit_mask(qubits, q_);
        const auto want = detail::scatter_pattern(qubits, q_, outcome);
        double p = 0.0;
        for (bits::Index i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == want) {
                p += std::norm(amps_[i]);
            }
        }
        return p;
    }

    /// Project onto `outcome` on `qubits` and renormalize.
    [[nodiscard]] StateVector postselect(const QubitList &qubits, bits::Index outcome) const {
        check_measured(qubits);
        const auto mask = detail::qubit_mask(qubits, q_);
        const auto want = detail::scatter_pattern(qubits, q_, outcome);
        StateVector out(q_);
        for (bits::Index i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == want) {
                out.amps_[i] = amps_[i];
            }
        }
        out.normalize();
        return out;
    }

    [[nodiscard]] MeasurementRecord measure(const QubitList &qubits,
                                            bool keep_collapsed = false) const;

    /// Draw one outcome on `qubits` with a seeded generator.
    [[nodiscard]] bits::Index sample(const QubitList &qubits, std::uint64_t seed) const;

  private:
    StateVector() = default;
    explicit StateVector(unsigned q) : q_(q), amps_(bits::pow2(q), Complex{0.0, 0.0}) {}

    static void check_qubits(unsigned q) {
        if (q < 1 || q > kMaxQubits) {
            throw std::out_of_range("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(q));
        }
    }

    void check_measured(const QubitList &qubits) const {
        detail::require_distinct(qubits, "measurement");
        for (auto b : qubits) {
            if (b >= q_) {
                throw std::out_of_range("measured qubit " + std::to_string(b) +
                                        " out of range");
            }
        }
    }

    void apply_single_hadamard(Qubit b) {
        static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
        const auto stride = bits::pow2(q_ - 1 - b);
        for (bits::Index base = 0; base < amps_.size(); base += 2 * stride) {
            for (bits::Index i = base; i < base + stride; ++i) {
                const auto a0 = amps_[i];
                const auto a1 = amps_[i + stride];
                amps_[i] = (a0 + a1) * kInvSqrt2;
                amps_[i + stride] = (a0 - a1) * kInvSqrt2;
            }
        }
    }

    void apply_z(Qubit b) {
        const auto bit = bits::pow2(q_ - 1 - b);
        for (bits::Index i = 0; i < amps_.size(); ++i) {
            if (i & bit) {
                amps_[i] = -amps_[i];
            }
        }
    }

    void apply_permutation_kernel(const GateSpec &g) {
        const auto scatter = detail::scatter_table(g.targets_, q_);
        const auto rest = (amps_.size() - 1) & ~detail::qubit_mask(g.targets_, q_);
        const auto patterns = static_cast<bits::Index>(scatter.size());
        if (g.involution_) {
            std::vector<std::pair<bits::Index, bits::Index>> swaps;
            for (bits::Index p = 0; p < patterns; ++p) {
                const bits::Index img = g.image_[p];
                if (img > p) {
                    swaps.emplace_back(scatter[p], scatter[img]);
                }
            }
            if (swaps.empty()) {
                return;
            }
            detail::for_each_submask(rest, [&](bits::Index r) {
                for (const auto &[a, b] : swaps) {
                    std::swap(amps_[r | a], amps_[r | b]);
                }
            });
            return;
        }
        scratch_.assign(amps_.size(), Complex{0.0, 0.0});
        detail::for_each_submask(rest, [&](bits::Index r) {
            for (bits::Index p = 0; p < patterns; ++p) {
                scratch_[r | scatter[g.image_[p]]] = amps_[r | scatter[p]];
            }
        });
        amps_.swap(scratch_);
    }

    void apply_rotation_kernel(const GateSpec &g) {
        const auto scatter = detail::scatter_table(g.targets_, q_);
        const auto tbit = bits::pow2(q_ - 1 - g.rotation_target_);
        const auto rest = (amps_.size() - 1) & ~(detail::qubit_mask(g.targets_, q_) | tbit);
        const auto patterns = static_cast<bits::Index>(scatter.size());
        detail::for_each_submask(rest, [&](bits::Index r) {
            for (bits::Index p = 0; p < patterns; ++p) {
                const auto i0 = r | scatter[p];
                const auto i1 = i0 | tbit;
                const double c = g.cos_[p];
                const double s = g.sin_[p];
                const auto a0 = amps_[i0];
                const auto a1 = amps_[i1];
                amps_[i0] = c * a0 - s * a1;
                amps_[i1] = s * a0 + c * a1;
            }
        });
    }

    unsigned q_{0};
    std::vector<Complex> amps_;
    std::vector<Complex> scratch_;
};

struct MeasurementRecord {
    QubitList measured_qubits;
    /// Outcome pattern (first measured qubit = MSB) -> probability.
    std::map<bits::Index, double> distribution;
    /// Renormalized post-measurement states, when requested.
    std::map<bits::Index, StateVector> collapsed;

    [[nodiscard]] std::string outcome_string(bits::Index outcome) const {
        return bits::to_bitstring(outcome, static_cast<unsigned>(measured_qubits.size()));
    }

    [[nodiscard]] double probability(bits::Index outcome) const {
        auto it = distribution.find(outcome);
        return it == distribution.end() ? 0.0 : it->second;
    }
};

inline MeasurementRecord StateVector::measure(const QubitList &qubits,
                                                 bool keep_collapsed) const {
    check_measured(qubits);
    const auto k = static_cast<unsigned>(qubits.size());
    std::vector<double> probs(bits::pow2(k), 0.0);
    std::vector<unsigned> shifts(k);
    for (unsigned j = 0; j < k; ++j) {
        shifts[j] = q_ - 1 - qubits[j];
    }
    for (bits::Index i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        if (p == 0.0) {
            continue;
        }
        bits::Index pattern = 0;
        for (unsigned j = 0; j < k; ++j) {
            pattern = (pattern << 1U) | ((i >> shifts[j]) & 1U);
        }
        probs[pattern] += p;
    }
    MeasurementRecord rec;
    rec.measured_qubits = qubits;
    for (bits::Index p = 0; p < probs.size(); ++p) {
        if (probs[p] > kReportedProbabilityFloor) {
            rec.distribution.emplace(p, probs[p]);
            if (keep_collapsed) {
                rec.collapsed.emplace(p, postselect(qubits, p));
            }
        }
    }
    return rec;
}

/// Draw one outcome on `qubits` with a seeded generator.
inline bits::Index StateVector::sample(const QubitList &qubits, std::uint64_t seed) const {
    const auto rec = measure(qubits);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double total = 0.0;
    for (const auto &[o, p] : rec.distribution) {
        total += p;
    }
    const double x = uni(gen) * total;
    double acc = 0.0;
    bits::Index last = 0;
    for (const auto &[o, p] : rec.distribution) {
        acc += p;
        last = o;
        if (x < acc) {
            return o;
        }
    }
    return last;
}

/// Free-function forms of the state operations.
inline StateVector init_zero(unsigned q) { return StateVector::zero(q); }

inline StateVector apply_gate(StateVector s, const GateSpec &g) {
    s.apply(g);
    return s;
}

inline StateVector apply_hadamard(StateVector s, const QubitList &qubits) {
    s.apply(GateSpec::hadamard(qubits));
    return s;
}

inline MeasurementRecord measure(const StateVector &s, const QubitList &qubits,
                                 bool keep_collapsed = false) {
    return s.measure(qubits, keep_collapsed);
}

inline bits::Index sample(const StateVector &s, const QubitList &qubits, std::uint64_t seed) {
    return s.sample(qubits, seed);
}

/// Contiguous wires [first, first + count).
inline QubitList wire_range(Qubit first, unsigned count) {
    QubitList w(count);
    for (unsigned i = 0; i < count; ++i) {
        w[i] = first + i;
    }
    return w;
}

} // namespace djsim
