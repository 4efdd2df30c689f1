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
 * Boolean promise functions, their split into subfunctions f_w(u) = f(uw),
 * and the structural statistics used to tell constant from balanced.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"

namespace djsim {

enum class Promise { Constant, Balanced, Unknown };

/// Outcome of a structural classifier. PromiseViolated is an ordinary
/// result: the erroneous baselines and property tests feed such tables.
enum class Verdict { Constant, Balanced, PromiseViolated };

inline const char *to_string(Promise p) {
    switch (p) {
    case Promise::Constant:
        return "constant";
    case Promise::Balanced:
        return "balanced";
    case Promise::Unknown:
        break;
    }
    return "unknown";
}

inline const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Constant:
        return "constant";
    case Verdict::Balanced:
        return "balanced";
    case Verdict::PromiseViolated:
        break;
    }
    return "promise violated";
}

/// True iff `v` names the same label as the promise `p`.
inline bool matches(Verdict v, Promise p) {
    return (v == Verdict::Constant && p == Promise::Constant) ||
           (v == Verdict::Balanced && p == Promise::Balanced);
}

inline constexpr unsigned kMaxArity = 24;
inline constexpr unsigned kMaxEnumerableArity = 5;

/**
 * @brief Truth table of f: {0,1}^n -> {0,1}.
 *
 * Entry x holds f(x), where x is the integer whose big-endian binary
 * expansion is the input string. Immutable after construction.
 */
class BooleanFunction {
  public:
    BooleanFunction(unsigned n, std::span<const std::uint8_t> table) : n_(n) {
        check_arity(n);
        if (table.size() != bits::pow2(n)) {
            throw std::invalid_argument("truth table has " + std::to_string(table.size()) +
                                        " entries, expected 2^" + std::to_string(n) + " = " +
                                        std::to_string(bits::pow2(n)));
        }
        words_.assign(word_count(n), 0);
        for (std::size_t x = 0; x < table.size(); ++x) {
            if (table[x] > 1) {
                throw std::invalid_argument("truth table entry " + std::to_string(x) +
                                            " is not 0 or 1");
            }
            if (table[x] != 0) {
                words_[x / 64] |= bits::Index{1} << (x % 64);
            }
        }
        finish();
    }

    /// Build from a word-packed table: bit x of the packed value is f(x).
    static BooleanFunction from_packed(unsigned n, std::vector<std::uint64_t> words) {
        check_arity(n);
        if (words.size() != word_count(n)) {
            throw std::invalid_argument("packed table has wrong word count");
        }
        if (n < 6) {
            words[0] &= bits::low_mask(1U << n);
        }
        BooleanFunction f;
        f.n_ = n;
        f.words_ = std::move(words);
        f.finish();
        return f;
    }

    /// Build an arity-n table (n <= 6) whose bit x of `packed` is f(x).
    static BooleanFunction from_integer(unsigned n, std::uint64_t packed) {
        if (n > 6) {
            throw std::invalid_argument("from_integer supports n <= 6");
        }
        return from_packed(n, {packed});
    }

    /// Build from a characteristic function evaluated on every input.
    static BooleanFunction from_predicate(unsigned n,
                                          const std::function<bool(bits::Index)> &pred) {
        check_arity(n);
        std::vector<std::uint64_t> words(word_count(n), 0);
        for (bits::Index x = 0; x < bits::pow2(n); ++x) {
            if (pred(x)) {
                words[x / 64] |= bits::Index{1} << (x % 64);
            }
        }
        return from_packed(n, std::move(words));
    }

    [[nodiscard]] unsigned arity() const noexcept { return n_; }
    [[nodiscard]] bits::Index size() const noexcept { return bits::pow2(n_); }
    [[nodiscard]] Promise promise() const noexcept { return promise_; }
    [[nodiscard]] bits::Index popcount() const noexcept { return ones_; }

    [[nodiscard]] bool operator()(bits::Index x) const noexcept {
        return ((words_[x / 64] >> (x % 64)) & 1U) != 0;
    }

    [[nodiscard]] std::span<const std::uint64_t> packed() const noexcept { return words_; }

    /// '0'/'1' string, index 0 first.
    [[nodiscard]] std::string bit_string() const {
        std::string s(size(), '0');
        for (bits::Index x = 0; x < size(); ++x) {
            if ((*this)(x)) {
                s[x] = '1';
            }
        }
        return s;
    }

    /// Hex rendering of bit_string() read as one big-endian binary number.
    /// Requires n >= 2.
    [[nodiscard]] std::string hex_string() const {
        if (n_ < 2) {
            throw std::invalid_argument("hex form needs n >= 2");
        }
        static constexpr char kDigits[] = "0123456789abcdef";
        std::string s(size() / 4, '0');
        for (bits::Index i = 0; i < s.size(); ++i) {
            unsigned nibble = 0;
            for (unsigned j = 0; j < 4; ++j) {
                nibble = (nibble << 1U) | ((*this)(4 * i + j) ? 1U : 0U);
            }
            s[i] = kDigits[nibble];
        }
        return s;
    }

    /// Short stable identifier used in reports, e.g. "n4:a5b4".
    [[nodiscard]] std::string digest() const {
        if (n_ < 2) {
            return "n" + std::to_string(n_) + ":b" + bit_string();
        }
        if (n_ <= 8) {
            return "n" + std::to_string(n_) + ":" + hex_string();
        }
        std::uint64_t h = 1469598103934665603ULL;
        for (auto w : words_) {
            for (int b = 0; b < 8; ++b) {
                h ^= (w >> (8 * b)) & 0xffU;
                h *= 1099511628211ULL;
            }
        }
        static constexpr char kDigits[] = "0123456789abcdef";
        std::string hex(16, '0');
        for (int i = 15; i >= 0; --i, h >>= 4U) {
            hex[static_cast<std::size_t>(i)] = kDigits[h & 0xfU];
        }
        return "n" + std::to_string(n_) + ":fnv" + hex;
    }

    friend bool operator==(const BooleanFunction &a, const BooleanFunction &b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

  private:
    BooleanFunction() = default;

    static void check_arity(unsigned n) {
        if (n < 1 || n > kMaxArity) {
            throw std::invalid_argument("arity must be in [1, " + std::to_string(kMaxArity) +
                                        "], got " + std::to_string(n));
        }
    }

    static std::size_t word_count(unsigned n) { return n <= 6 ? 1 : bits::pow2(n - 6); }

    void finish() {
        ones_ = 0;
        for (auto w : words_) {
            ones_ += bits::popcount(w);
        }
        if (ones_ == 0 || ones_ == size()) {
            promise_ = Promise::Constant;
        } else if (2 * ones_ == size()) {
            promise_ = Promise::Balanced;
        } else {
            promise_ = Promise::Unknown;
        }
    }

    unsigned n_{0};
    std::vector<std::uint64_t> words_;
    bits::Index ones_{0};
    Promise promise_{Promise::Unknown};
};

inline BooleanFunction make_function(unsigned n, std::span<const std::uint8_t> table) {
    return BooleanFunction(n, table);
}

inline BooleanFunction make_function(unsigned n, std::initializer_list<std::uint8_t> table) {
    return BooleanFunction(n, std::span<const std::uint8_t>(table.begin(), table.size()));
}

/// Parse a '0'/'1' string, index 0 first.
inline BooleanFunction make_function(unsigned n, std::string_view bit_chars) {
    std::vector<std::uint8_t> table;
    table.reserve(bit_chars.size());
    for (char c : bit_chars) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument(std::string("bit string contains '") + c + "'");
        }
        table.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BooleanFunction(n, table);
}

/**
 * @brief Streams every constant-or-balanced function of arity n.
 *
 * Order: all-zero, all-one, then balanced tables in ascending order of the
 * packed table integer (bit x = f(x)). Each call to next() is O(1).
 */
class PromiseEnumerator {
  public:
    explicit PromiseEnumerator(unsigned n) : n_(n) {
        if (n < 1 || n > kMaxEnumerableArity) {
            throw std::invalid_argument(
                "exhaustive enumeration supports 1 <= n <= " +
                std::to_string(kMaxEnumerableArity) + "; use sampled mode for n = " +
                std::to_string(n));
        }
        const unsigned size = 1U << n;
        full_ = bits::low_mask(size);
        first_balanced_ = bits::low_mask(size / 2);
        last_balanced_ = first_balanced_ << (size / 2);
    }

    /// Total count: 2 + C(2^n, 2^{n-1}).
    [[nodiscard]] std::uint64_t count() const {
        const std::uint64_t size = 1ULL << n_;
        std::uint64_t c = 1;
        for (std::uint64_t i = 1; i <= size / 2; ++i) {
            c = c * (size / 2 + i) / i;
        }
        return 2 + c;
    }

    std::optional<BooleanFunction> next() {
        switch (stage_) {
        case 0:
            stage_ = 1;
            return BooleanFunction::from_integer(n_, 0);
        case 1:
            stage_ = 2;
            current_ = first_balanced_;
            return BooleanFunction::from_integer(n_, full_);
        case 2: {
            const auto out = current_;
            if (out == last_balanced_) {
                stage_ = 3;
            } else {
                // Gosper's hack: next larger integer with the same popcount.
                const auto c = out & (~out + 1);
                const auto r = out + c;
                current_ = (((r ^ out) >> 2U) / c) | r;
            }
            return BooleanFunction::from_integer(n_, out);
        }
        default:
            return std::nullopt;
        }
    }

    void reset() { stage_ = 0; }

  private:
    unsigned n_;
    int stage_{0};
    std::uint64_t full_{0};
    std::uint64_t first_balanced_{0};
    std::uint64_t last_balanced_{0};
    std::uint64_t current_{0};
};

inline std::vector<BooleanFunction> enumerate_promise_functions(unsigned n) {
    PromiseEnumerator e(n);
    std::vector<BooleanFunction> out;
    out.reserve(e.count());
    while (auto f = e.next()) {
        out.push_back(std::move(*f));
    }
    return out;
}

/**
 * @brief Non-owning view of f as 2^t subfunctions f_w(u) = f(uw).
 *
 * u occupies the high n-t bits of the table index and w the low t bits, so
 * f_w(u) = table[(u << t) | w]. The base function must outlive the view.
 */
class Decomposition {
  public:
    Decomposition(const BooleanFunction &base, unsigned t) : base_(&base), t_(t) {
        if (t < 1 || t >= base.arity()) {
            throw std::invalid_argument("split size t must satisfy 1 <= t < n (n = " +
                                        std::to_string(base.arity()) +
                                        ", t = " + std::to_string(t) + ")");
        }
    }

    [[nodiscard]] const BooleanFunction &base() const noexcept { return *base_; }
    [[nodiscard]] unsigned n() const noexcept { return base_->arity(); }
    [[nodiscard]] unsigned t() const noexcept { return t_; }
    [[nodiscard]] unsigned input_bits() const noexcept { return n() - t_; }
    [[nodiscard]] bits::Index num_u() const noexcept { return bits::pow2(n() - t_); }
    [[nodiscard]] bits::Index num_w() const noexcept { return bits::pow2(t_); }

    [[nodiscard]] bool operator()(bits::Index w, bits::Index u) const noexcept {
        return (*base_)((u << t_) | w);
    }

    /// k_w: number of u with f_w(u) = 1.
    [[nodiscard]] bits::Index subfunction_popcount(bits::Index w) const noexcept {
        bits::Index k = 0;
        for (bits::Index u = 0; u < num_u(); ++u) {
            k += (*this)(w, u) ? 1 : 0;
        }
        return k;
    }

  private:
    const BooleanFunction *base_;
    unsigned t_;
};

/// Two-subfunction counters; only meaningful for t = 1.
struct TwoNodeCounters {
    std::int64_t b00{0}, b01{0}, b10{0}, b11{0};
    std::int64_t c00{0}, c01{0}, c10{0}, c11{0};
    std::int64_t m{0};
};

struct StructureStats {
    unsigned n{0};
    unsigned t{0};
    std::vector<std::int64_t> delta;     ///< 2^t - 2 * sum_w f_w(u)
    std::vector<std::int64_t> big_delta; ///< E00(u) - E11(u)
    std::optional<TwoNodeCounters> two_node;
    // Pair counters over w' for the pairs (f_{w'0}, f_{w'1}).
    std::vector<std::int64_t> e00, e01, e10, e11;
    std::vector<std::int64_t> k; ///< E01(u) + E10(u)
    std::int64_t d_total{0};     ///< sum_u E00(u) + E11(u)
};

inline StructureStats compute_stats(const Decomposition &d) {
    StructureStats s;
    s.n = d.n();
    s.t = d.t();
    const auto nu = d.num_u();
    const auto nw = d.num_w();
    const auto pow_t = static_cast<std::int64_t>(nw);
    s.delta.resize(nu);
    s.big_delta.resize(nu);
    s.e00.resize(nu);
    s.e01.resize(nu);
    s.e10.resize(nu);
    s.e11.resize(nu);
    s.k.resize(nu);

    for (bits::Index u = 0; u < nu; ++u) {
        std::int64_t ones = 0;
        for (bits::Index w = 0; w < nw; ++w) {
            ones += d(w, u) ? 1 : 0;
        }
        s.delta[u] = pow_t - 2 * ones;

        for (bits::Index wp = 0; wp < nw / 2; ++wp) {
            const bool lo = d(2 * wp, u);
            const bool hi = d(2 * wp + 1, u);
            if (!lo && !hi) {
                ++s.e00[u];
            } else if (!lo && hi) {
                ++s.e01[u];
            } else if (lo && !hi) {
                ++s.e10[u];
            } else {
                ++s.e11[u];
            }
        }
        s.k[u] = s.e01[u] + s.e10[u];
        s.big_delta[u] = s.e00[u] - s.e11[u];
        s.d_total += s.e00[u] + s.e11[u];
    }

    if (d.t() == 1) {
        TwoNodeCounters c;
        for (bits::Index u = 0; u < nu; ++u) {
            const bool f0 = d(0, u);
            const bool f1 = d(1, u);
            (f0 ? c.c01 : c.c00) += 1;
            (f1 ? c.c11 : c.c10) += 1;
            if (!f0 && !f1) {
                ++c.b00;
            } else if (!f0 && f1) {
                ++c.b01;
            } else if (f0 && !f1) {
                ++c.b10;
            } else {
                ++c.b11;
            }
        }
        c.m = c.b00 + c.b11;
        s.two_node = c;
    }
    return s;
}

/// Constant iff C00 = C10 = 2^{n-1} or C01 = C11 = 2^{n-1};
/// balanced iff B00 = B11 = M/2. Requires t = 1 stats.
inline Verdict classify_counters(const StructureStats &s) {
    if (!s.two_node) {
        throw std::invalid_argument("two-node classifier needs stats from a t = 1 split");
    }
    const auto &c = *s.two_node;
    const auto half = static_cast<std::int64_t>(bits::pow2(s.n - 1));
    if ((c.c00 == half && c.c10 == half) || (c.c01 == half && c.c11 == half)) {
        return Verdict::Constant;
    }
    if (2 * c.b00 == c.m && 2 * c.b11 == c.m) {
        return Verdict::Balanced;
    }
    return Verdict::PromiseViolated;
}

namespace detail {

inline Verdict classify_by_statistic(const std::vector<std::int64_t> &values,
                                     std::int64_t extreme) {
    bool all_pos = true;
    bool all_neg = true;
    std::int64_t sum = 0;
    for (auto v : values) {
        all_pos = all_pos && v == extreme;
        all_neg = all_neg && v == -extreme;
        sum += v;
    }
    if (all_pos || all_neg) {
        return Verdict::Constant;
    }
    if (sum == 0) {
        return Verdict::Balanced;
    }
    return Verdict::PromiseViolated;
}

} // namespace detail

/// Constant iff delta(u) = 2^t for all u or -2^t for all u;
/// balanced iff sum_u delta(u) = 0.
inline Verdict classify_delta(const StructureStats &s) {
    return detail::classify_by_statistic(s.delta,
                                         static_cast<std::int64_t>(bits::pow2(s.t)));
}

/// Same shape as classify_delta on Delta(u) with extreme 2^{t-1}.
inline Verdict classify_big_delta(const StructureStats &s) {
    return detail::classify_by_statistic(s.big_delta,
                                         static_cast<std::int64_t>(bits::pow2(s.t - 1)));
}

/// A u at which some balancedness-forcing condition holds.
struct Witness {
    bits::Index u{0};
    bool xor_pair{false};  ///< some f_{w'0}(u) != f_{w'1}(u)
    bool delta{false};     ///< |delta(u)| != 2^t
    bool big_delta{false}; ///< |Delta(u)| != 2^{t-1}
};

/// Smallest u witnessing any of the three conditions, if one exists.
inline std::optional<Witness> find_witness(const Decomposition &d) {
    const auto pow_t = static_cast<std::int64_t>(d.num_w());
    for (bits::Index u = 0; u < d.num_u(); ++u) {
        Witness w{u, false, false, false};
        std::int64_t ones = 0;
        std::int64_t e00 = 0;
        std::int64_t e11 = 0;
        for (bits::Index wp = 0; wp < d.num_w() / 2; ++wp) {
            const bool lo = d(2 * wp, u);
            const bool hi = d(2 * wp + 1, u);
            ones += (lo ? 1 : 0) + (hi ? 1 : 0);
            w.xor_pair = w.xor_pair || lo != hi;
            e00 += (!lo && !hi) ? 1 : 0;
            e11 += (lo && hi) ? 1 : 0;
        }
        const auto delta = pow_t - 2 * ones;
        const auto big_delta = e00 - e11;
        w.delta = delta != pow_t && delta != -pow_t;
        w.big_delta = big_delta != pow_t / 2 && big_delta != -pow_t / 2;
        if (w.xor_pair || w.delta || w.big_delta) {
            return w;
        }
    }
    return std::nullopt;
}

} // namespace djsim
