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
 * Error models of the erroneous baselines, resource accounting and the
 * exhaustive verification harness.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "algorithms.hpp"
#include "bits.hpp"
#include "boolfn.hpp"

namespace djsim {

/// P(DJ on f_w reads 0^{n-t}) = (2^{t+1} k_w / N - 1)^2.
inline double per_node_success_prob(std::uint64_t k_w, unsigned n, unsigned t) {
    if (t >= n) {
        throw std::out_of_range("per-node probability needs t < n");
    }
    const auto cap = bits::pow2(n - t);
    if (k_w > cap) {
        throw std::out_of_range("k_w = " + std::to_string(k_w) + " exceeds N/2^t = " +
                                std::to_string(cap));
    }
    const double x = std::ldexp(static_cast<double>(k_w), static_cast<int>(t) + 1 -
                                                              static_cast<int>(n)) -
                     1.0;
    return x * x;
}

namespace detail {

// Exact for the desk-scale arguments used here (result < 2^53).
inline double binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    if (n <= 62) {
        std::uint64_t c = 1;
        for (std::uint64_t i = 1; i <= k; ++i) {
            c = c * (n - k + i) / i;
        }
        return static_cast<double>(c);
    }
    return std::round(std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                               std::lgamma(static_cast<double>(k) + 1.0) -
                               std::lgamma(static_cast<double>(n - k) + 1.0)));
}

// Visit (k_0, ..., k_{parts-1}) with sum `total`, 0 <= k_w <= cap, in
// lexicographic order.
inline void for_each_configuration(unsigned parts, std::uint64_t total, std::uint64_t cap,
                                   const std::function<void(const std::vector<std::uint64_t> &)> &fn) {
    std::vector<std::uint64_t> k(parts, 0);
    std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned i, std::uint64_t left) {
        if (i + 1 == parts) {
            if (left <= cap) {
                k[i] = left;
                fn(k);
            }
            return;
        }
        const auto rest_cap = cap * (parts - i - 1);
        const auto lo = left > rest_cap ? left - rest_cap : 0;
        for (std::uint64_t v = lo; v <= std::min(cap, left); ++v) {
            k[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, total);
}

} // namespace detail

/// One admissible popcount profile of a balanced function split 2^t ways.
struct Configuration {
    std::vector<std::uint64_t> k;
    double weight{0.0}; ///< fraction of balanced functions with this profile
};

/**
 * @brief Ensemble of balanced functions grouped by subfunction popcounts.
 *
 * weight(k) = prod_w C(N/2^t, k_w) / C(N, N/2). Weights sum to 1.
 */
struct ErrorModel {
    unsigned n{0};
    unsigned t{0};
    std::uint64_t big_n{0};
    std::vector<Configuration> configurations;
};

inline ErrorModel make_error_model(unsigned n, unsigned t) {
    if (t < 1 || t >= n) {
        throw std::invalid_argument("error model needs 1 <= t < n");
    }
    ErrorModel m;
    m.n = n;
    m.t = t;
    m.big_n = bits::pow2(n);
    const auto cap = bits::pow2(n - t);
    const double denom = detail::binomial(m.big_n, m.big_n / 2);
    detail::for_each_configuration(
        static_cast<unsigned>(bits::pow2(t)), m.big_n / 2, cap,
        [&](const std::vector<std::uint64_t> &k) {
            double num = 1.0;
            for (auto kw : k) {
                num *= detail::binomial(cap, kw);
            }
            m.configurations.push_back({k, num / denom});
        });
    return m;
}

/// P(all 2^t nodes read 0^{n-t}) averaged over uniformly random balanced f.
inline double multinode_misid_probability(unsigned n, unsigned t) {
    const auto m = make_error_model(n, t);
    const auto cap = bits::pow2(n - t);
    // Accumulate integer-weighted terms and divide once at the end.
    double acc = 0.0;
    for (const auto &c : m.configurations) {
        double term = 1.0;
        for (auto kw : c.k) {
            term *= detail::binomial(cap, kw) * per_node_success_prob(kw, n, t);
        }
        acc += term;
    }
    return acc / detail::binomial(m.big_n, m.big_n / 2);
}

/// The two-node special case written with factors (4/N)^2 (k - N/4)^2.
inline double two_node_misid_probability(unsigned n) {
    if (n < 2) {
        throw std::invalid_argument("two-node error probability needs n >= 2");
    }
    const auto big_n = bits::pow2(n);
    const auto half = big_n / 2;
    const double quarter = static_cast<double>(big_n) / 4.0;
    const double scale = 16.0 / (static_cast<double>(big_n) * static_cast<double>(big_n));
    double acc = 0.0;
    for (std::uint64_t k0 = 0; k0 <= half; ++k0) {
        const auto k1 = half - k0;
        const double d0 = static_cast<double>(k0) - quarter;
        const double d1 = static_cast<double>(k1) - quarter;
        acc += detail::binomial(half, k0) * detail::binomial(half, k1) * (scale * d0 * d0) *
               (scale * d1 * d1);
    }
    return acc / detail::binomial(big_n, half);
}

struct OperatorWidths {
    unsigned u{0};
    unsigned r{0};
    unsigned a{0};
    unsigned v{0};
    unsigned r_prime{0};
    unsigned a_prime{0};
    unsigned oracle{0};
};

struct AlgorithmResources {
    AlgorithmId algorithm{AlgorithmId::DJ};
    unsigned qubits{0};
    unsigned qubits_beyond_n{0}; ///< qubits - n
    unsigned gates{0};
};

struct ResourceTable {
    unsigned n{0};
    unsigned t{0};
    std::vector<AlgorithmResources> rows;
    OperatorWidths widths;

    [[nodiscard]] const AlgorithmResources &row(AlgorithmId a) const {
        for (const auto &r : rows) {
            if (r.algorithm == a) {
                return r;
            }
        }
        throw std::out_of_range(std::string("no resource row for ") + to_string(a));
    }
};

/// Closed-form qubit and gate counts. The two-node row is t-independent.
inline ResourceTable resource_table(unsigned n, unsigned t) {
    if (t < 1) {
        throw std::invalid_argument("resource table needs t >= 1");
    }
    if (n <= t) {
        throw std::invalid_argument("resource table needs n > t");
    }
    const auto p = static_cast<unsigned>(bits::pow2(t));
    ResourceTable r;
    r.n = n;
    r.t = t;
    const auto row = [n](AlgorithmId a, unsigned extra, unsigned gates) {
        return AlgorithmResources{a, n + extra, extra, gates};
    };
    r.rows = {
        row(AlgorithmId::DJ, 1, 3),
        row(AlgorithmId::TwoNode, 0, 5),
        row(AlgorithmId::RotationU, p + 3, 2 * p + 6),
        row(AlgorithmId::RotationAV, 3 * p / 2 + 2 * t + 2, 4 * p + 10),
    };
    r.widths.u = p + t + 2;
    r.widths.r = t + 3;
    r.widths.a = 3 * p / 2 + t - 1;
    r.widths.v = 3 * t + 1;
    r.widths.r_prime = t + 2;
    r.widths.a_prime = p / 2 + t;
    r.widths.oracle = n - t + 1;
    return r;
}

struct SweepFailure {
    std::string function_id;
    std::string reason;
    double p_correct{0.0};
};

struct VerificationSummary {
    unsigned n{0};
    unsigned t{0};
    AlgorithmId algorithm{AlgorithmId::DJ};
    ALayout a_layout{ALayout::Interleaved};
    std::uint64_t functions_checked{0};
    std::vector<SweepFailure> failures;
    /// Smallest winning-label probability among correctly labeled functions.
    double min_p_correct{1.0};
    /// Smallest ancilla-restoration probability seen (U/R and A/V/R' circuits).
    std::optional<double> min_restoration;
    double wall_time_seconds{0.0};

    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

inline unsigned default_jobs() {
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

struct SweepItem {
    std::optional<SweepFailure> failure;
    double p_correct{1.0};
    std::optional<double> restoration;
};

inline SweepItem check_function(AlgorithmId alg, const BooleanFunction &f, unsigned t,
                                const RunOptions &opts) {
    SweepItem item;
    try {
        const auto r = run_algorithm(alg, f, t, opts);
        item.p_correct = r.p_correct(f.promise());
        item.restoration = r.work_register_zero_probability;
        if (!r.verdict_exact) {
            item.failure = SweepFailure{f.digest(), "not exact", item.p_correct};
        } else if (!matches(r.verdict(), f.promise())) {
            item.failure = SweepFailure{f.digest(), "wrong label", item.p_correct};
        }
    } catch (const std::exception &e) {
        item.failure = SweepFailure{f.digest(), std::string("error: ") + e.what(), 0.0};
    }
    return item;
}

} // namespace detail

/// Run `fn(i)` for i in [0, count) on up to `jobs` threads.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)> &fn) {
    jobs = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&, j] {
            for (std::size_t i = j; i < count; i += jobs) {
                fn(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

/// Run `alg` on every promise function of arity n and check each verdict.
inline VerificationSummary verify_sweep(unsigned n, unsigned t, AlgorithmId alg,
                                        unsigned jobs = 1, RunOptions opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    const auto functions = enumerate_promise_functions(n);
    std::vector<detail::SweepItem> items(functions.size());
    opts.seed.reset();
    parallel_for(functions.size(), jobs, [&](std::size_t i) {
        items[i] = detail::check_function(alg, functions[i], t, opts);
    });

    VerificationSummary s;
    s.n = n;
    s.t = effective_split(alg, t);
    s.algorithm = alg;
    s.a_layout = opts.a_layout;
    s.functions_checked = functions.size();
    for (auto &item : items) {
        if (item.failure) {
            s.failures.push_back(std::move(*item.failure));
        } else {
            s.min_p_correct = std::min(s.min_p_correct, item.p_correct);
        }
        if (item.restoration) {
            s.min_restoration = std::min(s.min_restoration.value_or(1.0), *item.restoration);
        }
    }
    s.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
}

/// Mean simulated p_constant over every balanced function of arity n.
inline double balanced_ensemble_mean(unsigned n, unsigned t, AlgorithmId alg, unsigned jobs = 1) {
    const auto functions = enumerate_promise_functions(n);
    std::vector<double> p(functions.size(), 0.0);
    parallel_for(functions.size(), jobs, [&](std::size_t i) {
        if (functions[i].promise() == Promise::Balanced) {
            p[i] = run_algorithm(alg, functions[i], t).p_constant;
        }
    });
    double sum = 0.0;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        if (functions[i].promise() == Promise::Balanced) {
            sum += p[i];
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

} // namespace djsim
