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
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "djsim/algorithms.hpp"
#include "fixtures.hpp"

using namespace djsim;

namespace {

constexpr double kExact = 1e-12;
constexpr double kClosed = 1e-10;

int bit(const std::string &b, unsigned x) { return b[x] - '0'; }
double sign(int v) { return v ? -1.0 : 1.0; }

// Output-label probabilities evaluated straight from the 0/1 string.
double naive_dj(const std::string &b, unsigned n) {
    double s = 0.0;
    for (unsigned x = 0; x < (1U << n); ++x) {
        s += sign(bit(b, x));
    }
    return s * s / std::ldexp(1.0, 2 * n);
}

double naive_two_node(const std::string &b, unsigned n) {
    double s = 0.0;
    for (unsigned u = 0; u < (1U << (n - 1)); ++u) {
        const int f0 = bit(b, u << 1U);
        const int f1 = bit(b, (u << 1U) | 1U);
        if (f0 == f1) {
            s += sign(f0);
        }
    }
    return s * s / std::ldexp(1.0, 2 * (n - 1));
}

double naive_delta(const std::string &b, unsigned n, unsigned t) {
    double s = 0.0;
    for (unsigned u = 0; u < (1U << (n - t)); ++u) {
        for (unsigned w = 0; w < (1U << t); ++w) {
            s += sign(bit(b, (u << t) | w));
        }
    }
    return s * s / std::ldexp(1.0, 2 * (n - t) + 2 * t);
}

double naive_big_delta(const std::string &b, unsigned n, unsigned t) {
    double s = 0.0;
    for (unsigned u = 0; u < (1U << (n - t)); ++u) {
        for (unsigned wp = 0; wp < (1U << (t - 1)); ++wp) {
            const int lo = bit(b, (u << t) | (2 * wp));
            const int hi = bit(b, (u << t) | (2 * wp + 1));
            if (lo == hi) {
                s += sign(lo);
            }
        }
    }
    return s * s / std::ldexp(1.0, 2 * (n - t) + 2 * (t - 1));
}

double naive_multinode(const std::string &b, unsigned n, unsigned t) {
    double p = 1.0;
    for (unsigned w = 0; w < (1U << t); ++w) {
        double s = 0.0;
        for (unsigned u = 0; u < (1U << (n - t)); ++u) {
            s += sign(bit(b, (u << t) | w));
        }
        p *= s * s / std::ldexp(1.0, 2 * (n - t));
    }
    return p;
}

double naive_four_node(const std::string &b, unsigned n) {
    double s = 0.0;
    for (unsigned u = 0; u < (1U << (n - 2)); ++u) {
        const int f00 = bit(b, u << 2U);
        const int f01 = bit(b, (u << 2U) | 1U);
        const int f10 = bit(b, (u << 2U) | 2U);
        const int f11 = bit(b, (u << 2U) | 3U);
        if ((f00 ^ f01 ^ f10 ^ f11) == 0) {
            s += sign(f00 ^ f01);
        }
    }
    return s * s / std::ldexp(1.0, 2 * (n - 2));
}

void expect_exact_and_correct(const RunReport &r, const BooleanFunction &f) {
    ASSERT_TRUE(r.verdict_exact) << to_string(r.algorithm) << " " << f.digest()
                                 << " p_constant=" << r.p_constant;
    ASSERT_TRUE(matches(r.verdict(), f.promise())) << to_string(r.algorithm) << " " << f.digest();
    EXPECT_NEAR(r.p_constant + r.p_balanced, 1.0, kExact);
    EXPECT_GE(r.p_correct(f.promise()), 1.0 - kExact);
    if (r.work_register_zero_probability) {
        EXPECT_NEAR(*r.work_register_zero_probability, 1.0, kExact);
    }
}

} // namespace

TEST(Dj, Examples) {
    EXPECT_NEAR(run_dj(make_function(3, "00000000")).p_constant, 1.0, kExact);
    for (const auto &f : enumerate_promise_functions(3)) {
        if (f.promise() == Promise::Balanced) {
            EXPECT_NEAR(run_dj(f).p_constant, 0.0, kExact);
        }
    }
    const auto one_hot = make_function(2, {0, 0, 1, 0});
    const auto r = run_dj(one_hot);
    EXPECT_NEAR(r.p_constant, 0.25, kExact);
    EXPECT_FALSE(r.verdict_exact);
}

TEST(Dj, ExhaustiveShape) {
    for (unsigned n = 1; n <= 4; ++n) {
        for (const auto &f : enumerate_promise_functions(n)) {
            const auto r = run_dj(f);
            expect_exact_and_correct(r, f);
            EXPECT_EQ(r.q_used, n + 1);
            EXPECT_EQ(r.oracle_queries, 1U);
            EXPECT_EQ(r.gate_count, 3U);
            EXPECT_NEAR(r.p_constant, naive_dj(f.bit_string(), n), kClosed);
        }
        for (bits::Index x = 0; x < bits::pow2(n); ++x) {
            const auto f = BooleanFunction::from_predicate(n, [x](bits::Index y) { return y <= x; });
            EXPECT_NEAR(run_dj(f).p_constant, naive_dj(f.bit_string(), n), kClosed);
        }
    }
}

TEST(TwoNode, Examples) {
    const auto ones = make_function(3, "11111111");
    const auto r = run_algorithm1(ones);
    ASSERT_FALSE(r.branch_log.empty());
    EXPECT_NEAR(r.branch_log[0].distribution.at("0"), 1.0, kExact);
    EXPECT_NEAR(r.p_constant, 1.0, kExact);

    const auto fx = make_function(3, fixtures::kTwoNodeBits);
    const auto rb = run_algorithm1(fx);
    EXPECT_NEAR(rb.p_constant, 0.0, kExact);
    EXPECT_NEAR(rb.p_balanced, 1.0, kExact);

    // Constant functions never reach the flag = 1 branch.
    for (const auto &c : {make_function(3, "00000000"), ones}) {
        EXPECT_EQ(run_algorithm1(c).branch_log[0].distribution.count("1"), 0U);
    }
    EXPECT_THROW(run_algorithm1(make_function(1, {0, 1})), std::invalid_argument);
}

TEST(TwoNode, ExhaustiveUpToFour) {
    for (unsigned n = 2; n <= 4; ++n) {
        for (const auto &f : enumerate_promise_functions(n)) {
            const auto r = run_algorithm1(f);
            expect_exact_and_correct(r, f);
            EXPECT_EQ(r.q_used, n);
            EXPECT_EQ(r.gate_count, 5U);
            EXPECT_EQ(r.verdict(), run_dj(f).verdict());
            EXPECT_NEAR(r.p_constant, naive_two_node(f.bit_string(), n), kClosed);
        }
    }
}

TEST(RotationU, Examples) {
    const auto zero = make_function(4, std::string(16, '0'));
    EXPECT_NEAR(run_algorithm2(zero, 2).p_constant, 1.0, kExact);

    const auto fx = make_function(4, fixtures::kDeltaBits);
    const auto r = run_algorithm2(fx, 2);
    EXPECT_NEAR(r.branch_log[0].distribution.at("1"), 7.0 / 8.0, kExact);
    EXPECT_NEAR(r.branch_log[0].distribution.at("0"), 1.0 / 8.0, kExact);
    EXPECT_NEAR(r.p_constant, 0.0, kExact);
    EXPECT_THROW(run_algorithm2(fx, 0), std::invalid_argument);
    EXPECT_THROW(run_algorithm2(fx, 4), std::invalid_argument);
}

TEST(RotationU, ExhaustiveUpToFour) {
    for (unsigned n = 2; n <= 4; ++n) {
        for (unsigned t = 1; t < n && t <= 2; ++t) {
            for (const auto &f : enumerate_promise_functions(n)) {
                const auto r = run_algorithm2(f, t);
                expect_exact_and_correct(r, f);
                EXPECT_EQ(r.q_used, n - t + (1U << t) + t + 3);
                EXPECT_EQ(r.gate_count, (2U << t) + 6);
                EXPECT_EQ(r.oracle_queries, 2U << t);
                EXPECT_EQ(r.verdict(), run_dj(f).verdict());
                EXPECT_NEAR(r.p_constant, naive_delta(f.bit_string(), n, t), kClosed);
            }
        }
    }
}

TEST(RotationU, FlagBranchProbability) {
    // P(flag = 0) = sum_u delta(u)^2 / (2^{2t} 2^{n-t}).
    for (const auto &f : fixtures::random_promise_functions(4, 40, 99)) {
        const auto s = compute_stats(Decomposition(f, 2));
        double sq = 0.0;
        for (auto d : s.delta) {
            sq += static_cast<double>(d * d);
        }
        const auto r = run_algorithm2(f, 2);
        const auto &dist = r.branch_log[0].distribution;
        const double p0 = dist.count("0") ? dist.at("0") : 0.0;
        EXPECT_NEAR(p0, sq / 64.0, kExact) << f.digest();
    }
}

TEST(RotationAV, Examples) {
    const auto ones = make_function(4, std::string(16, '1'));
    EXPECT_NEAR(run_algorithm3(ones, 2).p_constant, 1.0, kExact);
    const auto fx = make_function(4, fixtures::kBigDeltaBits);
    const auto r = run_algorithm3(fx, 2);
    EXPECT_NEAR(r.p_constant, 0.0, kExact);
    EXPECT_EQ(r.q_used, 16U);
    EXPECT_EQ(r.gate_count, 26U);
    EXPECT_EQ(r.nodes.size(), 4U);
}

TEST(RotationAV, ExhaustiveSmallSplits) {
    for (unsigned n = 2; n <= 4; ++n) {
        const unsigned t_max = n == 4 ? 1 : n - 1;
        for (unsigned t = 1; t <= t_max; ++t) {
            for (const auto &f : enumerate_promise_functions(n)) {
                const auto r = run_algorithm3(f, t);
                expect_exact_and_correct(r, f);
                EXPECT_EQ(r.q_used, n - t + 3 * (1U << (t - 1)) + 3 * t + 2);
                EXPECT_EQ(r.gate_count, (4U << t) + 10);
                EXPECT_EQ(r.verdict(), run_dj(f).verdict());
                EXPECT_NEAR(r.p_constant, naive_big_delta(f.bit_string(), n, t), kClosed);
            }
        }
    }
}

TEST(RotationAV, SampledFourTwoBothLayouts) {
    for (const auto &f : fixtures::random_promise_functions(4, 40, 7)) {
        const auto a = run_algorithm3(f, 2);
        RunOptions compact;
        compact.a_layout = ALayout::Compact;
        const auto b = run_algorithm3(f, 2, compact);
        expect_exact_and_correct(a, f);
        expect_exact_and_correct(b, f);
        EXPECT_EQ(a.q_used, b.q_used);
        EXPECT_NEAR(a.p_constant, b.p_constant, kExact);
        EXPECT_NEAR(a.p_constant, naive_big_delta(f.bit_string(), 4, 2), kClosed);
    }
}

TEST(LargeSplit, RotationUAtThree) {
    for (const auto &f : fixtures::random_promise_functions(4, 12, 5)) {
        const auto r = run_algorithm2(f, 3);
        expect_exact_and_correct(r, f);
        EXPECT_EQ(r.q_used, 15U);
        EXPECT_EQ(r.gate_count, 22U);
    }
}

TEST(LargeSplit, RotationAVAtThree) {
    // 24 qubits: one constant and one balanced function.
    const auto zero = make_function(4, std::string(16, '0'));
    const auto bal = make_function(4, fixtures::kBigDeltaBits);
    for (const auto &f : {zero, bal}) {
        const auto r = run_algorithm3(f, 3);
        expect_exact_and_correct(r, f);
        EXPECT_EQ(r.q_used, 24U);
        EXPECT_EQ(r.gate_count, 42U);
    }
}

TEST(AvLayout, WireAssignments) {
    for (unsigned t = 1; t <= 3; ++t) {
        for (auto kind : {ALayout::Interleaved, ALayout::Compact}) {
            const auto l = make_av_layout(t + 2, t, kind);
            QubitList all = l.inputs;
            for (const auto *reg : {&l.first, &l.xors, &l.ands, &l.xor_sum, &l.and_sum, &l.delta}) {
                all.insert(all.end(), reg->begin(), reg->end());
            }
            all.push_back(l.flag);
            std::sort(all.begin(), all.end());
            EXPECT_EQ(all, wire_range(0, l.total));
        }
        const auto inter = make_av_layout(t + 2, t, ALayout::Interleaved);
        for (std::size_t j = 0; j < inter.first.size(); ++j) {
            EXPECT_EQ(inter.xors[j], inter.first[j] + 1);
            EXPECT_EQ(inter.ands[j], inter.first[j] + 2);
        }
    }
}

TEST(ErroneousMultinode, Examples) {
    const auto zero = make_function(4, std::string(16, '0'));
    EXPECT_NEAR(run_erroneous_multinode(zero, 2).p_constant, 1.0, kExact);

    // f(uw) = parity(w): balanced, every f_w constant, always misread.
    const auto parity =
        BooleanFunction::from_predicate(4, [](bits::Index x) { return std::popcount(x & 3U) % 2 == 1; });
    ASSERT_EQ(parity.promise(), Promise::Balanced);
    const auto r = run_erroneous_multinode(parity, 2);
    EXPECT_NEAR(r.p_constant, 1.0, kExact);
    EXPECT_TRUE(r.verdict_exact);
    EXPECT_FALSE(matches(r.verdict(), parity.promise()));

    const auto fx = make_function(4, fixtures::kXorCounterexampleBits);
    const Decomposition d(fx, 2);
    std::vector<bits::Index> k;
    for (bits::Index w = 0; w < 4; ++w) {
        k.push_back(d.subfunction_popcount(w));
    }
    EXPECT_EQ(k, (std::vector<bits::Index>{2, 1, 2, 3}));
    double product = 1.0;
    for (auto kw : k) {
        const double x = 8.0 * static_cast<double>(kw) / 16.0 - 1.0;
        product *= x * x;
    }
    const auto rx = run_erroneous_multinode(fx, 2);
    EXPECT_NEAR(rx.p_constant, product, kExact);
    EXPECT_EQ(rx.branch_log.size(), 4U);
    EXPECT_EQ(rx.q_used, 3U);
}

TEST(ErroneousMultinode, MatchesProductFormula) {
    for (unsigned t = 1; t <= 3; ++t) {
        for (const auto &f : enumerate_promise_functions(4)) {
            const auto r = run_erroneous_multinode(f, t);
            EXPECT_NEAR(r.p_constant, naive_multinode(f.bit_string(), 4, t), kExact);
        }
    }
}

TEST(ErroneousFourNode, Examples) {
    const auto fx = make_function(4, fixtures::kXorCounterexampleBits);
    const auto r = run_erroneous_4node_xor(fx);
    EXPECT_NEAR(r.p_constant, 0.25, kExact);
    EXPECT_EQ(r.q_used, 3U);
    EXPECT_EQ(r.gate_count, 7U);
    for (const auto &c : {make_function(4, std::string(16, '0')), make_function(4, std::string(16, '1'))}) {
        EXPECT_NEAR(run_erroneous_4node_xor(c).p_constant, 1.0, kExact);
    }
    EXPECT_THROW(run_erroneous_4node_xor(make_function(2, "0110")), std::invalid_argument);
}

TEST(ErroneousFourNode, MatchesXorKernelFormula) {
    for (unsigned n = 3; n <= 4; ++n) {
        for (const auto &f : enumerate_promise_functions(n)) {
            EXPECT_NEAR(run_erroneous_4node_xor(f).p_constant, naive_four_node(f.bit_string(), n), kExact);
        }
    }
}

TEST(ProbabilityOracle, AgreesWithSimulation) {
    for (const auto &f : fixtures::random_promise_functions(4, 60, 1234)) {
        for (auto [alg, t] : {std::pair{AlgorithmId::DJ, 0U}, {AlgorithmId::TwoNode, 1U},
                              {AlgorithmId::RotationU, 1U}, {AlgorithmId::RotationU, 2U},
                              {AlgorithmId::RotationAV, 1U}, {AlgorithmId::ErroneousMultinode, 2U},
                              {AlgorithmId::ErroneousFourNode, 2U}}) {
            const auto r = run_algorithm(alg, f, t);
            const auto check = probability_oracle(r, f, r.t);
            EXPECT_TRUE(check.agrees(kClosed)) << to_string(alg) << " " << f.digest();
        }
    }
    const auto ones = make_function(3, "11111111");
    const auto check = probability_oracle(run_algorithm1(ones), ones, 1);
    EXPECT_NEAR(check.closed_form, 1.0, kExact);
    EXPECT_NEAR(check.simulated, 1.0, kExact);
}

TEST(ProbabilityOracle, NonPromiseInputs) {
    const auto f = make_function(4, "1000000000000110");
    for (unsigned t = 1; t <= 2; ++t) {
        for (auto alg : {AlgorithmId::RotationU, AlgorithmId::RotationAV}) {
            const auto r = run_algorithm(alg, f, t);
            EXPECT_TRUE(probability_oracle(r, f, t).agrees(kClosed)) << to_string(alg);
            EXPECT_NEAR(r.p_constant + r.p_balanced, 1.0, kExact);
        }
    }
}

TEST(Sampling, DeterministicAndConsistent) {
    RunOptions opts;
    opts.seed = 17;
    for (const auto &f : fixtures::random_promise_functions(3, 20, 3)) {
        const auto a = run_algorithm2(f, 1, opts);
        const auto b = run_algorithm2(f, 1, opts);
        ASSERT_TRUE(a.sampled_verdict.has_value());
        EXPECT_EQ(a.sampled_verdict, b.sampled_verdict);
        EXPECT_TRUE(matches(*a.sampled_verdict, f.promise()));
        EXPECT_TRUE(matches(*run_dj(f, opts).sampled_verdict, f.promise()));
    }
    EXPECT_FALSE(run_dj(make_function(2, "0110")).sampled_verdict.has_value());
}

TEST(AlgorithmIds, RoundTrip) {
    for (auto a : {AlgorithmId::DJ, AlgorithmId::TwoNode, AlgorithmId::RotationU,
                   AlgorithmId::RotationAV, AlgorithmId::ErroneousMultinode,
                   AlgorithmId::ErroneousFourNode}) {
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    }
    EXPECT_FALSE(parse_algorithm("alg9").has_value());
}
