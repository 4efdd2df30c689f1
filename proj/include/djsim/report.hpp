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
 * JSON, CSV and plain-text renderings of reports.
 *
 * Numbers are rounded to 12 significant digits. Probabilities within
 * 1e-12 of 0 or 1 are snapped to 0.0 / 1.0 and flagged "exact". CSV cells
 * are produced by the same number formatter as JSON, so both carry the
 * same numeric payload.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algorithms.hpp"
#include "analysis.hpp"
#include "boolfn.hpp"

namespace djsim::report {

using nlohmann::json;

inline constexpr int kSignificantDigits = 12;
inline constexpr double kSnapTolerance = 1e-12;

inline double round_significant(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    return std::strtod(buf, nullptr);
}

inline bool is_exact_probability(double p) {
    return std::abs(p) < kSnapTolerance || std::abs(p - 1.0) < kSnapTolerance;
}

inline double snap_probability(double p) {
    if (std::abs(p) < kSnapTolerance) {
        return 0.0;
    }
    if (std::abs(p - 1.0) < kSnapTolerance) {
        return 1.0;
    }
    return round_significant(p);
}

inline json number(double x) { return round_significant(x); }
inline json probability(double p) { return snap_probability(p); }

/// Render a JSON scalar as a CSV cell.
inline std::string cell(const json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c;
            if (c == '"') {
                q += '"';
            }
        }
        return q + "\"";
    }
    return j.dump();
}

/// CSV with one header row; every record must carry the same keys.
inline std::string to_csv(const std::vector<std::string> &columns, const std::vector<json> &rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &r : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << (i ? "," : "") << (r.contains(columns[i]) ? cell(r.at(columns[i])) : "");
        }
        out << '\n';
    }
    return out.str();
}

/// Aligned "key  value" lines for a flat JSON object.
inline std::string to_table(const json &flat) {
    std::size_t width = 0;
    for (const auto &[k, v] : flat.items()) {
        width = std::max(width, k.size());
    }
    std::ostringstream out;
    for (const auto &[k, v] : flat.items()) {
        out << k << std::string(width - k.size() + 2, ' ')
            << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    return out.str();
}

inline const char *to_string(ALayout l) {
    return l == ALayout::Interleaved ? "interleaved" : "compact";
}

inline json gate_weights() {
    return {{"H", 1},    {"O", 1}, {"Z", 1}, {"CNOT", 1}, {"CCNOT", 1}, {"U", 1},
            {"A", 1},    {"A'", 1}, {"V", 1}, {"R", 2},    {"R'", 2}};
}

inline json qubits_json(const QubitList &q) { return json(q); }

/// Headline fields of a run, suitable for one CSV row.
inline json run_summary(const RunReport &r) {
    json j;
    j["algorithm"] = djsim::to_string(r.algorithm);
    j["function_id"] = r.function_id;
    j["n"] = r.n;
    j["t"] = r.t;
    j["q_used"] = r.q_used;
    j["gate_count"] = r.gate_count;
    j["oracle_queries"] = r.oracle_queries;
    j["p_constant"] = probability(r.p_constant);
    j["p_constant_exact"] = is_exact_probability(r.p_constant);
    j["p_balanced"] = probability(r.p_balanced);
    j["p_balanced_exact"] = is_exact_probability(r.p_balanced);
    j["verdict"] = djsim::to_string(r.verdict());
    j["verdict_exact"] = r.verdict_exact;
    return j;
}

inline json to_json(const RunReport &r) {
    auto j = run_summary(r);
    if (r.algorithm == AlgorithmId::RotationAV) {
        j["a_layout"] = to_string(r.a_layout);
    }
    if (r.work_register_zero_probability) {
        j["work_register_zero_probability"] = probability(*r.work_register_zero_probability);
    }
    if (r.sampled_verdict) {
        j["sampled_verdict"] = djsim::to_string(*r.sampled_verdict);
    }
    json log = json::array();
    for (const auto &b : r.branch_log) {
        json dist = json::object();
        for (const auto &[o, p] : b.distribution) {
            dist[o] = probability(p);
        }
        log.push_back({{"label", b.label}, {"qubits", qubits_json(b.measured_qubits)},
                       {"distribution", dist}});
    }
    j["branch_log"] = log;
    json nodes = json::array();
    for (const auto &nd : r.nodes) {
        nodes.push_back({{"node", nd.node}, {"wires", qubits_json(nd.wires)}});
    }
    j["nodes"] = nodes;
    j["gate_weights"] = gate_weights();
    return j;
}

inline json summary_row(const VerificationSummary &s) {
    json j;
    j["algorithm"] = djsim::to_string(s.algorithm);
    j["n"] = s.n;
    j["t"] = s.t;
    j["functions_checked"] = s.functions_checked;
    j["failures"] = s.failures.size();
    j["passed"] = s.functions_checked - s.failures.size();
    j["min_p_correct"] = probability(s.min_p_correct);
    if (s.min_restoration) {
        j["min_restoration"] = probability(*s.min_restoration);
    }
    return j;
}

inline json to_json(const VerificationSummary &s, bool deterministic,
                    std::size_t max_listed = 50) {
    auto j = summary_row(s);
    if (s.algorithm == AlgorithmId::RotationAV) {
        j["a_layout"] = to_string(s.a_layout);
    }
    j["exact_algorithm"] = is_exact_algorithm(s.algorithm);
    json list = json::array();
    for (std::size_t i = 0; i < s.failures.size() && i < max_listed; ++i) {
        const auto &f = s.failures[i];
        list.push_back({{"function_id", f.function_id},
                        {"reason", f.reason},
                        {"p_correct", probability(f.p_correct)}});
    }
    j["failure_list"] = list;
    j["failure_list_truncated"] = s.failures.size() > max_listed;
    if (!deterministic) {
        j["wall_time_seconds"] = number(s.wall_time_seconds);
    }
    return j;
}

inline std::vector<json> resource_rows(const ResourceTable &r, bool with_n) {
    std::vector<json> rows;
    for (const auto &row : r.rows) {
        json j;
        j["algorithm"] = djsim::to_string(row.algorithm);
        j["t"] = r.t;
        if (with_n) {
            j["n"] = r.n;
            j["qubits"] = row.qubits;
        } else {
            j["qubits"] = row.qubits_beyond_n == 0 ? std::string("n")
                                                   : "n+" + std::to_string(row.qubits_beyond_n);
        }
        j["gates"] = row.gates;
        rows.push_back(j);
    }
    return rows;
}

inline json widths_json(const ResourceTable &r, bool with_n) {
    json w{{"U", r.widths.u},   {"R", r.widths.r},        {"A", r.widths.a},
           {"V", r.widths.v},   {"R'", r.widths.r_prime}, {"A'", r.widths.a_prime}};
    if (with_n) {
        w["oracle"] = r.widths.oracle;
    } else {
        w["oracle"] = r.t == 1 ? std::string("n") : "n-" + std::to_string(r.t - 1);
    }
    return w;
}

inline json to_json(const ResourceTable &r, bool with_n) {
    json j;
    j["t"] = r.t;
    if (with_n) {
        j["n"] = r.n;
    }
    j["algorithms"] = resource_rows(r, with_n);
    j["operator_qubits"] = widths_json(r, with_n);
    j["gate_weights"] = gate_weights();
    return j;
}

inline json int_array(const std::vector<std::int64_t> &v) { return json(v); }

/// Promise detection, every applicable classifier and the statistics.
inline json classification(const BooleanFunction &f, std::optional<unsigned> t) {
    json j;
    j["function_id"] = f.digest();
    j["n"] = f.arity();
    j["popcount"] = f.popcount();
    j["promise"] = djsim::to_string(f.promise());
    j["promise_violated"] = f.promise() == Promise::Unknown;
    if (!t) {
        return j;
    }
    const Decomposition d(f, *t);
    const auto s = compute_stats(d);
    j["t"] = *t;
    json verdicts = json::object();
    if (s.two_node) {
        verdicts["two_node_counters"] = djsim::to_string(classify_counters(s));
    }
    verdicts["delta"] = djsim::to_string(classify_delta(s));
    verdicts["big_delta"] = djsim::to_string(classify_big_delta(s));
    j["verdicts"] = verdicts;
    json stats;
    stats["delta"] = int_array(s.delta);
    stats["big_delta"] = int_array(s.big_delta);
    stats["k"] = int_array(s.k);
    stats["e00"] = int_array(s.e00);
    stats["e01"] = int_array(s.e01);
    stats["e10"] = int_array(s.e10);
    stats["e11"] = int_array(s.e11);
    stats["d_total"] = s.d_total;
    if (s.two_node) {
        const auto &c = *s.two_node;
        stats["b00"] = c.b00;
        stats["b01"] = c.b01;
        stats["b10"] = c.b10;
        stats["b11"] = c.b11;
        stats["c00"] = c.c00;
        stats["c01"] = c.c01;
        stats["c10"] = c.c10;
        stats["c11"] = c.c11;
        stats["m"] = c.m;
    }
    j["stats"] = stats;
    const auto w = find_witness(d);
    if (w) {
        j["witness"] = {{"u", bits::to_bitstring(w->u, d.input_bits())},
                        {"xor_pair", w->xor_pair},
                        {"delta", w->delta},
                        {"big_delta", w->big_delta}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

} // namespace djsim::report
