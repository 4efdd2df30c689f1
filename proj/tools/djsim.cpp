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
//
// djsim command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 an exact algorithm failed
// verification, 3 internal invariant breach.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "djsim/djsim.hpp"

namespace {

using nlohmann::json;
using namespace djsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitInvariant = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantBreach : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input_path;
    std::string bits;
    std::string hex;
    std::optional<unsigned> n;
    std::vector<unsigned> n_list;
    std::optional<unsigned> t;
    std::vector<unsigned> t_list;
    std::string alg = "dj";
    std::string a_layout = "interleaved";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    bool deterministic = false;
    bool simulate = false;
    double tolerance = 1e-10;
};

unsigned jobs_from_env() {
    if (const char *env = std::getenv("DJSIM_JOBS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
        throw UsageError(std::string("DJSIM_JOBS must be a positive integer, got '") + env + "'");
    }
    return default_jobs();
}

BooleanFunction load_input(const Config &c) {
    const int sources = (c.input_path.empty() ? 0 : 1) + (c.bits.empty() ? 0 : 1) +
                        (c.hex.empty() ? 0 : 1);
    if (sources != 1) {
        throw UsageError("give exactly one of --input, --bits or --hex");
    }
    try {
        if (!c.input_path.empty()) {
            auto f = load_truth_table(c.input_path);
            if (c.n && *c.n != f.arity()) {
                throw UsageError("--n disagrees with the arity in " + c.input_path);
            }
            return f;
        }
        if (!c.n) {
            throw UsageError("--bits and --hex need --n");
        }
        if (!c.bits.empty()) {
            return make_function(*c.n, c.bits);
        }
        return function_from_hex(*c.n, c.hex);
    } catch (const TruthTableFormatError &e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

AlgorithmId algorithm_of(const Config &c) {
    auto a = parse_algorithm(c.alg);
    if (!a) {
        throw UsageError("unknown algorithm '" + c.alg + "'");
    }
    return *a;
}

ALayout layout_of(const Config &c) {
    return c.a_layout == "compact" ? ALayout::Compact : ALayout::Interleaved;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void emit(const Config &c, json doc, const std::vector<std::string> &columns,
          const std::vector<json> &rows) {
    if (c.format == "csv") {
        std::cout << report::to_csv(columns, rows);
        return;
    }
    if (c.format == "table") {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << (i ? "\n" : "") << report::to_table(rows[i]);
        }
        return;
    }
    if (!c.deterministic) {
        doc["timestamp"] = timestamp();
    }
    std::cout << doc.dump(2) << '\n';
}

int cmd_classify(const Config &c) {
    const auto f = load_input(c);
    std::optional<unsigned> t = c.t;
    if (!t && f.arity() >= 2) {
        t = 1;
    }
    if (t && (*t < 1 || *t >= f.arity())) {
        throw UsageError("--t must satisfy 1 <= t < n");
    }
    auto doc = report::classification(f, t);
    json row{{"function_id", doc["function_id"]},
             {"n", doc["n"]},
             {"promise", doc["promise"]},
             {"promise_violated", doc["promise_violated"]}};
    if (t) {
        row["t"] = *t;
        for (const auto &[k, v] : doc["verdicts"].items()) {
            row["verdict_" + k] = v;
        }
        std::string deltas;
        for (const auto &v : doc["stats"]["delta"]) {
            deltas += (deltas.empty() ? "" : " ") + v.dump();
        }
        row["delta"] = deltas;
        std::string big;
        for (const auto &v : doc["stats"]["big_delta"]) {
            big += (big.empty() ? "" : " ") + v.dump();
        }
        row["big_delta"] = big;
    }
    if (f.promise() == Promise::Unknown) {
        std::cerr << "warning: promise violated (neither constant nor balanced)\n";
    }
    std::vector<std::string> cols;
    for (const auto &[k, v] : row.items()) {
        cols.push_back(k);
    }
    emit(c, doc, cols, {row});
    return kExitOk;
}

int cmd_run(const Config &c) {
    const auto f = load_input(c);
    const auto alg = algorithm_of(c);
    const unsigned t = c.t.value_or(1);
    RunOptions opts;
    opts.a_layout = layout_of(c);
    opts.seed = c.seed;
    RunReport r;
    try {
        r = run_algorithm(alg, f, t, opts);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    } catch (const std::out_of_range &e) {
        throw UsageError(e.what());
    }

    const auto check = probability_oracle(r, f, r.t);
    auto doc = report::to_json(r);
    doc["closed_form_p_constant"] = report::probability(check.closed_form);
    doc["closed_form_agrees"] = check.agrees(c.tolerance);
    auto row = report::run_summary(r);
    row["closed_form_p_constant"] = doc["closed_form_p_constant"];
    row["closed_form_agrees"] = doc["closed_form_agrees"];
    if (r.sampled_verdict) {
        row["sampled_verdict"] = to_string(*r.sampled_verdict);
    }
    std::vector<std::string> cols;
    for (const auto &[k, v] : row.items()) {
        cols.push_back(k);
    }
    emit(c, doc, cols, {row});

    if (!check.agrees(c.tolerance)) {
        throw InvariantBreach("closed-form probability disagrees with simulation");
    }
    if (std::abs(r.p_constant + r.p_balanced - 1.0) > report::kSnapTolerance) {
        throw InvariantBreach("output-label probabilities do not sum to 1");
    }
    if (alg != AlgorithmId::ErroneousMultinode && alg != AlgorithmId::ErroneousFourNode &&
        f.arity() > r.t) {
        const auto &row_rt = resource_table(f.arity(), std::max(1U, r.t)).row(alg);
        if (row_rt.qubits != r.q_used || row_rt.gates != r.gate_count) {
            throw InvariantBreach("resource counts disagree with the closed forms");
        }
    }
    if (r.work_register_zero_probability &&
        std::abs(*r.work_register_zero_probability - 1.0) > report::kSnapTolerance) {
        throw InvariantBreach("work registers not restored after uncompute");
    }
    return kExitOk;
}

int cmd_verify(const Config &c) {
    if (!c.n) {
        throw UsageError("verify needs --n");
    }
    const auto alg = algorithm_of(c);
    const unsigned t = c.t.value_or(1);
    RunOptions opts;
    opts.a_layout = layout_of(c);
    VerificationSummary s;
    try {
        s = verify_sweep(*c.n, t, alg, c.jobs, opts);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    auto doc = report::to_json(s, c.deterministic);
    if (!is_exact_algorithm(alg)) {
        doc["findings"] = s.failures.size();
    }
    const auto row = report::summary_row(s);
    std::vector<std::string> cols;
    for (const auto &[k, v] : row.items()) {
        cols.push_back(k);
    }
    emit(c, doc, cols, {row});
    if (is_exact_algorithm(alg) && !s.passed()) {
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_error_prob(const Config &c) {
    auto ns = c.n_list;
    if (ns.empty()) {
        throw UsageError("error-prob needs --n");
    }
    auto ts = c.t_list;
    if (ts.empty()) {
        ts = {1};
    }
    std::vector<json> rows;
    for (auto n : ns) {
        for (auto t : ts) {
            if (t < 1 || t >= n) {
                throw UsageError("error-prob needs 1 <= t < n for every pair");
            }
            json row;
            row["n"] = n;
            row["t"] = t;
            const double multi = multinode_misid_probability(n, t);
            if (!(multi > 0.0)) {
                throw InvariantBreach("misidentification probability is not positive");
            }
            row["multinode"] = report::number(multi);
            if (t == 1) {
                const double two = two_node_misid_probability(n);
                if (std::abs(two - multi) > report::kSnapTolerance) {
                    throw InvariantBreach("two-node and multinode forms disagree");
                }
                row["two_node"] = report::number(two);
            } else {
                row["two_node"] = nullptr;
            }
            if (c.simulate) {
                if (n > 4) {
                    throw UsageError("--simulate supports n <= 4");
                }
                const double mean =
                    balanced_ensemble_mean(n, t, AlgorithmId::ErroneousMultinode, c.jobs);
                row["simulated_mean"] = report::number(mean);
                if (std::abs(mean - multi) > c.tolerance) {
                    throw InvariantBreach("ensemble mean disagrees with the formula");
                }
            }
            rows.push_back(row);
        }
    }
    std::vector<std::string> cols{"n", "t", "multinode", "two_node"};
    if (c.simulate) {
        cols.emplace_back("simulated_mean");
    }
    json doc{{"error_probabilities", rows}};
    emit(c, doc, cols, rows);
    return kExitOk;
}

int cmd_resources(const Config &c) {
    auto ts = c.t_list;
    if (ts.empty()) {
        throw UsageError("resources needs --t");
    }
    const bool with_n = !c.n_list.empty();
    std::vector<unsigned> ns = with_n ? c.n_list : std::vector<unsigned>{0};
    json tables = json::array();
    std::vector<json> rows;
    for (auto n : ns) {
        for (auto t : ts) {
            if (t < 1 || (with_n && n <= t)) {
                throw UsageError("resources needs 1 <= t < n");
            }
            const auto table = resource_table(with_n ? n : t + 1, t);
            tables.push_back(report::to_json(table, with_n));
            const auto widths = report::widths_json(table, with_n);
            for (auto row : report::resource_rows(table, with_n)) {
                for (const auto &[k, v] : widths.items()) {
                    row["width_" + k] = v;
                }
                rows.push_back(row);
            }
        }
    }
    std::vector<std::string> cols{"algorithm", "t"};
    if (with_n) {
        cols.emplace_back("n");
    }
    for (const char *k : {"qubits", "gates", "width_U", "width_R", "width_A", "width_V",
                          "width_R'", "width_A'", "width_oracle"}) {
        cols.emplace_back(k);
    }
    json doc{{"resources", tables}};
    emit(c, doc, cols, rows);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Statevector simulation and verification of distributed Deutsch-Jozsa circuits"};
    app.require_subcommand(1);
    Config c;

    const auto add_input = [&c](CLI::App *sub) {
        sub->add_option("--input", c.input_path, "Truth-table JSON file");
        sub->add_option("--bits", c.bits, "Truth table as a 0/1 string, index 0 first");
        sub->add_option("--hex", c.hex, "Truth table as hex, big-endian over indices");
        sub->add_option("--n", c.n, "Arity (required with --bits / --hex)");
    };
    const auto add_common = [&c](CLI::App *sub) {
        sub->add_option("--format", c.format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_flag("--deterministic", c.deterministic, "Omit timestamps and timings");
    };
    const auto add_alg = [&c](CLI::App *sub) {
        sub->add_option("--alg", c.alg, "Algorithm")
            ->check(CLI::IsMember({"dj", "alg1", "alg2", "alg3", "err-multi", "err-4node"}));
        sub->add_option("--a-layout", c.a_layout, "Summing-operator layout for alg3")
            ->check(CLI::IsMember({"interleaved", "compact"}));
    };

    auto *classify = app.add_subcommand("classify", "Structural statistics and classifier verdicts");
    add_input(classify);
    classify->add_option("--t", c.t, "Split size (default 1)");
    add_common(classify);

    auto *run = app.add_subcommand("run", "Simulate one algorithm on one function");
    add_input(run);
    run->add_option("--t", c.t, "Split size (default 1)");
    add_alg(run);
    run->add_option("--seed", c.seed, "Also draw one seeded single-shot outcome");
    run->add_option("--tolerance", c.tolerance, "Closed-form agreement tolerance");
    add_common(run);

    auto *verify = app.add_subcommand("verify", "Exhaustive sweep over all promise functions");
    verify->add_option("--n", c.n, "Arity")->required();
    verify->add_option("--t", c.t, "Split size (default 1)");
    add_alg(verify);
    verify->add_option("--jobs", c.jobs, "Worker threads (default $DJSIM_JOBS or all cores)");
    add_common(verify);

    auto *error_prob = app.add_subcommand("error-prob", "Misidentification probabilities");
    error_prob->add_option("--n", c.n_list, "Arity, one or more")->required();
    error_prob->add_option("--t", c.t_list, "Split size, one or more (default 1)");
    error_prob->add_flag("--simulate", c.simulate, "Also average simulated runs (n <= 4)");
    error_prob->add_option("--jobs", c.jobs, "Worker threads for --simulate");
    error_prob->add_option("--tolerance", c.tolerance, "Formula-vs-simulation tolerance");
    add_common(error_prob);

    auto *resources = app.add_subcommand("resources", "Closed-form qubit and gate counts");
    resources->add_option("--t", c.t_list, "Split size, one or more")->required();
    resources->add_option("--n", c.n_list, "Arity, one or more (omit for n-relative counts)");
    add_common(resources);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c.jobs == 0) {
            c.jobs = jobs_from_env();
        }
        if (classify->parsed()) {
            return cmd_classify(c);
        }
        if (run->parsed()) {
            return cmd_run(c);
        }
        if (verify->parsed()) {
            return cmd_verify(c);
        }
        if (error_prob->parsed()) {
            return cmd_error_prob(c);
        }
        return cmd_resources(c);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvariantBreach &e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
}
