/*
 * Copyright 2026 The osp-decide Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "osp/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "osp/bench.hpp"
#include "osp/certify.hpp"
#include "osp/decider.hpp"
#include "osp/generators.hpp"
#include "osp/kernels.hpp"
#include "osp/mechanism.hpp"
#include "osp/oracle.hpp"
#include "osp/sp_check.hpp"
#include "osp/sweep.hpp"

namespace osp::cli {

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path, std::string("parse error: ") + e.what());
    }
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path, "cannot write file");
    out << doc.dump(2) << '\n';
}

// Writes to the file when given, otherwise to stdout.
void emit(const std::string& path, const nlohmann::json& doc, std::ostream& out) {
    if (path.empty())
        out << doc.dump(2) << '\n';
    else
        write_json(path, doc);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            auto value = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            sizes.push_back(static_cast<std::size_t>(value));
        } catch (const std::logic_error&) {
            throw InputError("sizes", "expected comma-separated integers, got '" + text + "'");
        }
    }
    if (sizes.empty()) throw InputError("sizes", "no sizes given");
    return sizes;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide obvious strategy-proofness of finite choice rules"};
    app.require_subcommand(1);
    std::function<int()> action;

    // check-sp
    std::string instance_path;
    auto* check_sp_cmd = app.add_subcommand("check-sp", "Check strategy-proofness");
    check_sp_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    check_sp_cmd->callback([&] {
        action = [&] {
            const auto instance = load_instance_file(instance_path);
            const auto result = check_sp(instance);
            out << sp_result_to_json(result).dump(2) << '\n';
            err << (result.sp ? "strategy-proof" : "not strategy-proof") << " (" << result.comparisons
                << " comparisons)\n";
            return result.sp ? kYes : kNo;
        };
    });

    // decide
    std::string policy_name = "lowest", mechanism_path, certificate_path;
    bool stop_when_constant = false, parallel = false;
    int threads = 0;
    auto* decide_cmd = app.add_subcommand("decide", "Decide OSP-implementability");
    decide_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    decide_cmd->add_option("--policy", policy_name, "Agent selection: lowest or roundrobin")
        ->check(CLI::IsMember({"lowest", "roundrobin"}));
    decide_cmd->add_flag("--stop-when-constant", stop_when_constant, "Stop splitting once the outcome is fixed");
    decide_cmd->add_option("--mechanism", mechanism_path, "Write the mechanism here when one exists");
    decide_cmd->add_option("--certificate", certificate_path, "Write a non-existence certificate here otherwise");
    decide_cmd->add_flag("--parallel", parallel, "Expand vertices on several workers");
    decide_cmd->add_option("--threads", threads, "Worker count for --parallel");
    decide_cmd->callback([&] {
        action = [&] {
            kernels::set_num_threads(threads);
            const auto instance = load_instance_file(instance_path);
            const auto result =
                decide(instance, {policy_from_string(policy_name), stop_when_constant, parallel});
            auto doc = decision_to_json(result);
            if (result.implementable) {
                if (!mechanism_path.empty()) write_json(mechanism_path, mechanism_to_json(*result.mechanism));
                err << "OSP-implementable: mechanism with " << result.mechanism->nodes.size() << " vertices, depth "
                    << result.mechanism->depth() << '\n';
            } else {
                if (!certificate_path.empty()) {
                    const auto cert = extract_certificate(instance, *result.failing_vertex);
                    doc["certificate"] = certificate_to_json(cert);
                    write_json(certificate_path, doc["certificate"]);
                }
                err << "not OSP-implementable: vertex " << vertex_to_json(*result.failing_vertex).dump()
                    << " has no obvious question\n";
            }
            out << doc.dump(2) << '\n';
            return result.implementable ? kYes : kNo;
        };
    });

    // verify-mechanism
    std::string second_path;
    auto* verify_mech_cmd = app.add_subcommand("verify-mechanism", "Verify a mechanism is well-formed and OSP");
    verify_mech_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    verify_mech_cmd->add_option("mechanism", second_path, "Mechanism JSON")->required();
    verify_mech_cmd->callback([&] {
        action = [&] {
            const auto instance = load_instance_file(instance_path);
            const auto tree = mechanism_from_json(read_json(second_path), instance);
            const auto violations = verify_wellformed(instance, tree);
            nlohmann::json doc{{"wellformed", violations.empty()}, {"violations", violations_to_json(violations)}};
            bool ok = violations.empty();
            if (ok) {
                const auto check = verify_osp(instance, tree);
                doc.update(osp_check_to_json(check));
                ok = check.osp;
            }
            out << doc.dump(2) << '\n';
            err << (ok ? "mechanism is well-formed and OSP" : "mechanism rejected") << '\n';
            return ok ? kYes : kNo;
        };
    });

    // verify-certificate
    auto* verify_cert_cmd = app.add_subcommand("verify-certificate", "Verify a non-OSP certificate");
    verify_cert_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    verify_cert_cmd->add_option("certificate", second_path, "Certificate JSON")->required();
    verify_cert_cmd->callback([&] {
        action = [&] {
            const auto instance = load_instance_file(instance_path);
            const auto doc = read_json(second_path);
            CertificateCheck check;
            try {
                check = verify_certificate(instance, certificate_from_json(doc, instance));
            } catch (const InputError& e) {
                check = {false, std::string("malformed certificate: ") + e.what()};
            }
            out << nlohmann::json{{"valid", check.valid}, {"reason", check.reason}}.dump(2) << '\n';
            err << (check.valid ? "certificate valid" : "certificate rejected: " + check.reason) << '\n';
            return check.valid ? kYes : kNo;
        };
    });

    // oracle
    std::string mode_name = "reach";
    std::uint64_t guard = oracle::kDefaultGuard;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exponential-time reference on the explicit graph");
    oracle_cmd->require_subcommand(1);
    auto* oracle_decide = oracle_cmd->add_subcommand("decide", "Decide by explicit search");
    oracle_decide->add_option("instance", instance_path, "Instance JSON")->required();
    oracle_decide->add_option("--mode", mode_name, "reach or childless")->check(CLI::IsMember({"reach", "childless"}));
    oracle_decide->add_option("--guard", guard, "Maximum explicit vertices");
    oracle_decide->callback([&] {
        action = [&] {
            const auto instance = load_instance_file(instance_path);
            const auto mode = mode_name == "childless" ? oracle::Mode::Childless : oracle::Mode::Reachability;
            oracle::OracleOptions options;
            options.guard = guard;
            const auto result = oracle::decide_explicit(instance, mode, options);
            nlohmann::json doc{{"implementable", result.implementable},
                               {"mode", mode_name},
                               {"vertices_explored", result.vertices_explored}};
            if (result.childless) doc["childless_vertex"] = vertex_to_json(*result.childless);
            if (result.unreachable) doc["unreachable_profile"] = *result.unreachable;
            out << doc.dump(2) << '\n';
            err << (result.implementable ? "nicely connected" : "not nicely connected") << '\n';
            return result.implementable ? kYes : kNo;
        };
    });
    auto* oracle_dump = oracle_cmd->add_subcommand("dump-odag", "Emit every vertex and edge as JSON");
    oracle_dump->add_option("instance", instance_path, "Instance JSON")->required();
    oracle_dump->add_option("--guard", guard, "Maximum explicit vertices");
    oracle_dump->callback([&] {
        action = [&] {
            const auto instance = load_instance_file(instance_path);
            oracle::OracleOptions options;
            options.guard = guard;
            const auto odag = oracle::build_odag(instance, options);
            out << oracle::odag_to_json(odag).dump(2) << '\n';
            err << odag.vertices.size() << " vertices, " << odag.edges.size() << " edges\n";
            return kYes;
        };
    });

    // gen
    std::string output_path, formula_text, sizes_text = "2,2", map_text;
    std::size_t vars = 0, outcomes = 2;
    std::uint64_t seed = 1;
    Payoff payoff_min = 0, payoff_max = 3;
    auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
    gen_cmd->require_subcommand(1);
    auto* gen_sat = gen_cmd->add_subcommand("sat", "Instance that is SP iff the formula is unsatisfiable");
    gen_sat->add_option("--formula", formula_text, "Prefix formula, e.g. '(and x0 (not x1))'")->required();
    gen_sat->add_option("--vars", vars, "Variable count (default: highest index used + 1)");
    gen_sat->add_option("-o,--output", output_path, "Output file (default stdout)");
    gen_sat->callback([&] {
        action = [&] {
            BooleanFormula formula;
            try {
                formula = BooleanFormula::parse(formula_text, vars);
            } catch (const std::invalid_argument& e) {
                throw InputError("formula", e.what());
            }
            emit(output_path, instance_to_json(gen::sat_instance(formula)), out);
            err << "sat instance for " << formula.to_string() << " (" << formula.num_vars() + 1 << " agents)\n";
            return kYes;
        };
    });
    auto* gen_dict = gen_cmd->add_subcommand("dict", "Dictatorship of agent 0");
    gen_dict->add_option("--sizes", sizes_text, "Types per agent, comma-separated");
    gen_dict->add_option("--map", map_text, "Outcome per dictator type, comma-separated (default identity)");
    gen_dict->add_option("-o,--output", output_path, "Output file (default stdout)");
    gen_dict->callback([&] {
        action = [&] {
            std::vector<Outcome> map;
            if (!map_text.empty())
                for (auto x : parse_sizes(map_text)) map.push_back(static_cast<Outcome>(x));
            emit(output_path, instance_to_json(gen::dictatorship(parse_sizes(sizes_text), map)), out);
            return kYes;
        };
    });
    auto* gen_random = gen_cmd->add_subcommand("random", "Seeded random instance");
    gen_random->add_option("--seed", seed, "Seed");
    gen_random->add_option("--sizes", sizes_text, "Types per agent, comma-separated");
    gen_random->add_option("--outcomes", outcomes, "Number of outcomes");
    gen_random->add_option("--payoff-min", payoff_min, "Smallest payoff");
    gen_random->add_option("--payoff-max", payoff_max, "Largest payoff");
    gen_random->add_option("-o,--output", output_path, "Output file (default stdout)");
    gen_random->callback([&] {
        action = [&] {
            emit(output_path,
                 instance_to_json(gen::random_instance({seed, parse_sizes(sizes_text), outcomes, payoff_min, payoff_max})),
                 out);
            return kYes;
        };
    });

    // bench
    std::string family = "constant";
    std::string bench_sizes = "2,4,8,16,32";
    std::size_t reps = 5, agents = 2;
    auto* bench_cmd = app.add_subcommand("bench", "Time the decision procedure against table size");
    bench_cmd->add_option("--family", family, "constant, dictatorship or random")
        ->check(CLI::IsMember({"constant", "dictatorship", "random"}));
    bench_cmd->add_option("--sizes", bench_sizes, "Types per agent, comma-separated");
    bench_cmd->add_option("--reps", reps, "Timed repetitions per size");
    bench_cmd->add_option("--agents", agents, "Number of agents");
    bench_cmd->add_option("--threads", threads, "Workers (default 1)");
    bench_cmd->callback([&] {
        action = [&] {
            kernels::set_num_threads(threads > 0 ? threads : 1);
            bench::BenchOptions options;
            options.agents = agents;
            options.repetitions = reps;
            options.parallel = threads > 1;
            const auto report = bench::run(family, parse_sizes(bench_sizes), options);
            out << bench::report_to_json(report).dump(2) << '\n';
            for (const auto& p : report.points)
                err << "|c| = " << p.table_size << "  median " << p.median_seconds << " s\n";
            if (report.slope)
                err << "log-log slope " << *report.slope << '\n';
            else
                err << "too few points to fit a slope (need 3)\n";
            return kYes;
        };
    });

    // sweep
    sweep::SweepConfig sweep_config;
    auto* sweep_cmd = app.add_subcommand("sweep", "Cross-check the decision procedure against the explicit oracle");
    sweep_cmd->add_option("--max-agents", sweep_config.max_agents, "Largest agent count");
    sweep_cmd->add_option("--max-types", sweep_config.max_types, "Largest type set");
    sweep_cmd->add_option("--max-outcomes", sweep_config.max_outcomes, "Largest outcome set");
    sweep_cmd->add_option("--random", sweep_config.random_count, "Random instances");
    sweep_cmd->add_option("--seed", sweep_config.seed, "Seed");
    sweep_cmd->add_flag("--parallel", sweep_config.parallel, "Check instances on several workers");
    sweep_cmd->callback([&] {
        action = [&] {
            if (sweep_config.max_agents == 0 || sweep_config.max_types == 0 || sweep_config.max_outcomes == 0)
                throw InputError("sweep", "bounds must be positive");
            const auto report = sweep::run(sweep::corpus(sweep_config), sweep_config.parallel);
            out << sweep::report_to_json(report).dump(2) << '\n';
            for (const auto& c : report.checks)
                err << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << c.checked - c.failed << "/" << c.checked
                    << '\n';
            return report.passed() ? kYes : kNo;
        };
    });

    std::vector<std::string> argv_storage{"osp"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kYes;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kYes;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    if (!action) return kUsage;

    try {
        return action();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const oracle::GuardExceeded& e) {
        err << "instance too large for the oracle: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << '\n';
    }
    return kInputError;
}

} // namespace osp::cli
