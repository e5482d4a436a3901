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

#include "osp/sweep.hpp"

#include <random>

#include "osp/certify.hpp"
#include "osp/decider.hpp"
#include "osp/generators.hpp"
#include "osp/mechanism.hpp"
#include "osp/oracle.hpp"
#include "osp/sp_check.hpp"

namespace osp::sweep {

std::vector<SweepInstance> corpus(const SweepConfig& config) {
    std::vector<SweepInstance> out;
    if (config.max_agents >= 2 && config.max_types >= 2 && config.max_outcomes >= 2) {
        for (unsigned table = 0; table < 16; ++table) {
            std::vector<Outcome> choice(4);
            for (unsigned p = 0; p < 4; ++p) choice[p] = (table >> p) & 1U;
            for (std::size_t k = 0; k < config.utility_seeds; ++k) {
                std::mt19937_64 rng(config.seed * 0x9E3779B97F4A7C15ULL + table * 1000 + k);
                std::vector<std::vector<std::vector<Payoff>>> utilities(2, std::vector<std::vector<Payoff>>(2, std::vector<Payoff>(2)));
                for (auto& agent : utilities)
                    for (auto& row : agent)
                        for (auto& u : row) u = static_cast<Payoff>(gen::draw(rng, 0, static_cast<std::uint64_t>(config.payoff_max)));
                out.push_back({"table" + std::to_string(table) + "/utility" + std::to_string(k),
                               ChoiceInstance({2, 2}, 2, choice, std::move(utilities))});
            }
        }
    }
    for (std::size_t r = 0; r < config.random_count; ++r) {
        std::mt19937_64 rng(config.seed + 0x5851F42D4C957F2DULL * (r + 1));
        gen::RandomSpec spec;
        const auto n = gen::draw(rng, 1, config.max_agents);
        spec.type_sizes.clear();
        for (std::uint64_t i = 0; i < n; ++i) spec.type_sizes.push_back(gen::draw(rng, 1, config.max_types));
        spec.num_outcomes = gen::draw(rng, 1, config.max_outcomes);
        spec.payoff_max = config.payoff_max;
        spec.seed = rng();
        out.push_back({"random" + std::to_string(r), gen::random_instance(spec)});
    }
    return out;
}

bool SweepReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed()) return false;
    return true;
}

const CheckTally& SweepReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
}

namespace {

struct InstanceChecks {
    bool implementable = false;
    // For each check: -1 not applicable, 0 failed, 1 passed.
    int results[6] = {-1, -1, -1, -1, -1, -1};
};

InstanceChecks check_instance(const ChoiceInstance& instance) {
    InstanceChecks out;
    const auto lowest = decide(instance, {SelectionPolicy::LowestIndex});
    const auto robin = decide_only(instance, {SelectionPolicy::RoundRobin});
    const auto reach = oracle::decide_explicit(instance, oracle::Mode::Reachability);
    const auto childless = oracle::decide_explicit(instance, oracle::Mode::Childless);
    out.implementable = lowest.implementable;

    out.results[0] = lowest.implementable == reach.implementable;
    out.results[1] = reach.implementable == childless.implementable;
    if (lowest.implementable) {
        bool ok = lowest.mechanism && verify_wellformed(instance, *lowest.mechanism).empty() &&
                  verify_osp(instance, *lowest.mechanism).osp;
        out.results[2] = ok;
        out.results[5] = check_sp(instance).sp;
    } else {
        bool ok = false;
        if (lowest.failing_vertex) {
            try {
                ok = verify_certificate(instance, extract_certificate(instance, *lowest.failing_vertex)).valid;
            } catch (const CertificatePrecondition&) {
                ok = false;
            }
        }
        out.results[3] = ok;
    }
    out.results[4] = lowest.implementable == robin;
    return out;
}

} // namespace

SweepReport run(const std::vector<SweepInstance>& instances, bool parallel) {
    SweepReport report;
    for (auto name : {kOracleEquivalence, kModesAgree, kConstructionSound, kCertificatesVerify, kPolicyIndependent, kImpliesSp})
        report.checks.push_back({name, 0, 0, {}});

    std::vector<InstanceChecks> outcomes(instances.size());
    const auto count = static_cast<std::int64_t>(instances.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t k = 0; k < count; ++k)
        outcomes[static_cast<std::size_t>(k)] = check_instance(instances[static_cast<std::size_t>(k)].instance);

    for (std::size_t k = 0; k < instances.size(); ++k) {
        ++report.instances;
        report.implementable += outcomes[k].implementable;
        for (std::size_t c = 0; c < report.checks.size(); ++c) {
            const auto r = outcomes[k].results[c];
            if (r < 0) continue;
            auto& tally = report.checks[c];
            ++tally.checked;
            if (r == 0) {
                ++tally.failed;
                if (tally.failures.size() < 10) tally.failures.push_back(instances[k].name);
            }
        }
    }
    return report;
}

nlohmann::json report_to_json(const SweepReport& report) {
    auto checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"checked", c.checked}, {"failed", c.failed}, {"failures", c.failures}});
    return {{"instances", report.instances},
            {"implementable", report.implementable},
            {"passed", report.passed()},
            {"checks", std::move(checks)}};
}

} // namespace osp::sweep
