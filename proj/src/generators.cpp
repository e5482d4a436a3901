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

#include "osp/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace osp::gen {

ChoiceInstance sat_instance(const BooleanFormula& formula) {
    const auto vars = formula.num_vars();
    if (vars == 0) throw std::invalid_argument("formula needs at least one variable");
    if (vars > kMaxSatVariables)
        throw std::invalid_argument("formula has " + std::to_string(vars) + " variables, at most " +
                                    std::to_string(kMaxSatVariables) + " are supported");
    const auto n = vars + 1;
    std::vector<std::size_t> sizes(n, 2);
    std::vector<Outcome> choice(std::size_t{1} << n);
    std::vector<bool> assignment(vars);
    for (std::size_t p = 0; p < choice.size(); ++p) {
        // Special agent is last, hence the lowest bit; variable k sits above it.
        const bool special = (p & 1U) != 0;
        for (std::size_t k = 0; k < vars; ++k) assignment[k] = ((p >> (n - 1 - k)) & 1U) != 0;
        choice[p] = special && formula.evaluate(assignment) ? 1 : 0;
    }
    std::vector<std::vector<std::vector<Payoff>>> utilities(n, {{0, 0}, {0, 0}});
    utilities[n - 1] = {{0, 1}, {0, 0}};
    return ChoiceInstance(std::move(sizes), 2, std::move(choice), std::move(utilities),
                          {{"family", "sat"}, {"formula", formula.to_string()}});
}

ChoiceInstance dictatorship(const std::vector<std::size_t>& type_sizes, std::vector<Outcome> outcome_map) {
    if (type_sizes.empty()) throw std::invalid_argument("dictatorship needs at least one agent");
    if (outcome_map.empty())
        for (std::size_t t = 0; t < type_sizes[0]; ++t) outcome_map.push_back(static_cast<Outcome>(t));
    if (outcome_map.size() != type_sizes[0])
        throw std::invalid_argument("outcome map has " + std::to_string(outcome_map.size()) +
                                    " entries, the dictator has " + std::to_string(type_sizes[0]) + " types");
    const std::size_t outcomes = *std::max_element(outcome_map.begin(), outcome_map.end()) + 1;

    std::size_t profiles = 1;
    for (auto s : type_sizes) profiles *= s;
    const auto rest = profiles / type_sizes[0];
    std::vector<Outcome> choice(profiles);
    for (std::size_t p = 0; p < profiles; ++p) choice[p] = outcome_map[p / rest];

    std::vector<std::vector<std::vector<Payoff>>> utilities;
    for (std::size_t i = 0; i < type_sizes.size(); ++i) {
        std::vector<std::vector<Payoff>> rows(type_sizes[i], std::vector<Payoff>(outcomes, 0));
        if (i == 0)
            for (std::size_t t = 0; t < type_sizes[0]; ++t) rows[t][outcome_map[t]] = 1;
        utilities.push_back(std::move(rows));
    }
    return ChoiceInstance(type_sizes, outcomes, std::move(choice), std::move(utilities), {{"family", "dictatorship"}});
}

ChoiceInstance constant_rule(const std::vector<std::size_t>& type_sizes) {
    std::size_t profiles = 1;
    for (auto s : type_sizes) profiles *= s;
    std::vector<std::vector<std::vector<Payoff>>> utilities;
    for (auto s : type_sizes) {
        std::vector<std::vector<Payoff>> rows;
        for (std::size_t t = 0; t < s; ++t) rows.push_back({static_cast<Payoff>(t % 2), static_cast<Payoff>(1 - t % 2)});
        utilities.push_back(std::move(rows));
    }
    return ChoiceInstance(type_sizes, 2, std::vector<Outcome>(profiles, 0), std::move(utilities),
                          {{"family", "constant"}});
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const auto span = hi - lo + 1;
    return span == 0 ? rng() : lo + rng() % span;
}

ChoiceInstance random_instance(const RandomSpec& spec) {
    if (spec.payoff_max < spec.payoff_min) throw std::invalid_argument("empty payoff range");
    if (spec.num_outcomes == 0) throw std::invalid_argument("at least one outcome is required");
    std::mt19937_64 rng(spec.seed);
    std::size_t profiles = 1;
    for (auto s : spec.type_sizes) profiles *= s;
    std::vector<Outcome> choice(profiles);
    for (auto& x : choice) x = static_cast<Outcome>(draw(rng, 0, spec.num_outcomes - 1));
    const auto width = static_cast<std::uint64_t>(spec.payoff_max) - static_cast<std::uint64_t>(spec.payoff_min);
    std::vector<std::vector<std::vector<Payoff>>> utilities;
    for (auto s : spec.type_sizes) {
        std::vector<std::vector<Payoff>> rows(s, std::vector<Payoff>(spec.num_outcomes));
        for (auto& row : rows)
            for (auto& u : row) u = spec.payoff_min + static_cast<Payoff>(draw(rng, 0, width));
        utilities.push_back(std::move(rows));
    }
    return ChoiceInstance(spec.type_sizes, spec.num_outcomes, std::move(choice), std::move(utilities));
}

} // namespace osp::gen
